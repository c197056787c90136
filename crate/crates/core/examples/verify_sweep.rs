//! Compares minimal automata with the arithmetic definition on every word up
//! to a given length.
//!
//! cargo run --release --example verify_sweep -- 8

use thue_morse_dfa::oracle::sweep;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_len: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(6);
    let mut words = 0;
    let mut failures = 0;
    for p in 1..=2u32 {
        for m in 1..=32u64 {
            for r in 0..m {
                for complement in [false, true] {
                    let rep = sweep(m, r, p, max_len, complement)?;
                    words += rep.words_checked;
                    if !rep.passed() {
                        failures += 1;
                        eprintln!("{}", rep.to_json());
                    }
                }
            }
        }
    }
    println!("{words} words checked, {failures} failing instances");
    Ok(())
}
