//! Prints 2k + ⌈z/p⌉ next to the size found by Hopcroft minimization.
//!
//! cargo run --example state_complexity -- 40 3

use thue_morse_dfa::classes::state_complexity;
use thue_morse_dfa::construction::build_projected;
use thue_morse_dfa::numeration::odd_decomposition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m_max: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(32);
    let p_max: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(3);

    print!("{:>4} {:>8}", "m", "(k,z)");
    for p in 1..=p_max {
        print!("  base {:<4}", 1u64 << p);
    }
    println!();
    for m in 1..=m_max {
        let (k, z) = odd_decomposition(m);
        print!("{m:>4} {:>8}", format!("({k},{z})"));
        for p in 1..=p_max {
            let formula = state_complexity(m, p)?;
            let measured = build_projected(m, 0, p)?.minimize().state_count() as u64;
            let mark = if formula == measured { ' ' } else { '!' };
            print!("  {formula:>4}{mark}    ");
        }
        println!();
    }
    Ok(())
}
