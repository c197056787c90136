//! Runs the decision procedure on a few automata: rebuilt instances, a
//! perturbed one and the even numbers.

use thue_morse_dfa::classes::build_minimal;
use thue_morse_dfa::decision::decide_with_stats;
use thue_morse_dfa::dfa::Dfa;

fn report(name: &str, dfa: &Dfa, p: u32) -> Result<(), Box<dyn std::error::Error>> {
    let (verdict, stats) = decide_with_stats(dfa, p, true)?;
    println!(
        "{name:<28} {}  ({} states, {} candidates, {} compared)",
        verdict.to_json(),
        stats.minimal_states,
        stats.candidates,
        stats.equivalence_tests
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("6T + 2, base 4", &build_minimal(6, 2, 2)?, 2)?;
    report("40T + 17, base 8", &build_minimal(40, 17, 3)?, 3)?;

    let mut broken = build_minimal(7, 3, 1)?;
    let s = broken.next(broken.initial(), 1).unwrap();
    broken.set_final(s, !broken.is_final(s))?;
    report("7T + 3 with a state toggled", &broken, 1)?;

    // the even numbers: last binary digit 0
    let evens = Dfa::from_parts(2, 2, 0, &[0], &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)])?;
    report("even numbers", &evens, 1)?;

    // the Thue-Morse set itself, written by hand
    let tm = Dfa::from_parts(2, 2, 0, &[0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])?;
    report("evil numbers", &tm, 1)?;
    Ok(())
}
