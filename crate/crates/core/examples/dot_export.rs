//! Writes the minimal automaton as Graphviz DOT on stdout.
//!
//! cargo run --example dot_export -- 6 2 2 | dot -Tsvg > m.svg

use thue_morse_dfa::classes::build_minimal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (m, r, p) = match args[..] {
        [m, r, p] => (m, r, p as u32),
        [] => (6, 2, 2),
        _ => return Err("usage: dot_export [M R P]".into()),
    };
    print!("{}", build_minimal(m, r, p)?.to_dot(None));
    Ok(())
}
