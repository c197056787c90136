//! Lists the classes of the projected product that become the states of
//! the minimal automaton.
//!
//! cargo run --example class_partition -- 24 23 2

use thue_morse_dfa::classes::partition;
use thue_morse_dfa::numeration::derive_params;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (m, r, p) = match args[..] {
        [m, r, p] => (m, r, p as u32),
        [] => (24, 23, 2),
        _ => return Err("usage: class_partition [M R P]".into()),
    };
    let params = derive_params(m, r, p)?;
    let part = partition(&params)?;
    for (class, members) in &part.inventory {
        let names: Vec<String> = members.iter().map(|l| l.to_string()).collect();
        println!("{class:<9} {{{}}}", names.join(", "));
    }
    println!(
        "{} nonempty classes, {} empty (N = {}, ⌈z/p⌉ = {})",
        part.nonempty().len(),
        part.empty_d().len(),
        params.depth,
        params.z_digits()
    );
    Ok(())
}
