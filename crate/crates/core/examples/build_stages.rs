//! Walks through every stage of the construction for one instance and
//! prints the state counts.
//!
//! cargo run --example build_stages -- 6 2 2

use thue_morse_dfa::classes::build_minimal;
use thue_morse_dfa::construction::{
    build_a_mrb, build_a_t, build_pi_a_mrb, build_product, build_projected,
};
use thue_morse_dfa::numeration::derive_params;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (m, r, p) = match args[..] {
        [m, r, p] => (m, r, p as u32),
        [] => (6, 2, 2),
        _ => return Err("usage: build_stages [M R P]".into()),
    };
    let params = derive_params(m, r, p)?;
    println!("m = {m} = {}·2^{}, r = {r}, base {}", params.k, params.z, params.base);

    let stages = [
        ("A_T (pairs)", build_a_t(p)?),
        ("A_m,r,b (pairs)", build_a_mrb(m, r, params.base)?),
        ("projection of A_m,r,b", build_pi_a_mrb(m, r, params.base)?),
        ("product (pairs)", build_product(m, r, p)?),
        ("projected product", build_projected(m, r, p)?),
        ("minimal", build_minimal(m, r, p)?),
    ];
    for (name, dfa) in &stages {
        println!(
            "{name:<24} {:>5} states, alphabet {:>3}, complete: {}",
            dfa.state_count(),
            dfa.alphabet_size(),
            dfa.is_complete()
        );
    }
    let hopcroft = stages[4].1.minimize();
    println!("Hopcroft on the projected product: {} states", hopcroft.state_count());
    Ok(())
}
