//! The automaton of m·T̄ + r is the one of mT + r with another initial
//! state, the one reached by reading m.

use thue_morse_dfa::classes::{build_minimal, complement_minimal};
use thue_morse_dfa::numeration::rep;
use thue_morse_dfa::oracle::member;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (m, r, p) = (6, 2, 2);
    let base = 1u64 << p;
    let a = build_minimal(m, r, p)?;
    let c = complement_minimal(m, r, p)?;
    let label = |d: &thue_morse_dfa::Dfa, s| d.label(s).unwrap_or("?").to_string();
    println!("initial state of {m}T + {r}: {}", label(&a, a.initial()));
    println!("initial state of {m}T̄ + {r}: {}", label(&c, c.initial()));
    println!("reached from the first by rep({m}) = {}", rep(m, base)?);

    println!("{:>4} {:>6} {:>6}", "n", "mT+r", "mT̄+r");
    for n in 0..40u64 {
        let w = rep(n, base)?.into_digits();
        let (x, y) = (a.accepts(&w)?, c.accepts(&w)?);
        assert_eq!(x, member(n, m, r, false));
        assert_eq!(y, member(n, m, r, true));
        if x || y {
            println!("{n:>4} {x:>6} {y:>6}");
        }
    }
    Ok(())
}
