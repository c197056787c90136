use proptest::prelude::*;

use thue_morse_dfa::classes::build_minimal;
use thue_morse_dfa::dfa::Dfa;

/// Random partial automata with up to 12 states over up to 4 letters.
fn arb_dfa() -> impl Strategy<Value = Dfa> {
    arb_dfa_sized(12, 4)
}

fn arb_dfa_sized(max_states: usize, max_letters: usize) -> impl Strategy<Value = Dfa> {
    (1usize..=max_states, 1usize..=max_letters).prop_flat_map(|(n, k)| {
        (
            Just(n),
            Just(k),
            0..n,
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::option::weighted(0.85, 0..n), n * k),
        )
            .prop_map(|(n, k, init, finals, delta)| {
                let mut dfa = Dfa::new(n, k, init).unwrap();
                for (s, f) in finals.into_iter().enumerate() {
                    dfa.set_final(s, f).unwrap();
                }
                for (idx, t) in delta.into_iter().enumerate() {
                    if let Some(t) = t {
                        dfa.set_transition(idx / k, idx % k, t).unwrap();
                    }
                }
                dfa
            })
    })
}

fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn same_on_words(a: &Dfa, b: &Dfa, max_len: usize) -> bool {
    all_words(a.alphabet_size(), max_len)
        .iter()
        .all(|w| a.accepts(w).unwrap() == b.accepts(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimize_preserves_language(dfa in arb_dfa()) {
        let min = dfa.minimize();
        prop_assert!(min.state_count() <= dfa.state_count() + 1);
        let len = if dfa.alphabet_size() > 2 { 6 } else { 8 };
        prop_assert!(same_on_words(&dfa, &min, len));
    }

    #[test]
    fn minimize_is_idempotent(dfa in arb_dfa()) {
        let once = dfa.minimize();
        prop_assert_eq!(once.minimize(), once);
    }

    // Completed with sinks, two automata of at most 6 states each that agree
    // on all words of length at most 12 are equivalent.
    #[test]
    fn equivalence_matches_exhaustive_comparison(
        a in arb_dfa_sized(6, 2),
        b in arb_dfa_sized(6, 2),
    ) {
        prop_assume!(a.alphabet_size() == b.alphabet_size());
        let eq = a.equivalent(&b).unwrap();
        prop_assert_eq!(eq, same_on_words(&a, &b, 12));
        prop_assert_eq!(eq, a.minimize().isomorphism(&b.minimize()).is_some());
    }

    #[test]
    fn minimal_automata_accept_r_first(m in 1u64..200, r_seed in any::<u64>(), p in 1u32..=3) {
        let r = r_seed % m;
        let dfa = build_minimal(m, r, p).unwrap();
        prop_assert_eq!(dfa.min_accepted_value(1 << p).unwrap(), Some(r));
    }
}
