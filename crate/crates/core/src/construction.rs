//! The intermediate automata leading to the minimal automaton of `mT + r`:
//!
//! * `A_T` over pairs of base-`2^p` digits, tracking the parity of the first
//!   component,
//! * `A_{m,r,b}` over pairs, accepting `(n, mn + r)`,
//! * its projection on the second component (plain divisibility by `m`),
//! * the product of the two, and its projection, which accepts the base-`2^p`
//!   expansions of `mT + r` on `2m` states `(i, X)`.
//!
//! The product-like automata are built from their closed-form transition rule;
//! tests compare them against the generic [`Dfa::product`] and
//! [`Dfa::project_second`].

use std::fmt;

use serde::Serialize;

use crate::dfa::{check_size, Dfa};
use crate::error::{Error, Result};
use crate::numeration::{derive_params, pair_symbol, rep, DigitWord, Params, Side};

/// A state `(i, X)` of the product automaton, `i < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StateLabel {
    pub i: u64,
    pub side: Side,
}

impl StateLabel {
    pub fn new(i: u64, side: Side) -> Self {
        Self { i, side }
    }

    /// State id used by [`build_product`] and [`build_projected`]: `2i` for
    /// `(i, T)`, `2i + 1` for `(i, B)`.
    pub fn id(self) -> usize {
        2 * self.i as usize + self.side.index()
    }

    pub fn from_id(id: usize) -> Self {
        Self { i: (id / 2) as u64, side: Side::from_index(id) }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i, self.side)
    }
}

fn check_modulus(m: u64, r: u64, b: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    if r >= m {
        return Err(Error::InvalidParams(format!("r must be in [0, m-1], got r={r}, m={m}")));
    }
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    Ok(())
}

/// Euclidean division of `b·i + e` by `m`: returns `(quotient, remainder)`.
#[inline]
pub fn divide_step(i: u64, e: u64, b: u64, m: u64) -> (u64, u64) {
    let x = b as u128 * i as u128 + e as u128;
    ((x / m as u128) as u64, (x % m as u128) as u64)
}

/// Transition of the projected product automaton: from `(i, X)` on digit `e`
/// to `((2^p i + e) mod m, X flipped when the quotient is odious)`.
#[inline]
pub fn projected_step(params: &Params, from: StateLabel, e: u64) -> StateLabel {
    let (d, j) = divide_step(from.i, e, params.base, params.m);
    StateLabel { i: j, side: from.side.flip_if(d) }
}

/// Two states `T` (initial, final) and `B`; reading `(a, e)` flips the side
/// iff `a` is odious.
pub fn build_a_t(p: u32) -> Result<Dfa> {
    if p == 0 || p > crate::numeration::MAX_EXPONENT {
        return Err(Error::InvalidParams(format!("p out of range: {p}")));
    }
    let b = 1u64 << p;
    let k = (b * b) as usize;
    let mut dfa = Dfa::new(2, k, 0)?;
    dfa.set_final(0, true)?;
    for side in [Side::T, Side::B] {
        for a in 0..b {
            for e in 0..b {
                let sym = pair_symbol(a as usize, e as usize, b);
                dfa.set_transition(side.index(), sym, side.flip_if(a).index())?;
            }
        }
    }
    dfa.with_labels(vec!["T".into(), "B".into()])
}

/// Pair automaton on states `0..m` with `i --(d,e)--> j` iff `b·i + e = m·d + j`.
/// Initial state 0, final state `r`. Works for any base `b ≥ 2`.
pub fn build_a_mrb(m: u64, r: u64, b: u64) -> Result<Dfa> {
    check_modulus(m, r, b)?;
    check_size(m as u128, (b as u128) * (b as u128))?;
    let k = (b * b) as usize;
    let mut dfa = Dfa::new(m as usize, k, 0)?;
    dfa.set_final(r as usize, true)?;
    for i in 0..m {
        for e in 0..b {
            let (d, j) = divide_step(i, e, b, m);
            dfa.set_transition(i as usize, pair_symbol(d as usize, e as usize, b), j as usize)?;
        }
    }
    dfa.with_labels((0..m).map(|i| i.to_string()).collect())
}

/// Divisibility automaton: `δ(i, e) = (b·i + e) mod m`, initial 0, final `r`.
pub fn build_pi_a_mrb(m: u64, r: u64, b: u64) -> Result<Dfa> {
    check_modulus(m, r, b)?;
    check_size(m as u128, b as u128)?;
    let mut dfa = Dfa::new(m as usize, b as usize, 0)?;
    dfa.set_final(r as usize, true)?;
    for i in 0..m {
        for e in 0..b {
            let (_, j) = divide_step(i, e, b, m);
            dfa.set_transition(i as usize, e as usize, j as usize)?;
        }
    }
    dfa.with_labels((0..m).map(|i| i.to_string()).collect())
}

fn product_labels(m: u64) -> Vec<String> {
    (0..2 * m as usize).map(|id| StateLabel::from_id(id).to_string()).collect()
}

/// `A_{m,r,2^p} × A_T` built directly: `(i, X) --(d,e)--> (j, X_d)` whenever
/// `2^p i + e = m d + j`. State `(i, X)` has id [`StateLabel::id`].
pub fn build_product(m: u64, r: u64, p: u32) -> Result<Dfa> {
    let params = derive_params(m, r, p)?;
    let b = params.base;
    check_size(2 * m as u128, (b as u128) * (b as u128))?;
    let mut dfa = Dfa::new(2 * m as usize, (b * b) as usize, 0)?;
    dfa.set_final(StateLabel::new(r, Side::T).id(), true)?;
    for id in 0..2 * m as usize {
        let from = StateLabel::from_id(id);
        for e in 0..b {
            let (d, j) = divide_step(from.i, e, b, m);
            let to = StateLabel::new(j, from.side.flip_if(d));
            dfa.set_transition(id, pair_symbol(d as usize, e as usize, b), to.id())?;
        }
    }
    dfa.with_labels(product_labels(m))
}

/// Projection of the product on the second component: a complete automaton
/// on `2m` states accepting the base-`2^p` expansions (with any number of
/// leading zeros) of `mT + r`.
pub fn build_projected(m: u64, r: u64, p: u32) -> Result<Dfa> {
    let params = derive_params(m, r, p)?;
    let b = params.base;
    check_size(2 * m as u128, b as u128)?;
    let mut dfa = Dfa::new(2 * m as usize, b as usize, 0)?;
    dfa.set_final(StateLabel::new(r, Side::T).id(), true)?;
    for id in 0..2 * m as usize {
        let from = StateLabel::from_id(id);
        for e in 0..b {
            dfa.set_transition(id, e as usize, projected_step(&params, from, e).id())?;
        }
    }
    dfa.with_labels(product_labels(m))
}

fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    let mut result = 1u128 % modulus as u128;
    let mut b = base as u128 % modulus as u128;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus as u128;
        }
        b = b * b % modulus as u128;
        e >>= 1;
    }
    result as u64
}

/// `σ(i) = −2^(pK − z)·i mod k`, a permutation of `0..k`. Only defined for `k > 1`.
pub fn sigma(i: u64, params: &Params) -> Result<u64> {
    let kl = params.witness_len.ok_or(Error::UndefinedForUnitOddPart("sigma"))?;
    if i >= params.k {
        return Err(Error::InvalidParams(format!("sigma needs i < k = {}, got {i}", params.k)));
    }
    let k = params.k;
    let exp = params.p as u64 * kl as u64 - params.z as u64;
    let factor = mod_pow(2, exp, k);
    let prod = (factor as u128 * i as u128 % k as u128) as u64;
    Ok((k - prod) % k)
}

/// The word `w_i` of length `K` with value `σ(i)·2^z`; reading it from state
/// `i` of the divisibility automaton leads to state 0.
pub fn witness_word(i: u64, params: &Params) -> Result<DigitWord> {
    let kl = params.witness_len.ok_or(Error::UndefinedForUnitOddPart("witness word"))?;
    let s = sigma(i, params)?;
    Ok(rep(s << params.z, params.base)?.padded(kl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::{is_evil, pair_symbols, rep_pair, split_pair_symbol, val};

    #[test]
    fn a_t_shapes() {
        let a2 = build_a_t(1).unwrap();
        assert_eq!(a2.state_count(), 2);
        assert_eq!(a2.alphabet_size(), 4);
        // loops on (0,·) and (3,·), swaps on (1,·), (2,·)
        let a4 = build_a_t(2).unwrap();
        for e in 0..4 {
            assert_eq!(a4.next(0, pair_symbol(0, e, 4)), Some(0));
            assert_eq!(a4.next(0, pair_symbol(3, e, 4)), Some(0));
            assert_eq!(a4.next(0, pair_symbol(1, e, 4)), Some(1));
            assert_eq!(a4.next(1, pair_symbol(2, e, 4)), Some(0));
        }
        let word = pair_symbols(&rep_pair(5, 0, 4).unwrap(), 4);
        assert_eq!(a4.run(&word).unwrap(), Some(0));
        let word = pair_symbols(&rep_pair(7, 0, 4).unwrap(), 4);
        assert_eq!(a4.run(&word).unwrap(), Some(Side::T.flip_if(7).index()));
        assert_eq!(a4.run(&word).unwrap(), Some(1));
    }

    #[test]
    fn a_mrb_fig3_transitions() {
        let a = build_a_mrb(6, 2, 4).unwrap();
        assert_eq!(a.next(0, pair_symbol(0, 1, 4)), Some(1));
        assert_eq!(a.next(1, pair_symbol(1, 2, 4)), Some(0));
        assert_eq!(a.next(1, pair_symbol(1, 3, 4)), Some(1));
        for n in 0..=20u64 {
            let w = pair_symbols(&rep_pair(n, 6 * n + 2, 4).unwrap(), 4);
            assert!(a.accepts(&w).unwrap(), "n={n}");
        }
        assert!(a.accepts(&pair_symbols(&rep_pair(1, 8, 4).unwrap(), 4)).unwrap());
        assert!(!a.accepts(&pair_symbols(&rep_pair(1, 9, 4).unwrap(), 4)).unwrap());
    }

    #[test]
    fn a_mrb_unit_modulus_has_diagonal_loops() {
        let a = build_a_mrb(1, 0, 2).unwrap();
        assert_eq!(a.state_count(), 1);
        for sym in 0..4 {
            let (d, e) = split_pair_symbol(sym, 2);
            assert_eq!(a.next(0, sym).is_some(), d == e);
        }
    }

    #[test]
    fn a_mrb_letter_law_and_arbitrary_base() {
        for b in [2u64, 3, 4, 5, 10] {
            for m in 1..=12u64 {
                let a = build_a_mrb(m, 0, b).unwrap();
                for i in 0..m {
                    let mut seen = 0;
                    for sym in 0..(b * b) as usize {
                        if let Some(j) = a.next(i as usize, sym) {
                            let (d, e) = split_pair_symbol(sym, b);
                            assert_eq!(b * i + e as u64, m * d as u64 + j as u64);
                            seen += 1;
                        }
                    }
                    assert_eq!(seen, b);
                }
            }
        }
    }

    #[test]
    fn a_mrb_parameter_errors() {
        assert!(build_a_mrb(0, 0, 2).is_err());
        assert!(build_a_mrb(3, 3, 2).is_err());
        assert!(build_a_mrb(3, 0, 1).is_err());
        assert!(build_pi_a_mrb(3, 5, 2).is_err());
    }

    #[test]
    fn pi_a_mrb_is_projection() {
        let proj = build_a_mrb(6, 2, 4).unwrap().project_second().unwrap();
        let direct = build_pi_a_mrb(6, 2, 4).unwrap();
        assert_eq!(proj, direct);
        assert!(direct.is_complete());
        for i in 0..6u64 {
            let w = rep(i, 4).unwrap();
            assert_eq!(direct.run(w.digits()).unwrap(), Some(i as usize));
        }
        let unit = build_pi_a_mrb(1, 0, 7).unwrap();
        assert_eq!(unit.state_count(), 1);
        assert!((0..7).all(|e| unit.next(0, e) == Some(0)));
    }

    #[test]
    fn sigma_examples() {
        let p6 = derive_params(6, 0, 2).unwrap();
        assert_eq!((p6.k, p6.z, p6.witness_len), (3, 1, Some(2)));
        for i in 0..3 {
            assert_eq!(sigma(i, &p6).unwrap(), i);
        }
        let p24 = derive_params(24, 0, 2).unwrap();
        assert_eq!(p24.witness_len, Some(3));
        for i in 0..3 {
            assert_eq!(sigma(i, &p24).unwrap(), i);
        }
        let p1 = derive_params(8, 0, 1).unwrap();
        assert!(matches!(sigma(0, &p1), Err(Error::UndefinedForUnitOddPart(_))));
        assert!(witness_word(0, &p1).is_err());
    }

    #[test]
    fn sigma_is_a_permutation() {
        for k in (3..=99u64).step_by(2) {
            for z in 0..4u32 {
                for p in 1..=4u32 {
                    let params = derive_params(k << z, 0, p).unwrap();
                    let mut image: Vec<u64> =
                        (0..k).map(|i| sigma(i, &params).unwrap()).collect();
                    assert_eq!(image[0], 0);
                    image.sort_unstable();
                    assert_eq!(image, (0..k).collect::<Vec<_>>(), "k={k} z={z} p={p}");
                }
            }
        }
    }

    #[test]
    fn witness_word_examples() {
        let p6 = derive_params(6, 2, 2).unwrap();
        let w1 = witness_word(1, &p6).unwrap();
        assert_eq!(w1.digits(), &[0, 2]);
        let pi = build_pi_a_mrb(6, 2, 4).unwrap();
        assert_eq!(pi.run_from(1, &[0]).unwrap(), Some(4));
        assert_eq!(pi.run_from(1, w1.digits()).unwrap(), Some(0));
        assert_eq!(witness_word(0, &p6).unwrap().digits(), &[0, 0]);
        let p24 = derive_params(24, 0, 2).unwrap();
        let w2 = witness_word(2, &p24).unwrap();
        assert_eq!(w2.len(), 3);
        assert_eq!(w2.value().unwrap(), 16);
        assert_eq!(w2.digits(), &[1, 0, 0]);
    }

    #[test]
    fn witness_words_lead_to_zero() {
        for m in 2..=60u64 {
            for p in 1..=3u32 {
                let params = derive_params(m, 0, p).unwrap();
                if params.k == 1 {
                    continue;
                }
                let pi = build_pi_a_mrb(m, 0, params.base).unwrap();
                for i in 0..params.k {
                    let w = witness_word(i, &params).unwrap();
                    assert_eq!(w.len(), params.witness_len.unwrap());
                    assert_eq!(pi.run_from(i as usize, w.digits()).unwrap(), Some(0));
                }
            }
        }
    }

    #[test]
    fn witness_acceptance_iff_same_state() {
        // w_i · rep(m)^l · rep(r) is accepted from j iff i = j
        for m in 2..=40u64 {
            for p in 1..=3u32 {
                let b = 1u64 << p;
                for r in [0, m / 2, m - 1] {
                    let params = derive_params(m, r, p).unwrap();
                    if params.k == 1 {
                        continue;
                    }
                    let pi = build_pi_a_mrb(m, r, b).unwrap();
                    let rep_m = rep(m, b).unwrap();
                    let rep_r = rep(r, b).unwrap();
                    for l in 0..=2 {
                        for i in 0..params.k {
                            let mut word = witness_word(i, &params).unwrap().into_digits();
                            for _ in 0..l {
                                word.extend_from_slice(rep_m.digits());
                            }
                            word.extend_from_slice(rep_r.digits());
                            for j in 0..params.k {
                                assert_eq!(
                                    pi.accepts_from(j as usize, &word).unwrap(),
                                    i == j,
                                    "m={m} r={r} p={p} i={i} j={j} l={l}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_matches_generic_product() {
        for (m, r, p) in [(6, 2, 2), (1, 0, 1), (24, 23, 2), (10, 3, 1), (7, 6, 3)] {
            let b = 1u64 << p;
            let direct = build_product(m, r, p).unwrap();
            let generic = build_a_mrb(m, r, b).unwrap().product(&build_a_t(p).unwrap()).unwrap();
            assert_eq!(generic.state_count(), 2 * m as usize);
            let iso = generic.isomorphism(&direct).expect("same structure");
            for (s, &t) in iso.iter().enumerate() {
                assert_eq!(generic.label(s), direct.label(t));
            }
        }
        assert_eq!(build_product(1, 0, 1).unwrap().state_count(), 2);
    }

    #[test]
    fn product_access_words() {
        let (m, b) = (6u64, 4u64);
        let prod = build_product(m, 2, 2).unwrap();
        for i in 0..m {
            let w = pair_symbols(&rep_pair(0, i, b).unwrap(), b);
            assert_eq!(prod.run(&w).unwrap(), Some(StateLabel::new(i, Side::T).id()));
            let w = pair_symbols(&rep_pair(1, m + i, b).unwrap(), b);
            assert_eq!(prod.run(&w).unwrap(), Some(StateLabel::new(i, Side::B).id()));
        }
    }

    #[test]
    fn product_moves_zero_across_sides_on_rep_one_m() {
        for m in 1..=40u64 {
            for p in 1..=3u32 {
                let b = 1u64 << p;
                let prod = build_product(m, 0, p).unwrap();
                let w = pair_symbols(&rep_pair(1, m, b).unwrap(), b);
                for side in [Side::T, Side::B] {
                    let from = StateLabel::new(0, side).id();
                    let to = StateLabel::new(0, side.flip()).id();
                    assert_eq!(prod.run_from(from, &w).unwrap(), Some(to));
                }
            }
        }
    }

    #[test]
    fn projected_matches_generic_projection() {
        for (m, r, p) in [(6, 2, 2), (1, 0, 1), (24, 23, 2), (9, 4, 3)] {
            let direct = build_projected(m, r, p).unwrap();
            let via = build_product(m, r, p).unwrap().project_second().unwrap();
            assert_eq!(via, direct);
            assert!(direct.is_complete());
            assert_eq!(direct.trim().unwrap().state_count(), 2 * m as usize);
        }
    }

    #[test]
    fn projected_membership_examples() {
        let a = build_projected(6, 2, 2).unwrap();
        for t in [0u64, 3, 5, 6] {
            assert!(a.accepts(rep(6 * t + 2, 4).unwrap().digits()).unwrap());
        }
        for t in [1u64, 2, 4] {
            assert!(!a.accepts(rep(6 * t + 2, 4).unwrap().digits()).unwrap());
        }
        let tm = build_projected(1, 0, 1).unwrap();
        for n in 0..256u64 {
            assert_eq!(tm.accepts(rep(n, 2).unwrap().digits()).unwrap(), is_evil(n));
        }
    }

    #[test]
    fn projected_word_law() {
        // reading v from (i,X) reaches (j, X_l) with 2^{p|v|} i + val(v) = m l + j
        for (m, r, p) in [(6, 2, 2), (12, 5, 1), (10, 0, 2), (7, 3, 3)] {
            let params = derive_params(m, r, p).unwrap();
            let b = params.base;
            let a = build_projected(m, r, p).unwrap();
            for len in 0..=4u32 {
                for v in 0..b.pow(len) {
                    let word = rep(v, b).unwrap().padded(len as usize);
                    for id in 0..2 * m as usize {
                        let from = StateLabel::from_id(id);
                        let to = StateLabel::from_id(a.run_from(id, word.digits()).unwrap().unwrap());
                        let x = (b.pow(len) * from.i + val(word.digits(), b).unwrap()) as u128;
                        let l = (x / m as u128) as u64;
                        assert!(l < b.pow(len));
                        assert_eq!(to.i as u128, x % m as u128);
                        assert_eq!(to.side, from.side.flip_if(l));
                    }
                }
            }
        }
    }

    #[test]
    fn side_symmetry_of_transitions() {
        for (m, p) in [(6u64, 2u32), (24, 2), (5, 1), (12, 3)] {
            let prod = build_product(m, 0, p).unwrap();
            for (s, sym, t) in prod.transitions() {
                let s_flip = StateLabel::from_id(s);
                let s_flip = StateLabel::new(s_flip.i, s_flip.side.flip()).id();
                let t_label = StateLabel::from_id(t);
                let expected = StateLabel::new(t_label.i, t_label.side.flip()).id();
                assert_eq!(prod.next(s_flip, sym), Some(expected));
            }
            let a_t = build_a_t(p).unwrap();
            for (s, sym, t) in a_t.transitions() {
                assert_eq!(a_t.next(1 - s, sym), Some(1 - t));
            }
        }
    }

    #[test]
    fn trim_keeps_a_mrb_and_all_projected_states() {
        let a = build_a_mrb(6, 2, 4).unwrap();
        assert_eq!(a.trim().unwrap(), a);
        assert_eq!(build_projected(24, 23, 2).unwrap().trim().unwrap().state_count(), 48);
        let completed = a.complete_with_sink();
        assert_eq!(completed.state_count(), 7);
        let sink = 6;
        assert!((0..16).all(|sym| completed.next(sink, sym) == Some(sink)));
    }
}
