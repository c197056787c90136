//! Deciding whether an automaton over base-`2^p` digits accepts exactly the
//! expansions of `mT + r` (or `m·T̄ + r`) for some `m` and `r`.
//!
//! The input is minimized to get its state complexity `M`. Only moduli
//! `m = k·2^z` with `2k + ⌈z/p⌉ = M` can match, which leaves `O(M)`
//! candidates. For each one `r` is read off the smallest accepted value
//! (`0 ∈ T`, so `min(mT + r) = r`; `min T̄ = 1`, so `min(m·T̄ + r) = m + r`),
//! the minimal automaton of the candidate is rebuilt and compared with the
//! input by Hopcroft-Karp.

use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::classes::{build_minimal_direct, complement_of};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::numeration::{derive_params, MAX_MODULUS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NoMatchReason {
    /// No `(k, z)` satisfies `2k + ⌈z/p⌉ = M`.
    WrongComplexityShape,
    NoCandidateEquivalent,
    EmptyLanguage,
    /// The language is not closed under prepending zeros.
    NotZeroClosed,
}

impl fmt::Display for NoMatchReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match {
        m: u64,
        r: u64,
        complement: bool,
        /// State of the minimized input -> state of the rebuilt automaton.
        iso: Vec<usize>,
    },
    NoMatch {
        reason: NoMatchReason,
    },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match { .. })
    }

    /// `{"complement", "m", "match", "r"}` or `{"match", "reason"}`, keys sorted.
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        match self {
            Verdict::Match { m, r, complement, .. } => {
                map.insert("match".into(), Value::Bool(true));
                map.insert("m".into(), (*m).into());
                map.insert("r".into(), (*r).into());
                map.insert("complement".into(), Value::Bool(*complement));
            }
            Verdict::NoMatch { reason } => {
                map.insert("match".into(), Value::Bool(false));
                map.insert("reason".into(), Value::String(reason.to_string()));
            }
        }
        serde_json::to_string(&Value::Object(map)).expect("verdict is serializable")
    }
}

/// Work done by one call to [`decide_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecideStats {
    /// State count of the minimized input.
    pub minimal_states: usize,
    pub candidates: usize,
    /// Candidates whose modulus exceeds the supported range.
    pub skipped_out_of_range: usize,
    /// Candidates rebuilt and compared with the input.
    pub equivalence_tests: usize,
}

/// Every `(k, z)` with `k` odd, `z ≥ 0` and `2k + ⌈z/p⌉ = states`, ordered by
/// decreasing `k`, then increasing `z`.
pub fn candidates(states: u64, p: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let p = p as u64;
    let mut k = if (states / 2) % 2 == 1 { states / 2 } else { (states / 2).saturating_sub(1) };
    while k >= 1 {
        let c = states - 2 * k;
        if c == 0 {
            out.push((k, 0));
        } else {
            for z in p * (c - 1) + 1..=p * c {
                if z <= u32::MAX as u64 {
                    out.push((k, z as u32));
                }
            }
        }
        if k < 2 {
            break;
        }
        k -= 2;
    }
    out
}

/// `r` from the smallest accepted value, if it lies in `[0, m)`.
pub fn infer_r(minimal: &Dfa, m: u64, p: u32, complement: bool) -> Option<u64> {
    let min = minimal.min_accepted_value(1u64 << p).ok()??;
    infer_r_from_min(min, m, complement)
}

fn infer_r_from_min(min: u64, m: u64, complement: bool) -> Option<u64> {
    let r = if complement { min.checked_sub(m)? } else { min };
    (r < m).then_some(r)
}

pub fn decide(dfa: &Dfa, p: u32, allow_complement: bool) -> Result<Verdict> {
    decide_with_stats(dfa, p, allow_complement).map(|(v, _)| v)
}

pub fn decide_with_stats(
    dfa: &Dfa,
    p: u32,
    allow_complement: bool,
) -> Result<(Verdict, DecideStats)> {
    if p == 0 || p > crate::numeration::MAX_EXPONENT || dfa.alphabet_size() != 1usize << p {
        return Err(Error::InvalidParams(format!(
            "alphabet size {} is not 2^p for p = {p}",
            dfa.alphabet_size()
        )));
    }
    let mut stats = DecideStats::default();
    let minimal = dfa.minimize();
    stats.minimal_states = minimal.state_count();
    let no_match = |reason, stats| Ok((Verdict::NoMatch { reason }, stats));
    if minimal.finals().is_empty() {
        return no_match(NoMatchReason::EmptyLanguage, stats);
    }
    if minimal.next(minimal.initial(), 0) != Some(minimal.initial()) {
        return no_match(NoMatchReason::NotZeroClosed, stats);
    }
    let pairs = candidates(minimal.state_count() as u64, p);
    stats.candidates = pairs.len();
    if pairs.is_empty() {
        return no_match(NoMatchReason::WrongComplexityShape, stats);
    }
    // None when the least accepted value overflows 64 bits: then r ≥ 2^64 > m.
    let min_value = minimal.min_accepted_value(1u64 << p).ok().flatten();
    let orientations: &[bool] = if allow_complement { &[false, true] } else { &[false] };
    let mut found: Option<Verdict> = None;
    for (k, z) in pairs {
        let m = match k.checked_shl(z).filter(|&m| z < 64 && m >> z == k && m <= MAX_MODULUS) {
            Some(m) => m,
            None => {
                stats.skipped_out_of_range += 1;
                continue;
            }
        };
        for &complement in orientations {
            let Some(r) = min_value.and_then(|min| infer_r_from_min(min, m, complement)) else {
                continue;
            };
            let params = derive_params(m, r, p)?;
            let mut rebuilt = build_minimal_direct(&params)?;
            if complement {
                rebuilt = complement_of(&rebuilt, &params)?;
            }
            stats.equivalence_tests += 1;
            if !minimal.equivalent(&rebuilt)? {
                continue;
            }
            let iso = minimal.isomorphism(&rebuilt).ok_or_else(|| {
                Error::PartitionInconsistent(
                    "equivalent minimal automata must be isomorphic".into(),
                )
            })?;
            if let Some(Verdict::Match { m: m0, r: r0, .. }) = &found {
                return Err(Error::PartitionInconsistent(format!(
                    "two distinct instances match: ({m0}, {r0}) and ({m}, {r})"
                )));
            }
            found = Some(Verdict::Match { m, r, complement, iso });
        }
    }
    match found {
        Some(v) => Ok((v, stats)),
        None => no_match(NoMatchReason::NoCandidateEquivalent, stats),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{build_minimal, complement_minimal};
    use crate::construction::build_pi_a_mrb;

    #[test]
    fn candidate_examples() {
        let mut c = candidates(7, 2);
        c.sort();
        assert_eq!(c, vec![(1, 9), (1, 10), (3, 1), (3, 2)]);
        assert_eq!(candidates(2, 1), vec![(1, 0)]);
        assert_eq!(candidates(3, 1), vec![(1, 1)]);
        assert!(candidates(1, 1).is_empty());
    }

    #[test]
    fn candidates_are_complete() {
        for states in 1..=60u64 {
            for p in 1..=3u32 {
                let mut brute = Vec::new();
                for k in (1..=states).step_by(2) {
                    for z in 0..=(p as u64 * states) as u32 {
                        if 2 * k + z.div_ceil(p) as u64 == states {
                            brute.push((k, z));
                        }
                    }
                }
                let mut got = candidates(states, p);
                got.sort();
                brute.sort();
                assert_eq!(got, brute, "M={states} p={p}");
            }
        }
    }

    #[test]
    fn infer_r_examples() {
        let a = build_minimal(6, 2, 2).unwrap();
        assert_eq!(infer_r(&a, 6, 2, false), Some(2));
        assert_eq!(infer_r(&a, 4, 2, false), Some(2));
        assert_eq!(infer_r(&a, 2, 2, false), None);
        let c = complement_minimal(6, 2, 2).unwrap();
        assert_eq!(infer_r(&c, 6, 2, true), Some(2));
    }

    #[test]
    fn decide_examples() {
        let v = decide(&build_minimal(6, 2, 2).unwrap(), 2, false).unwrap();
        assert!(matches!(v, Verdict::Match { m: 6, r: 2, complement: false, .. }));
        let tm = Dfa::from_parts(2, 2, 0, &[0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
            .unwrap();
        assert!(matches!(decide(&tm, 1, false).unwrap(), Verdict::Match { m: 1, r: 0, .. }));
        let progression = build_pi_a_mrb(6, 2, 4).unwrap();
        assert!(!decide(&progression, 2, false).unwrap().is_match());
        assert!(decide(&tm, 2, false).is_err());
    }

    #[test]
    fn decide_complement() {
        let c = complement_minimal(6, 2, 2).unwrap();
        assert!(!decide(&c, 2, false).unwrap().is_match());
        assert!(matches!(
            decide(&c, 2, true).unwrap(),
            Verdict::Match { m: 6, r: 2, complement: true, .. }
        ));
    }

    #[test]
    fn decide_rejections() {
        let empty = Dfa::new(3, 2, 0).unwrap();
        assert_eq!(
            decide(&empty, 1, false).unwrap(),
            Verdict::NoMatch { reason: NoMatchReason::EmptyLanguage }
        );
        // accepts exactly the word "0": not closed under leading zeros
        let zero = Dfa::from_parts(2, 2, 0, &[1], &[(0, 0, 1)]).unwrap();
        assert_eq!(
            decide(&zero, 1, false).unwrap(),
            Verdict::NoMatch { reason: NoMatchReason::NotZeroClosed }
        );
        let universal = Dfa::from_parts(1, 2, 0, &[0], &[(0, 0, 0), (0, 1, 0)]).unwrap();
        assert_eq!(
            decide(&universal, 1, false).unwrap(),
            Verdict::NoMatch { reason: NoMatchReason::WrongComplexityShape }
        );
    }

    #[test]
    fn decide_huge_modulus() {
        let params = derive_params(5 << 40, 17, 1).unwrap();
        let dfa = build_minimal_direct(&params).unwrap();
        assert!(matches!(
            decide(&dfa, 1, false).unwrap(),
            Verdict::Match { m, r: 17, .. } if m == 5 << 40
        ));
    }

    #[test]
    fn verdict_json() {
        let v = Verdict::Match { m: 6, r: 2, complement: false, iso: vec![] };
        assert_eq!(v.to_json(), r#"{"complement":false,"m":6,"match":true,"r":2}"#);
        let v = Verdict::NoMatch { reason: NoMatchReason::NotZeroClosed };
        assert_eq!(v.to_json(), r#"{"match":false,"reason":"NotZeroClosed"}"#);
    }
}
