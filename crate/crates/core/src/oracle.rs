//! Ground truth computed from arithmetic alone: membership in `mT + r`,
//! exhaustive word sweeps against an automaton, and a bounded count of
//! left quotients.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::classes::{build_minimal, complement_minimal};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::numeration::{derive_params, is_evil};

/// `n ∈ mT + r` (or `m·T̄ + r` when `complement`).
pub fn member(n: u64, m: u64, r: u64, complement: bool) -> bool {
    if n < r || !(n - r).is_multiple_of(m) {
        return false;
    }
    is_evil((n - r) / m) != complement
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub word: Vec<usize>,
    pub dfa_verdict: bool,
    pub oracle_verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub m: u64,
    pub r: u64,
    pub p: u32,
    pub complement: bool,
    pub max_len: usize,
    pub words_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

fn check_guard(p: u32, max_len: usize, limit: u64) -> Result<()> {
    if p as u64 * max_len as u64 > limit {
        Err(Error::InvalidParams(format!(
            "p·max_len = {} exceeds {limit}",
            p as u64 * max_len as u64
        )))
    } else {
        Ok(())
    }
}

/// Compares `dfa` with [`member`] on every word over `{0, …, 2^p - 1}` of
/// length at most `max_len`, leading zeros included.
pub fn sweep_dfa(
    dfa: &Dfa,
    m: u64,
    r: u64,
    p: u32,
    max_len: usize,
    complement: bool,
) -> Result<SweepReport> {
    derive_params(m, r, p)?;
    check_guard(p, max_len, 62)?;
    let b = 1usize << p;
    if dfa.alphabet_size() != b {
        return Err(Error::AlphabetMismatch(dfa.alphabet_size(), b));
    }
    let mut report = SweepReport {
        m,
        r,
        p,
        complement,
        max_len,
        words_checked: 0,
        mismatches: Vec::new(),
    };
    // depth-first over words, carrying the reached state and the value
    let mut word = Vec::with_capacity(max_len);
    let mut stack: Vec<(Option<usize>, u64, usize)> = vec![(Some(dfa.initial()), 0, 0)];
    while let Some((state, value, len)) = stack.pop() {
        if len > 0 {
            // the symbol that led here is the low digit of value
            word.truncate(len - 1);
            word.push((value & (b as u64 - 1)) as usize);
        }
        let got = state.is_some_and(|s| dfa.is_final(s));
        let want = member(value, m, r, complement);
        report.words_checked += 1;
        if got != want {
            report.mismatches.push(Mismatch {
                word: word.clone(),
                dfa_verdict: got,
                oracle_verdict: want,
            });
        }
        if len < max_len {
            for e in (0..b).rev() {
                let next = state.and_then(|s| dfa.next(s, e));
                stack.push((next, (value << p) | e as u64, len + 1));
            }
        }
    }
    Ok(report)
}

/// Sweeps the minimal automaton of `mT + r` (or of `m·T̄ + r`).
pub fn sweep(m: u64, r: u64, p: u32, max_len: usize, complement: bool) -> Result<SweepReport> {
    derive_params(m, r, p)?;
    check_guard(p, max_len, 62)?;
    let dfa = if complement {
        complement_minimal(m, r, p)?
    } else {
        build_minimal(m, r, p)?
    };
    sweep_dfa(&dfa, m, r, p, max_len, complement)
}

/// Number of distinct acceptance vectors of prefixes of length at most
/// `word_len`, each vector recording which test words of length at most
/// `word_len` complete the prefix into a member of `mT + r`.
///
/// A prefix of value `n = q·m + i` only matters through `i` and the parity
/// of `q`: appending `l` digits of value `x` gives quotient
/// `q·2^(pl) + ⌊(i·2^(pl) + x)/m⌋`, whose second term has fewer than `pl`
/// bits. The count therefore ranges over those keys realized by some prefix,
/// and for each key the accepted test words `x ≡ r − i·2^(pl) (mod m)` are
/// enumerated directly. This is a lower bound on the state complexity.
pub fn bounded_nerode(m: u64, r: u64, p: u32, word_len: usize) -> Result<u64> {
    derive_params(m, r, p)?;
    check_guard(p, word_len, 30)?;
    let b = 1u64 << p;
    let prefix_limit = b.pow(word_len as u32);
    let mut keys: Vec<(u64, bool)> = Vec::new();
    let mut seen_keys = HashSet::new();
    let mut n = 0u64;
    while n < prefix_limit && seen_keys.len() < 2 * m as usize {
        let key = (n % m, is_evil(n / m));
        if seen_keys.insert(key) {
            keys.push(key);
        }
        n += 1;
    }
    let mut signatures = HashSet::new();
    for (i, evil_quotient) in keys {
        let mut h = DefaultHasher::new();
        for l in 0..=word_len as u32 {
            let span = b.pow(l);
            let shifted = i as u128 * span as u128;
            let first = ((r as i128 - shifted as i128).rem_euclid(m as i128)) as u64;
            l.hash(&mut h);
            let mut x = first;
            while x < span {
                let q = ((shifted + x as u128) / m as u128) as u64;
                if is_evil(q) == evil_quotient {
                    x.hash(&mut h);
                }
                x += m;
            }
        }
        signatures.insert(h.finish());
    }
    Ok(signatures.len() as u64)
}
