//! Base-`b` digit words, pair representations, the evil-number predicate and
//! the derived constants of an `(m, r, p)` instance.
//!
//! Words are stored most significant digit first, which is also the order in
//! which every automaton of this crate reads its input.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus `m` accepted by [`derive_params`].
pub const MAX_MODULUS: u64 = 1 << 62;

/// Largest exponent `p` accepted by [`derive_params`] (alphabet of size `2^16`).
pub const MAX_EXPONENT: u32 = 16;

/// A finite word over the digit alphabet `{0, …, base-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    digits: Vec<usize>,
    base: u64,
}

impl DigitWord {
    pub fn new(digits: Vec<usize>, base: u64) -> Result<Self> {
        check_base(base)?;
        if let Some(&digit) = digits.iter().find(|&&d| d as u64 >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(Self { digits, base })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Numeric value of the word; fails on 64-bit overflow.
    pub fn value(&self) -> Result<u64> {
        val(&self.digits, self.base)
    }

    /// Same value, left-padded with zeros up to `len` digits.
    pub fn padded(&self, len: usize) -> DigitWord {
        let pad = len.saturating_sub(self.digits.len());
        let mut digits = vec![0; pad];
        digits.extend_from_slice(&self.digits);
        DigitWord { digits, base: self.base }
    }

    pub fn into_digits(self) -> Vec<usize> {
        self.digits
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else {
        Ok(())
    }
}

/// The canonical base-`base` expansion of `n`: no leading zero, empty for 0.
pub fn rep(n: u64, base: u64) -> Result<DigitWord> {
    check_base(base)?;
    let mut digits = Vec::new();
    let mut n = n;
    while n > 0 {
        digits.push((n % base) as usize);
        n /= base;
    }
    digits.reverse();
    Ok(DigitWord { digits, base })
}

/// Value of a most-significant-first digit sequence.
pub fn val(digits: &[usize], base: u64) -> Result<u64> {
    check_base(base)?;
    digits.iter().try_fold(0u64, |acc, &d| {
        if d as u64 >= base {
            return Err(Error::DigitOutOfRange { digit: d, base });
        }
        acc.checked_mul(base)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or(Error::Overflow)
    })
}

/// Reads two numbers in lockstep: both expansions padded with leading zeros
/// to the longer length.
pub fn rep_pair(a: u64, c: u64, base: u64) -> Result<Vec<(usize, usize)>> {
    let ra = rep(a, base)?;
    let rc = rep(c, base)?;
    let len = ra.len().max(rc.len());
    let ra = ra.padded(len);
    let rc = rc.padded(len);
    Ok(ra.digits.into_iter().zip(rc.digits).collect())
}

/// Encodes the digit pair `(d, e)` as the single symbol `d·base + e`.
pub fn pair_symbol(d: usize, e: usize, base: u64) -> usize {
    d * base as usize + e
}

/// Inverse of [`pair_symbol`].
pub fn split_pair_symbol(symbol: usize, base: u64) -> (usize, usize) {
    let b = base as usize;
    (symbol / b, symbol % b)
}

/// Pair word as a sequence of pair-alphabet symbols.
pub fn pair_symbols(word: &[(usize, usize)], base: u64) -> Vec<usize> {
    word.iter().map(|&(d, e)| pair_symbol(d, e, base)).collect()
}

/// True iff the binary expansion of `n` has an even number of ones.
pub fn is_evil(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

/// Side of a product state: `T` tracks the Thue-Morse set, `B` its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    T,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::T => Side::B,
            Side::B => Side::T,
        }
    }

    /// `self` when `n` is evil, the other side otherwise.
    pub fn flip_if(self, n: u64) -> Side {
        if is_evil(n) {
            self
        } else {
            self.flip()
        }
    }

    /// 0 for `T`, 1 for `B`.
    pub fn index(self) -> usize {
        match self {
            Side::T => 0,
            Side::B => 1,
        }
    }

    pub fn from_index(i: usize) -> Side {
        if i.is_multiple_of(2) {
            Side::T
        } else {
            Side::B
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::T => "T",
            Side::B => "B",
        })
    }
}

/// Free-function form of [`Side::flip_if`].
pub fn flip_if(side: Side, n: u64) -> Side {
    side.flip_if(n)
}

/// The constants attached to an instance `mT + r` read in base `2^p`.
///
/// `m = k·2^z` with `k` odd. `r_len` is the length of the base-`2^p`
/// expansion of `r`, `depth` is `max(⌈z/p⌉, r_len)` (the largest `C` class
/// index) and `witness_len` is the length of the expansion of `(k-1)·2^z`,
/// only defined when `k > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub m: u64,
    pub r: u64,
    pub p: u32,
    pub base: u64,
    pub k: u64,
    pub z: u32,
    pub r_len: usize,
    pub depth: usize,
    pub witness_len: Option<usize>,
}

impl Params {
    /// `⌈z/p⌉`.
    pub fn z_digits(&self) -> usize {
        self.z.div_ceil(self.p) as usize
    }

    /// `2k + ⌈z/p⌉`.
    pub fn state_complexity(&self) -> u64 {
        2 * self.k + self.z_digits() as u64
    }

    /// `⌊r / 2^(p·alpha)⌋`, zero once the shift passes the width of `r`.
    pub fn r_shifted(&self, alpha: usize) -> u64 {
        let shift = self.p as u64 * alpha as u64;
        if shift >= 64 {
            0
        } else {
            self.r >> shift
        }
    }

    /// Number of states `2m` of the projected product automaton.
    pub fn product_states(&self) -> u64 {
        2 * self.m
    }
}

/// Splits `m` into `(k, z)` with `m = k·2^z` and `k` odd.
pub fn odd_decomposition(m: u64) -> (u64, u32) {
    debug_assert!(m > 0);
    let z = m.trailing_zeros();
    (m >> z, z)
}

pub fn derive_params(m: u64, r: u64, p: u32) -> Result<Params> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    if m > MAX_MODULUS {
        return Err(Error::InvalidParams(format!("m must be at most 2^62, got {m}")));
    }
    if p == 0 || p > MAX_EXPONENT {
        return Err(Error::InvalidParams(format!(
            "p must be in [1, {MAX_EXPONENT}], got {p}"
        )));
    }
    if r >= m {
        return Err(Error::InvalidParams(format!("r must be in [0, m-1], got r={r}, m={m}")));
    }
    let base = 1u64 << p;
    let (k, z) = odd_decomposition(m);
    let r_len = rep(r, base)?.len();
    let depth = (z.div_ceil(p) as usize).max(r_len);
    let witness_len = if k > 1 {
        Some(rep((k - 1) << z, base)?.len())
    } else {
        None
    };
    Ok(Params { m, r, p, base, k, z, r_len, depth, witness_len })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep_examples() {
        assert_eq!(rep(23, 4).unwrap().digits(), &[1, 1, 3]);
        assert!(rep(0, 2).unwrap().is_empty());
        assert_eq!(rep(6, 4).unwrap().digits(), &[1, 2]);
        assert!(matches!(rep(5, 1), Err(Error::InvalidBase(1))));
    }

    #[test]
    fn val_examples() {
        assert_eq!(val(&[1, 1, 3], 4).unwrap(), 23);
        assert_eq!(val(&[0, 0], 4).unwrap(), 0);
        assert_eq!(val(&[0, 1, 2], 4).unwrap(), 6);
        assert!(matches!(val(&[4], 4), Err(Error::DigitOutOfRange { digit: 4, base: 4 })));
        assert!(matches!(val(&[1; 65], 2), Err(Error::Overflow)));
    }

    #[test]
    fn rep_pair_examples() {
        assert_eq!(rep_pair(1, 6, 4).unwrap(), vec![(0, 1), (1, 2)]);
        assert!(rep_pair(0, 0, 4).unwrap().is_empty());
        assert_eq!(rep_pair(5, 5, 2).unwrap(), vec![(1, 1), (0, 0), (1, 1)]);
    }

    #[test]
    fn evil_and_flip() {
        assert!(is_evil(0));
        assert!(is_evil(3));
        assert!(!is_evil(1));
        assert_eq!(flip_if(Side::T, 0), Side::T);
        assert_eq!(flip_if(Side::T, 1), Side::B);
        assert_eq!(flip_if(Side::B, 3), Side::B);
    }

    #[test]
    fn params_examples() {
        let p = derive_params(24, 23, 2).unwrap();
        assert_eq!((p.k, p.z, p.r_len, p.depth), (3, 3, 3, 3));
        let p = derive_params(24, 0, 2).unwrap();
        assert_eq!((p.k, p.z, p.r_len, p.depth), (3, 3, 0, 2));
        let p = derive_params(1, 0, 1).unwrap();
        assert_eq!((p.k, p.z, p.r_len, p.depth, p.witness_len), (1, 0, 0, 0, None));
        let p = derive_params(6, 2, 2).unwrap();
        assert_eq!(p.witness_len, Some(2));
    }

    #[test]
    fn params_errors() {
        assert!(derive_params(0, 0, 1).is_err());
        assert!(derive_params(6, 6, 1).is_err());
        assert!(derive_params(6, 0, 0).is_err());
        assert!(derive_params(MAX_MODULUS + 1, 0, 1).is_err());
    }

    #[test]
    fn params_invariants_grid() {
        for m in 1..=4096u64 {
            for p in 1..=4 {
                for r in [0, m / 3, m / 2, m - 1] {
                    let pr = derive_params(m, r, p).unwrap();
                    assert_eq!(pr.k << pr.z, m);
                    assert_eq!(pr.k % 2, 1);
                    assert!(pr.depth >= pr.r_len && pr.depth >= pr.z_digits());
                    if let Some(kl) = pr.witness_len {
                        assert!(p as usize * kl >= pr.z as usize);
                    }
                    let top = rep(m - 1, pr.base).unwrap().len() as i64 - pr.z_digits() as i64;
                    assert!(top >= 0 && top < pr.k as i64, "m={m} p={p}");
                }
            }
        }
    }

    #[test]
    fn rep_val_round_trip() {
        for b in [2u64, 4, 8] {
            for n in 0..(1u64 << 20) {
                assert_eq!(rep(n, b).unwrap().value().unwrap(), n);
            }
        }
    }

    #[test]
    fn single_bit_flip_changes_parity() {
        for n in 0..(1u64 << 12) {
            for bit in 0..16 {
                assert!(is_evil(n) ^ is_evil(n ^ (1 << bit)));
            }
        }
    }

    #[test]
    fn parity_is_additive_over_fixed_width_digits() {
        // Concatenating base-2^p words concatenates p-bit binary blocks.
        for p in 1..=2u32 {
            let b = 1u64 << p;
            let words: Vec<(u32, u64)> = (0..=6u32)
                .flat_map(|len| (0..b.pow(len)).map(move |v| (len, v)))
                .collect();
            for &(_, u) in &words {
                for &(len_v, v) in &words {
                    let uv = (u << (p * len_v)) | v;
                    assert_eq!(is_evil(uv), is_evil(u) == is_evil(v));
                }
            }
        }
    }
}
