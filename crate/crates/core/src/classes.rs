//! The partition of the `2m` states `(i, X)` of the projected product
//! automaton into classes of equivalent states, and the minimal automaton
//! obtained by gluing each class into one state.
//!
//! Classes come in two families. `C_α` (for `α ∈ [0, N]`) collects the states
//! from which the length-`α` suffix of the `N`-digit expansion of `r` leads to
//! the final state `(r, T)`, minus those already in a lower `C`. `D_(j,X)`
//! collects the remaining states congruent to `j` modulo the odd part `k`.
//! Exactly `2k + ⌈z/p⌉` classes are nonempty, and that is the state
//! complexity of `mT + r` in base `2^p`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::construction::{build_projected, projected_step, StateLabel};
use crate::dfa::{check_size, Dfa};
use crate::error::{Error, Result};
use crate::numeration::{derive_params, rep, Params, Side};

/// Identifier of a class. Ordered `C(0) < … < C(N) < D(j, X)`, the `D`
/// classes by `(j, X)` with `T < B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassId {
    C(usize),
    D(u64, Side),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::C(alpha) => write!(f, "C_{alpha}"),
            ClassId::D(j, side) => write!(f, "D_({j},{side})"),
        }
    }
}

fn check_alpha(alpha: usize, params: &Params) -> Result<()> {
    if alpha > params.depth {
        Err(Error::AlphaOutOfRange { alpha, max: params.depth })
    } else {
        Ok(())
    }
}

/// `2^e` when `e < 64`.
fn pow2(e: u64) -> Option<u64> {
    (e < 64).then(|| 1u64 << e)
}

/// The arithmetic progression `{(start + ℓ·step, T_ℓ) : ℓ < count}`.
fn progression(start: u64, step: u64, count: u64, side: Side) -> impl Iterator<Item = StateLabel> {
    (0..count).map(move |l| StateLabel::new(start + l * step, side.flip_if(l)))
}

/// `C'_α`: the states from which the length-`α` suffix of the `N`-digit
/// expansion of `r` reaches `(r, T)`.
///
/// When `pα ≤ z` the states are spaced by `m / 2^(pα)`, when `pα ≥ z` by `k`.
/// For `pα = z` both descriptions are computed and must agree.
pub fn c_prime(alpha: usize, params: &Params) -> Result<BTreeSet<StateLabel>> {
    check_alpha(alpha, params)?;
    let shift = params.p as u64 * alpha as u64;
    let z = params.z as u64;
    let start = params.r_shifted(alpha);
    let divisible = (shift <= z).then(|| {
        let count = 1u64 << shift;
        progression(start, params.m >> shift, count, Side::T).collect::<BTreeSet<_>>()
    });
    let coprime = (shift >= z).then(|| {
        progression(start, params.k, 1u64 << z, Side::T).collect::<BTreeSet<_>>()
    });
    match (divisible, coprime) {
        (Some(a), Some(b)) => {
            if a != b {
                return Err(Error::PartitionInconsistent(format!(
                    "both descriptions of C'_{alpha} must coincide when p·alpha = z"
                )));
            }
            Ok(a)
        }
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => unreachable!("shift is comparable to z"),
    }
}

/// `C_α = C'_α \ (C'_0 ∪ … ∪ C'_(α-1))`.
pub fn c_class(alpha: usize, params: &Params) -> Result<BTreeSet<StateLabel>> {
    let mut class = c_prime(alpha, params)?;
    for beta in 0..alpha {
        for s in c_prime(beta, params)? {
            class.remove(&s);
        }
    }
    Ok(class)
}

fn check_d_index(j: u64, side: Side, params: &Params) -> Result<()> {
    if j == 0 && side == Side::T {
        return Err(Error::UndefinedClass);
    }
    if j >= params.k {
        return Err(Error::InvalidParams(format!("D class index j={j} must be < k={}", params.k)));
    }
    Ok(())
}

/// `D'_(j,X) = {(j + ℓk, X_ℓ) : ℓ < 2^z}`.
pub fn d_prime(j: u64, side: Side, params: &Params) -> Result<BTreeSet<StateLabel>> {
    check_d_index(j, side, params)?;
    Ok(progression(j, params.k, 1u64 << params.z, side).collect())
}

/// `D_(j,X) = D'_(j,X)` minus every `C_α`.
pub fn d_class(j: u64, side: Side, params: &Params) -> Result<BTreeSet<StateLabel>> {
    let mut class = d_prime(j, side, params)?;
    for alpha in 0..=params.depth {
        for s in c_prime(alpha, params)? {
            class.remove(&s);
        }
    }
    Ok(class)
}

/// All `D` indices `(j, X) ≠ (0, T)` in class order.
fn d_indices(k: u64) -> impl Iterator<Item = (u64, Side)> {
    (0..k)
        .flat_map(|j| [(j, Side::T), (j, Side::B)])
        .filter(|&(j, s)| !(j == 0 && s == Side::T))
}

/// The `D` classes that must be empty: `D(⌊r/2^(pα)⌋, T)` for `pα ≥ z`.
pub fn predicted_empty_d(params: &Params) -> BTreeSet<ClassId> {
    (0..=params.depth)
        .filter(|&alpha| params.p as u64 * alpha as u64 >= params.z as u64)
        .map(|alpha| params.r_shifted(alpha))
        .filter(|&j| j != 0)
        .map(|j| ClassId::D(j, Side::T))
        .collect()
}

/// Class assignment of every state of the projected product automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub params: Params,
    /// Class of each state, indexed by [`StateLabel::id`].
    pub assignment: Vec<ClassId>,
    /// Members of every defined class, empty ones included.
    pub inventory: BTreeMap<ClassId, Vec<StateLabel>>,
}

impl ClassPartition {
    pub fn class_of(&self, label: StateLabel) -> ClassId {
        self.assignment[label.id()]
    }

    pub fn members(&self, class: ClassId) -> &[StateLabel] {
        self.inventory.get(&class).map_or(&[], Vec::as_slice)
    }

    /// Nonempty classes in class order.
    pub fn nonempty(&self) -> Vec<ClassId> {
        self.inventory
            .iter()
            .filter(|(_, members)| !members.is_empty())
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn empty_d(&self) -> Vec<ClassId> {
        self.inventory
            .iter()
            .filter(|(c, members)| matches!(c, ClassId::D(..)) && members.is_empty())
            .map(|(&c, _)| c)
            .collect()
    }

    /// Checks every structural property the partition must have: disjoint,
    /// covering, nonempty `C` classes, the predicted empty `D` classes and
    /// `2k + ⌈z/p⌉` nonempty classes.
    pub fn validate(&self) -> Result<()> {
        let params = &self.params;
        let states = 2 * params.m as usize;
        let mut seen = vec![false; states];
        for (class, members) in &self.inventory {
            for s in members {
                if std::mem::replace(&mut seen[s.id()], true) {
                    return Err(Error::PartitionInconsistent(format!("{s} lies in two classes")));
                }
                if self.assignment[s.id()] != *class {
                    return Err(Error::PartitionInconsistent(format!(
                        "{s} listed in {class} but assigned elsewhere"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(Error::PartitionInconsistent(format!(
                "{} is in no class",
                StateLabel::from_id(missing)
            )));
        }
        for alpha in 0..=params.depth {
            if self.members(ClassId::C(alpha)).is_empty() {
                return Err(Error::PartitionInconsistent(format!("C_{alpha} is empty")));
            }
        }
        let empty: BTreeSet<ClassId> = self.empty_d().into_iter().collect();
        if empty != predicted_empty_d(params) {
            return Err(Error::PartitionInconsistent(format!(
                "empty D classes {empty:?} differ from the prediction"
            )));
        }
        let count = self.nonempty().len() as u64;
        if count != params.state_complexity() {
            return Err(Error::PartitionInconsistent(format!(
                "{count} nonempty classes, expected {}",
                params.state_complexity()
            )));
        }
        Ok(())
    }
}

/// Builds the class partition from the `C'` and `D'` progressions, assigning
/// each state to the first class that lists it, then validates it.
pub fn partition(params: &Params) -> Result<ClassPartition> {
    let states = params.product_states();
    check_size(states as u128, 1)?;
    let mut slot: Vec<Option<ClassId>> = vec![None; states as usize];
    let mut inventory: BTreeMap<ClassId, Vec<StateLabel>> = BTreeMap::new();
    for alpha in 0..=params.depth {
        let class = ClassId::C(alpha);
        let members = inventory.entry(class).or_default();
        for s in c_prime(alpha, params)? {
            if slot[s.id()].is_none() {
                slot[s.id()] = Some(class);
                members.push(s);
            }
        }
    }
    for (j, side) in d_indices(params.k) {
        let class = ClassId::D(j, side);
        let members = inventory.entry(class).or_default();
        for s in progression(j, params.k, 1u64 << params.z, side) {
            match slot[s.id()] {
                None => {
                    slot[s.id()] = Some(class);
                    members.push(s);
                }
                Some(ClassId::C(_)) => {}
                Some(other) => {
                    return Err(Error::PartitionInconsistent(format!(
                        "{s} lies in both {other} and {class}"
                    )))
                }
            }
        }
    }
    for members in inventory.values_mut() {
        members.sort();
    }
    let assignment = slot
        .into_iter()
        .enumerate()
        .map(|(id, c)| {
            c.ok_or_else(|| {
                Error::PartitionInconsistent(format!("{} is in no class", StateLabel::from_id(id)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let partition = ClassPartition { params: *params, assignment, inventory };
    partition.validate()?;
    Ok(partition)
}

/// Class of a single state computed arithmetically, without enumerating the
/// partition: the least `α` whose progression contains the state, otherwise
/// the `D` class of its residue modulo `k`.
pub fn class_of_label(label: StateLabel, params: &Params) -> Result<ClassId> {
    if label.i >= params.m {
        return Err(Error::InvalidParams(format!("state {label} is out of range")));
    }
    let z = params.z as u64;
    for alpha in 0..=params.depth {
        let shift = params.p as u64 * alpha as u64;
        let start = params.r_shifted(alpha);
        let step = if shift <= z { params.m >> shift } else { params.k };
        if label.i >= start && (label.i - start).is_multiple_of(step) {
            let l = (label.i - start) / step;
            if label.side == Side::T.flip_if(l) {
                return Ok(ClassId::C(alpha));
            }
        }
    }
    let j = label.i % params.k;
    let side = label.side.flip_if(label.i / params.k);
    if j == 0 && side == Side::T {
        return Err(Error::PartitionInconsistent(format!("{label} falls outside every C'")));
    }
    Ok(ClassId::D(j, side))
}

/// `2k + ⌈z/p⌉` for `m = k·2^z`, `k` odd.
pub fn state_complexity(m: u64, p: u32) -> Result<u64> {
    Ok(derive_params(m, 0, p)?.state_complexity())
}

fn class_labels(classes: &[ClassId]) -> Vec<String> {
    classes.iter().map(ToString::to_string).collect()
}

/// The minimal automaton of `mT + r` in base `2^p`: the projected product
/// automaton with every class glued into a single state.
///
/// Every class is checked to map into a single class on each digit before
/// gluing. States are labelled `C_α` / `D_(j,X)` and numbered breadth-first
/// from the initial class.
pub fn build_minimal(m: u64, r: u64, p: u32) -> Result<Dfa> {
    let params = derive_params(m, r, p)?;
    let projected = build_projected(m, r, p)?;
    let part = partition(&params)?;
    quotient(&projected, &part)
}

/// Glues the states of `projected` along `part`.
pub fn quotient(projected: &Dfa, part: &ClassPartition) -> Result<Dfa> {
    let classes = part.nonempty();
    let index: HashMap<ClassId, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let b = projected.alphabet_size();
    let initial = index[&part.class_of(StateLabel::new(0, Side::T))];
    let mut dfa = Dfa::new(classes.len(), b, initial)?;
    for (q, &class) in classes.iter().enumerate() {
        let members = part.members(class);
        for e in 0..b {
            let mut target = None;
            for s in members {
                let t = projected
                    .next(s.id(), e)
                    .ok_or_else(|| Error::QuotientIllDefined(format!("{s} has no move on {e}")))?;
                let tc = part.assignment[t];
                match target {
                    None => target = Some(tc),
                    Some(prev) if prev != tc => {
                        return Err(Error::QuotientIllDefined(format!(
                            "{class} maps on digit {e} into both {prev} and {tc}"
                        )))
                    }
                    _ => {}
                }
            }
            dfa.set_transition(q, e, index[&target.expect("classes are nonempty")])?;
        }
        let finality: BTreeSet<bool> = members.iter().map(|s| projected.is_final(s.id())).collect();
        if finality.len() > 1 {
            return Err(Error::QuotientIllDefined(format!("{class} mixes final and non-final states")));
        }
        dfa.set_final(q, finality.contains(&true))?;
    }
    Ok(dfa.with_labels(class_labels(&classes))?.canonical())
}

/// The same minimal automaton as [`build_minimal`], discovered breadth-first
/// from the initial class using [`class_of_label`] on one representative per
/// class. Never materializes the `2m` product states, so it also works for
/// moduli far beyond what [`build_minimal`] can hold.
pub fn build_minimal_direct(params: &Params) -> Result<Dfa> {
    let b = params.base;
    let expected = params.state_complexity();
    check_size(expected as u128, b as u128)?;
    let start = StateLabel::new(0, Side::T);
    let mut reps: Vec<(ClassId, StateLabel)> = vec![(class_of_label(start, params)?, start)];
    let mut index: HashMap<ClassId, usize> = HashMap::from([(reps[0].0, 0)]);
    let mut edges: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let from = reps[q].1;
        for e in 0..b {
            let to = projected_step(params, from, e);
            let class = class_of_label(to, params)?;
            let id = *index.entry(class).or_insert_with(|| {
                reps.push((class, to));
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            });
            edges.push(id);
        }
        if reps.len() as u64 > expected {
            return Err(Error::PartitionInconsistent(format!(
                "more than {expected} classes reachable"
            )));
        }
    }
    let n = reps.len();
    let mut dfa = Dfa::new(n, b as usize, 0)?;
    // queue order equals discovery order, so row q of `edges` belongs to state q
    for (cell, &t) in edges.iter().enumerate() {
        dfa.set_transition(cell / b as usize, cell % b as usize, t)?;
    }
    if let Some(&f) = index.get(&ClassId::C(0)) {
        dfa.set_final(f, true)?;
    }
    let labels = reps.iter().map(|(c, _)| c.to_string()).collect();
    Ok(dfa.with_labels(labels)?.canonical())
}

/// The classes for `r = 0` written down directly, without set differences.
///
/// `C_0 = {(0,T)}`; for `1 ≤ α ≤ N`, `C_α` is the union over `β` in
/// `[(α-1)p, min(αp, z) - 1]` of `{(k·2^(z-β-1) + ℓ·k·2^(z-β), B_ℓ) : ℓ < 2^β}`;
/// every `D_(j,X)` is the full progression `D'_(j,X)`.
pub fn r0_classes(params: &Params) -> Result<ClassPartition> {
    if params.r != 0 {
        return Err(Error::InvalidParams(format!("r must be 0, got {}", params.r)));
    }
    let (k, z, p) = (params.k, params.z as u64, params.p as u64);
    let states = params.product_states();
    check_size(states as u128, 1)?;
    let mut inventory: BTreeMap<ClassId, Vec<StateLabel>> = BTreeMap::new();
    inventory.insert(ClassId::C(0), vec![StateLabel::new(0, Side::T)]);
    for alpha in 1..=params.depth as u64 {
        let lo = (alpha - 1) * p;
        let hi = (alpha * p).min(z);
        let mut members = Vec::new();
        for beta in lo..hi {
            let start = k << (z - beta - 1);
            let step = k << (z - beta);
            let count = pow2(beta).ok_or(Error::Overflow)?;
            members.extend(progression(start, step, count, Side::B));
        }
        members.sort();
        inventory.insert(ClassId::C(alpha as usize), members);
    }
    for (j, side) in d_indices(k) {
        let mut members: Vec<StateLabel> = progression(j, k, 1u64 << z, side).collect();
        members.sort();
        inventory.insert(ClassId::D(j, side), members);
    }
    let mut slot: Vec<Option<ClassId>> = vec![None; states as usize];
    for (&class, members) in &inventory {
        for s in members {
            if s.i >= params.m {
                return Err(Error::PartitionInconsistent(format!("{s} is out of range")));
            }
            slot[s.id()] = Some(class);
        }
    }
    let assignment = slot
        .into_iter()
        .enumerate()
        .map(|(id, c)| {
            c.ok_or_else(|| {
                Error::PartitionInconsistent(format!("{} is in no class", StateLabel::from_id(id)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let partition = ClassPartition { params: *params, assignment, inventory };
    partition.validate()?;
    Ok(partition)
}

/// Moves the initial state of a minimal automaton of `mT + r` to the state
/// reached by reading the expansion of `m`, which yields the minimal
/// automaton of `m·T̄ + r` on the same states.
pub fn complement_of(minimal: &Dfa, params: &Params) -> Result<Dfa> {
    let word = rep(params.m, params.base)?;
    let target = minimal
        .run(word.digits())?
        .ok_or_else(|| Error::InvalidDfa("minimal automaton must be complete".into()))?;
    minimal.with_initial(target)
}

/// Minimal automaton of `m·T̄ + r`: [`build_minimal`] with the initial state
/// moved. State ids are those of [`build_minimal`].
pub fn complement_minimal(m: u64, r: u64, p: u32) -> Result<Dfa> {
    let params = derive_params(m, r, p)?;
    complement_of(&build_minimal(m, r, p)?, &params)
}

/// The `N`-digit expansion of `r` (leading zeros added), truncated to its
/// last `alpha` digits.
pub fn r_suffix(alpha: usize, params: &Params) -> Result<Vec<usize>> {
    check_alpha(alpha, params)?;
    let full = rep(params.r, params.base)?.padded(params.depth).into_digits();
    Ok(full[full.len() - alpha..].to_vec())
}

/// Length bound within which any two distinct classes are separated:
/// `K + |rep(m)| + R + N`, with `K = 0` when `k = 1`.
pub fn distinguishing_bound(params: &Params) -> Result<usize> {
    Ok(params.witness_len.unwrap_or(0)
        + rep(params.m, params.base)?.len()
        + params.r_len
        + params.depth)
}
