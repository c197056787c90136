//! Deterministic finite automata over a dense integer alphabet.
//!
//! A [`Dfa`] may be partial: a missing transition means the run dies and the
//! word is rejected. Algorithms that need a total transition function call
//! [`Dfa::complete_with_sink`] themselves.

mod equivalence;
mod io;
mod minimize;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use io::DfaJson;

const UNDEF: u32 = u32::MAX;

/// Upper bound on `state_count * alphabet_size`.
pub const MAX_CELLS: u128 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<u32>,
    labels: Option<Vec<String>>,
}

pub(crate) fn check_size(states: u128, alphabet_size: u128) -> Result<()> {
    let cells = states.saturating_mul(alphabet_size);
    if cells > MAX_CELLS {
        Err(Error::TooLarge(cells))
    } else {
        Ok(())
    }
}

impl Dfa {
    /// An automaton with no transitions and no final state.
    pub fn new(state_count: usize, alphabet_size: usize, initial: usize) -> Result<Self> {
        if state_count == 0 || alphabet_size == 0 {
            return Err(Error::InvalidDfa(
                "state count and alphabet size must be positive".into(),
            ));
        }
        check_size(state_count as u128, alphabet_size as u128)?;
        if initial >= state_count {
            return Err(Error::InvalidDfa(format!(
                "initial state {initial} out of range for {state_count} states"
            )));
        }
        Ok(Self {
            alphabet_size,
            initial,
            finals: vec![false; state_count],
            delta: vec![UNDEF; state_count * alphabet_size],
            labels: None,
        })
    }

    /// Builds and validates an automaton from its parts.
    pub fn from_parts(
        state_count: usize,
        alphabet_size: usize,
        initial: usize,
        finals: &[usize],
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let mut dfa = Self::new(state_count, alphabet_size, initial)?;
        for &f in finals {
            dfa.check_state(f)?;
            dfa.finals[f] = true;
        }
        for &(src, symbol, dst) in transitions {
            dfa.check_state(src)?;
            dfa.check_symbol(symbol)?;
            if dfa.next(src, symbol).is_some_and(|prev| prev != dst) {
                return Err(Error::InvalidDfa(format!(
                    "state {src} has two transitions on symbol {symbol}"
                )));
            }
            dfa.set_transition(src, symbol, dst)?;
        }
        Ok(dfa)
    }

    fn check_state(&self, s: usize) -> Result<()> {
        if s >= self.state_count() {
            Err(Error::InvalidDfa(format!(
                "state {s} out of range for {} states",
                self.state_count()
            )))
        } else {
            Ok(())
        }
    }

    fn check_symbol(&self, symbol: usize) -> Result<()> {
        if symbol >= self.alphabet_size {
            Err(Error::SymbolOutOfRange { symbol, alphabet_size: self.alphabet_size })
        } else {
            Ok(())
        }
    }

    pub fn set_transition(&mut self, src: usize, symbol: usize, dst: usize) -> Result<()> {
        self.check_state(src)?;
        self.check_state(dst)?;
        self.check_symbol(symbol)?;
        self.delta[src * self.alphabet_size + symbol] = dst as u32;
        Ok(())
    }

    pub fn set_final(&mut self, s: usize, is_final: bool) -> Result<()> {
        self.check_state(s)?;
        self.finals[s] = is_final;
        Ok(())
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, initial: usize) -> Result<Self> {
        self.check_state(initial)?;
        let mut out = self.clone();
        out.initial = initial;
        Ok(out)
    }

    /// Attaches one label per state; labels must be distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.state_count() {
            return Err(Error::InvalidDfa(format!(
                "{} labels for {} states",
                labels.len(),
                self.state_count()
            )));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDfa("state labels must be distinct".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&s| self.finals[s]).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, s: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[s].as_str())
    }

    /// State carrying `label`, if labels are attached.
    pub fn state_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    #[inline]
    pub fn next(&self, s: usize, symbol: usize) -> Option<usize> {
        let t = self.delta[s * self.alphabet_size + symbol];
        (t != UNDEF).then_some(t as usize)
    }

    /// All defined transitions as `(src, symbol, dst)`, ordered by source then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.state_count()).flat_map(move |s| {
            (0..self.alphabet_size).filter_map(move |a| self.next(s, a).map(|t| (s, a, t)))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|&t| t != UNDEF)
    }

    /// State reached from `from` by reading `word`; `None` if the run dies.
    pub fn run_from(&self, from: usize, word: &[usize]) -> Result<Option<usize>> {
        self.check_state(from)?;
        let mut s = from;
        for &a in word {
            self.check_symbol(a)?;
            match self.next(s, a) {
                Some(t) => s = t,
                None => return Ok(None),
            }
        }
        Ok(Some(s))
    }

    pub fn run(&self, word: &[usize]) -> Result<Option<usize>> {
        self.run_from(self.initial, word)
    }

    pub fn accepts_from(&self, from: usize, word: &[usize]) -> Result<bool> {
        Ok(self.run_from(from, word)?.is_some_and(|s| self.finals[s]))
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        self.accepts_from(self.initial, word)
    }

    /// States reachable from the initial state, in breadth-first order with
    /// symbols visited in ascending order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for a in 0..self.alphabet_size {
                if let Some(t) = self.next(s, a) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        order
    }

    pub fn accessible(&self) -> Vec<bool> {
        let mut mask = vec![false; self.state_count()];
        for s in self.bfs_order() {
            mask[s] = true;
        }
        mask
    }

    /// States from which some final state can be reached.
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, _, t) in self.transitions() {
            preds[t].push(s);
        }
        let mut mask = self.finals.clone();
        let mut stack: Vec<usize> = self.finals();
        while let Some(t) = stack.pop() {
            for &s in &preds[t] {
                if !mask[s] {
                    mask[s] = true;
                    stack.push(s);
                }
            }
        }
        mask
    }

    /// Keeps the states of `order` (old ids), numbered by position. Transitions
    /// into dropped states become undefined. The initial state must be kept.
    fn restrict(&self, order: &[usize]) -> Self {
        let mut new_id = vec![UNDEF; self.state_count()];
        for (i, &s) in order.iter().enumerate() {
            new_id[s] = i as u32;
        }
        let k = self.alphabet_size;
        let mut delta = vec![UNDEF; order.len() * k];
        for (i, &s) in order.iter().enumerate() {
            for a in 0..k {
                if let Some(t) = self.next(s, a) {
                    delta[i * k + a] = new_id[t];
                }
            }
        }
        Dfa {
            alphabet_size: k,
            initial: new_id[self.initial] as usize,
            finals: order.iter().map(|&s| self.finals[s]).collect(),
            delta,
            labels: self
                .labels
                .as_ref()
                .map(|l| order.iter().map(|&s| l[s].clone()).collect()),
        }
    }

    /// Renumbers the accessible states by breadth-first search from the
    /// initial state, symbols ascending; inaccessible states are dropped.
    pub fn canonical(&self) -> Self {
        self.restrict(&self.bfs_order())
    }

    /// Keeps exactly the accessible and coaccessible states, in their
    /// original relative order.
    pub fn trim(&self) -> Result<Self> {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        if !coacc[self.initial] {
            return Err(Error::EmptyLanguage);
        }
        let keep: Vec<usize> = (0..self.state_count()).filter(|&s| acc[s] && coacc[s]).collect();
        Ok(self.restrict(&keep))
    }

    /// Total version of the automaton: adds one non-final absorbing sink when
    /// some transition is undefined, and is the identity otherwise.
    pub fn complete_with_sink(&self) -> Self {
        if self.is_complete() {
            return self.clone();
        }
        let n = self.state_count();
        let k = self.alphabet_size;
        let mut delta = self.delta.clone();
        for t in delta.iter_mut() {
            if *t == UNDEF {
                *t = n as u32;
            }
        }
        delta.extend(std::iter::repeat_n(n as u32, k));
        let mut finals = self.finals.clone();
        finals.push(false);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            let mut sink = String::from("sink");
            while l.contains(&sink) {
                sink.push('_');
            }
            l.push(sink);
            l
        });
        Dfa { alphabet_size: k, initial: self.initial, finals, delta, labels }
    }

    /// Synchronous product restricted to the pairs reachable from the pair of
    /// initial states. A product transition is undefined when either factor's
    /// is. Labels, when both factors carry them, are concatenated.
    pub fn product(&self, other: &Dfa) -> Result<Self> {
        if self.alphabet_size != other.alphabet_size {
            return Err(Error::AlphabetMismatch(self.alphabet_size, other.alphabet_size));
        }
        let k = self.alphabet_size;
        let width = other.state_count();
        let mut index: std::collections::HashMap<usize, u32> = Default::default();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(self.initial * width + other.initial, 0);
        let mut delta: Vec<u32> = Vec::new();
        let mut cursor = 0;
        while cursor < pairs.len() {
            let (s, t) = pairs[cursor];
            for a in 0..k {
                let cell = match (self.next(s, a), other.next(t, a)) {
                    (Some(s2), Some(t2)) => {
                        let key = s2 * width + t2;
                        *index.entry(key).or_insert_with(|| {
                            pairs.push((s2, t2));
                            (pairs.len() - 1) as u32
                        })
                    }
                    _ => UNDEF,
                };
                delta.push(cell);
            }
            cursor += 1;
            check_size(pairs.len() as u128, k as u128)?;
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(l1), Some(l2)) => {
                Some(pairs.iter().map(|&(s, t)| format!("{}{}", l1[s], l2[t])).collect())
            }
            _ => None,
        };
        Ok(Dfa {
            alphabet_size: k,
            initial: 0,
            finals: pairs.iter().map(|&(s, t)| self.finals[s] && other.finals[t]).collect(),
            delta,
            labels,
        })
    }

    /// Projects a pair-alphabet automaton (`b²` symbols, `(d, e)` encoded as
    /// `d·b + e`) on the second component. Fails when two first components
    /// share a second component from one state.
    pub fn project_second(&self) -> Result<Self> {
        let b = (self.alphabet_size as f64).sqrt().round() as usize;
        if b < 1 || b * b != self.alphabet_size {
            return Err(Error::NotPairAlphabet(self.alphabet_size));
        }
        let n = self.state_count();
        let mut delta = vec![UNDEF; n * b];
        for s in 0..n {
            for e in 0..b {
                let mut found = None;
                for d in 0..b {
                    if let Some(t) = self.next(s, d * b + e) {
                        if found.is_some() {
                            return Err(Error::NondeterministicProjection { state: s, symbol: e });
                        }
                        found = Some(t);
                    }
                }
                if let Some(t) = found {
                    delta[s * b + e] = t as u32;
                }
            }
        }
        Ok(Dfa {
            alphabet_size: b,
            initial: self.initial,
            finals: self.finals.clone(),
            delta,
            labels: self.labels.clone(),
        })
    }

    /// Smallest value of an accepted word read in base `base`: the value of
    /// the lexicographically least among the shortest accepted words. This is
    /// the minimum of the accepted set only when the language is closed under
    /// prepending zeros, which the caller must ensure.
    ///
    /// `Ok(None)` when nothing is accepted, `Err(Overflow)` when the minimum
    /// does not fit in 64 bits.
    pub fn min_accepted_value(&self, base: u64) -> Result<Option<u64>> {
        if self.alphabet_size as u64 != base {
            return Err(Error::AlphabetMismatch(self.alphabet_size, base as usize));
        }
        let Some(word) = self.shortest_accepted_word() else {
            return Ok(None);
        };
        crate::numeration::val(&word, base).map(Some)
    }

    /// Lexicographically least among the shortest accepted words.
    pub fn shortest_accepted_word(&self) -> Option<Vec<usize>> {
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, _, t) in self.transitions() {
            preds[t].push(s);
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for f in self.finals() {
            dist[f] = 0;
            queue.push_back(f);
        }
        while let Some(t) = queue.pop_front() {
            for &s in &preds[t] {
                if dist[s] == usize::MAX {
                    dist[s] = dist[t] + 1;
                    queue.push_back(s);
                }
            }
        }
        let mut s = self.initial;
        if dist[s] == usize::MAX {
            return None;
        }
        let mut word = Vec::with_capacity(dist[s]);
        while dist[s] > 0 {
            let (a, t) = (0..self.alphabet_size)
                .find_map(|a| {
                    self.next(s, a)
                        .filter(|&t| dist[t] == dist[s] - 1)
                        .map(|t| (a, t))
                })
                .expect("distance decreases along some transition");
            word.push(a);
            s = t;
        }
        Some(word)
    }
}
