//! Language equivalence (Hopcroft-Karp) and structural isomorphism.

use std::collections::VecDeque;

use super::Dfa;
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl Dfa {
    /// True iff both automata accept the same language.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(Error::AlphabetMismatch(self.alphabet_size(), other.alphabet_size()));
        }
        Ok(self.distinguishing_pair(other).is_none())
    }

    /// Hopcroft-Karp on the disjoint union of the two completed automata.
    /// Returns the first pair of states with different finality reached by
    /// merging, if any.
    fn distinguishing_pair(&self, other: &Dfa) -> Option<(usize, usize)> {
        let a = self.complete_with_sink();
        let b = other.complete_with_sink();
        let offset = a.state_count();
        let mut uf = UnionFind::new(offset + b.state_count());
        let (ia, ib) = (a.initial(), b.initial());
        if a.is_final(ia) != b.is_final(ib) {
            return Some((ia, ib));
        }
        uf.union(ia, ib + offset);
        let mut stack = vec![(ia, ib)];
        while let Some((p, q)) = stack.pop() {
            for sym in 0..a.alphabet_size() {
                let p2 = a.next(p, sym).expect("complete");
                let q2 = b.next(q, sym).expect("complete");
                if uf.union(p2, q2 + offset) {
                    if a.is_final(p2) != b.is_final(q2) {
                        return Some((p2, q2));
                    }
                    stack.push((p2, q2));
                }
            }
        }
        None
    }

    /// A bijection `self` state -> `other` state preserving the initial
    /// state, finality and every transition (including undefined ones).
    /// Both automata are expected to be accessible; `None` otherwise or when
    /// no such bijection exists.
    pub fn isomorphism(&self, other: &Dfa) -> Option<Vec<usize>> {
        if self.alphabet_size() != other.alphabet_size()
            || self.state_count() != other.state_count()
        {
            return None;
        }
        let n = self.state_count();
        let mut map = vec![usize::MAX; n];
        let mut inverse = vec![usize::MAX; n];
        map[self.initial()] = other.initial();
        inverse[other.initial()] = self.initial();
        let mut queue = VecDeque::from([self.initial()]);
        let mut seen = 1;
        while let Some(s) = queue.pop_front() {
            let t = map[s];
            if self.is_final(s) != other.is_final(t) {
                return None;
            }
            for sym in 0..self.alphabet_size() {
                match (self.next(s, sym), other.next(t, sym)) {
                    (None, None) => {}
                    (Some(s2), Some(t2)) => {
                        if map[s2] == usize::MAX {
                            if inverse[t2] != usize::MAX {
                                return None;
                            }
                            map[s2] = t2;
                            inverse[t2] = s2;
                            seen += 1;
                            queue.push_back(s2);
                        } else if map[s2] != t2 {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
        (seen == n).then_some(map)
    }
}
