//! Hopcroft's partition refinement.

use super::Dfa;

/// Refinable partition of `0..n` with contiguous blocks inside `elems`.
struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    block_of: Vec<usize>,
    first: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(n: usize, finals: &[bool]) -> Self {
        let mut elems: Vec<usize> = (0..n).filter(|&s| finals[s]).collect();
        let split = elems.len();
        elems.extend((0..n).filter(|&s| !finals[s]));
        let mut pos = vec![0; n];
        for (i, &s) in elems.iter().enumerate() {
            pos[s] = i;
        }
        let mut first = Vec::new();
        let mut end = Vec::new();
        let mut block_of = vec![0; n];
        for (lo, hi) in [(0, split), (split, n)] {
            if lo < hi {
                for &s in &elems[lo..hi] {
                    block_of[s] = first.len();
                }
                first.push(lo);
                end.push(hi);
            }
        }
        let blocks = first.len();
        Partition { elems, pos, block_of, first, end, marked: vec![0; blocks] }
    }

    fn len(&self) -> usize {
        self.first.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.first[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.first[b]..self.end[b]]
    }

    /// Moves `s` into the marked prefix of its block. Returns true when this
    /// is the first mark in that block.
    fn mark(&mut self, s: usize) -> bool {
        let b = self.block_of[s];
        let target = self.first[b] + self.marked[b];
        let other = self.elems[target];
        let p = self.pos[s];
        self.elems.swap(p, target);
        self.pos[other] = p;
        self.pos[s] = target;
        self.marked[b] += 1;
        self.marked[b] == 1
    }

    /// Splits the marked prefix off block `b`. Returns the new block id, or
    /// `None` if every member was marked.
    fn split(&mut self, b: usize) -> Option<usize> {
        let marked = std::mem::take(&mut self.marked[b]);
        if marked == self.size(b) {
            return None;
        }
        let nb = self.first.len();
        let lo = self.first[b];
        self.first.push(lo);
        self.end.push(lo + marked);
        self.marked.push(0);
        self.first[b] = lo + marked;
        for i in lo..lo + marked {
            self.block_of[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

/// Block index of every state of a complete automaton under language
/// equivalence.
pub(super) fn hopcroft_blocks(dfa: &Dfa) -> Vec<usize> {
    let n = dfa.state_count();
    let k = dfa.alphabet_size();
    debug_assert!(dfa.is_complete());

    // predecessors grouped by (target, symbol)
    let mut offsets = vec![0usize; n * k + 1];
    for (_, a, t) in dfa.transitions() {
        offsets[t * k + a + 1] += 1;
    }
    for i in 0..n * k {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut preds = vec![0usize; offsets[n * k]];
    for (s, a, t) in dfa.transitions() {
        preds[fill[t * k + a]] = s;
        fill[t * k + a] += 1;
    }

    let mut part = Partition::new(n, &dfa.finals);
    if part.len() < 2 {
        return part.block_of;
    }
    let mut queued: Vec<bool> = vec![false; 2 * k];
    let mut work: Vec<(usize, usize)> = Vec::new();
    let start = if part.size(0) <= part.size(1) { 0 } else { 1 };
    for a in 0..k {
        work.push((start, a));
        queued[start * k + a] = true;
    }

    let mut splitter = Vec::new();
    let mut touched = Vec::new();
    while let Some((b, a)) = work.pop() {
        queued[b * k + a] = false;
        splitter.clear();
        splitter.extend_from_slice(part.members(b));
        for &t in &splitter {
            for &s in &preds[offsets[t * k + a]..offsets[t * k + a + 1]] {
                if part.mark(s) {
                    touched.push(part.block_of[s]);
                }
            }
        }
        for old in touched.drain(..) {
            let Some(new) = part.split(old) else { continue };
            queued.resize(part.len() * k, false);
            for c in 0..k {
                let pick = if queued[old * k + c] || part.size(new) <= part.size(old) {
                    new
                } else {
                    old
                };
                if !queued[pick * k + c] {
                    queued[pick * k + c] = true;
                    work.push((pick, c));
                }
            }
        }
    }
    part.block_of
}

impl Dfa {
    /// The minimal complete automaton of the same language, states numbered
    /// by breadth-first search from the initial state with symbols ascending.
    /// The empty language yields one non-final state looping on every symbol.
    /// Labels are dropped.
    pub fn minimize(&self) -> Dfa {
        let total = self.complete_with_sink().canonical().without_labels();
        let blocks = hopcroft_blocks(&total);
        let count = blocks.iter().max().map_or(0, |&b| b + 1);
        let k = total.alphabet_size();
        let mut quotient = Dfa::new(count, k, blocks[total.initial()])
            .expect("quotient is no larger than its source");
        for s in 0..total.state_count() {
            let b = blocks[s];
            quotient.finals[b] = total.is_final(s);
            for a in 0..k {
                let t = total.next(s, a).expect("complete");
                quotient.delta[b * k + a] = blocks[t] as u32;
            }
        }
        quotient.canonical()
    }
}
