//! JSON and Graphviz DOT forms of a [`Dfa`].
//!
//! JSON layout (keys sorted):
//!
//! ```text
//! { "alphabet_size": 4, "finals": [0], "initial": 0,
//!   "labels": {"0": "C_0", ...}, "state_count": 7,
//!   "transitions": [[src, symbol, dst], ...] }
//! ```
//!
//! A missing `(src, symbol)` pair is an undefined transition. `labels` is
//! optional.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};

/// Serde mirror of the JSON automaton schema. Field order is alphabetical so
/// that serialization is byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaJson {
    pub alphabet_size: usize,
    pub finals: Vec<usize>,
    pub initial: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    pub state_count: usize,
    pub transitions: Vec<[usize; 3]>,
}

impl From<&Dfa> for DfaJson {
    fn from(dfa: &Dfa) -> Self {
        DfaJson {
            alphabet_size: dfa.alphabet_size(),
            finals: dfa.finals(),
            initial: dfa.initial(),
            labels: dfa.labels().map(|l| {
                l.iter().enumerate().map(|(i, s)| (i.to_string(), s.clone())).collect()
            }),
            state_count: dfa.state_count(),
            transitions: dfa.transitions().map(|(s, a, t)| [s, a, t]).collect(),
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(json: DfaJson) -> Result<Dfa> {
        let transitions: Vec<(usize, usize, usize)> =
            json.transitions.iter().map(|&[s, a, t]| (s, a, t)).collect();
        let dfa = Dfa::from_parts(
            json.state_count,
            json.alphabet_size,
            json.initial,
            &json.finals,
            &transitions,
        )?;
        match json.labels {
            None => Ok(dfa),
            Some(map) => {
                let mut labels = vec![None; json.state_count];
                for (key, label) in map {
                    let id: usize = key
                        .parse()
                        .map_err(|_| Error::InvalidDfa(format!("label key {key:?} is not a state id")))?;
                    let slot = labels
                        .get_mut(id)
                        .ok_or_else(|| Error::InvalidDfa(format!("label for unknown state {id}")))?;
                    *slot = Some(label);
                }
                let labels: Vec<String> = labels
                    .into_iter()
                    .enumerate()
                    .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
                    .collect();
                dfa.with_labels(labels)
            }
        }
    }
}

impl Dfa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DfaJson::from(self)).expect("schema is serializable")
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let json: DfaJson = serde_json::from_str(text)?;
        Dfa::try_from(json)
    }

    /// Graphviz rendering. Parallel edges are merged into one edge whose
    /// label lists the symbols. With `pair_base = Some(b)` symbols are
    /// printed as digit pairs `(d,e)`.
    pub fn to_dot(&self, pair_base: Option<u64>) -> String {
        let name = |s: usize| self.label(s).map_or_else(|| s.to_string(), str::to_owned);
        let symbol = |a: usize| match pair_base {
            Some(b) => {
                let (d, e) = crate::numeration::split_pair_symbol(a, b);
                format!("({d},{e})")
            }
            None => a.to_string(),
        };
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in 0..self.state_count() {
            let shape = if self.is_final(s) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {s} [label={:?}, shape={shape}];", name(s));
        }
        let _ = writeln!(out, "  __start -> {};", self.initial());
        let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (s, a, t) in self.transitions() {
            edges.entry((s, t)).or_default().push(a);
        }
        for ((s, t), symbols) in edges {
            let label: Vec<String> = symbols.into_iter().map(symbol).collect();
            let _ = writeln!(out, "  {s} -> {t} [label={:?}];", label.join(","));
        }
        out.push_str("}\n");
        out
    }
}
