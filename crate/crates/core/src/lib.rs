//! Minimal automata for the sets `mT + r`, where `T` is the set of natural
//! numbers with an even number of ones in binary (the evil numbers), read in
//! base `2^p` most significant digit first.
//!
//! The crate builds the automata stage by stage ([`construction`]),
//! describes the states of the minimal automaton explicitly ([`classes`]),
//! decides whether a given automaton accepts some `mT + r` ([`decision`]),
//! and checks everything against plain arithmetic ([`oracle`]).
//!
//! ```
//! use thue_morse_dfa::classes::{build_minimal, state_complexity};
//!
//! let dfa = build_minimal(6, 2, 2).unwrap();
//! assert_eq!(dfa.state_count() as u64, state_complexity(6, 2).unwrap());
//! // 2 = 6·0 + 2 and 0 is evil
//! assert!(dfa.accepts(&[2]).unwrap());
//! // 8 = 6·1 + 2 and 1 is odious
//! assert!(!dfa.accepts(&[2, 0]).unwrap());
//! ```

pub mod classes;
pub mod cli;
pub mod construction;
pub mod decision;
pub mod dfa;
pub mod error;
pub mod numeration;
pub mod oracle;

pub use classes::{build_minimal, state_complexity, ClassId, ClassPartition};
pub use decision::{decide, Verdict};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use numeration::{derive_params, Params, Side};
