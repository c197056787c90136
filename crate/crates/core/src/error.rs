use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: usize, base: u64 },
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("symbol {symbol} is out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },
    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("alphabet of size {0} is not a pair alphabet")]
    NotPairAlphabet(usize),
    #[error("projection is nondeterministic at state {state} on symbol {symbol}")]
    NondeterministicProjection { state: usize, symbol: usize },
    #[error("the automaton accepts no word")]
    EmptyLanguage,
    #[error("{0} is undefined when the odd part k equals 1")]
    UndefinedForUnitOddPart(&'static str),
    #[error("class index alpha={alpha} is out of range [0, {max}]")]
    AlphaOutOfRange { alpha: usize, max: usize },
    #[error("class D_(0,T) is not defined")]
    UndefinedClass,
    #[error("quotient is not well defined: {0}")]
    QuotientIllDefined(String),
    #[error("partition is inconsistent: {0}")]
    PartitionInconsistent(String),
    #[error("malformed automaton: {0}")]
    InvalidDfa(String),
    #[error("automaton would need {0} transition cells, which exceeds the supported size")]
    TooLarge(u128),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
