use thiserror::Error;

use crate::codebook::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid codebook: {0}")]
    InvalidCodebook(ValidationReport),

    #[error("cannot choose {count} distinct codewords of length {n}")]
    ImpossibleCodebook { n: usize, count: usize },

    #[error("codeword length {n} is outside the supported range {min}..={max}")]
    UnsupportedLength { n: usize, min: usize, max: usize },

    #[error("codeword index {index} is out of range for {count} codewords")]
    CodewordIndex { index: usize, count: usize },

    #[error("stream of {len} bits is not divisible into {n}-bit groups")]
    NotDivisible { len: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-binary symbol {value:?} at position {position}")]
    NonBinary { position: usize, value: char },

    #[error("invalid channel probabilities: {0}")]
    InvalidProbability(String),

    #[error("tuple length {tuple_len} must satisfy 1 < N <= n (n = {n})")]
    InvalidTupleLength { n: usize, tuple_len: usize },

    #[error("classifier ordinal {0} does not exist")]
    UnknownOrdinal(usize),

    #[error("classifier ordinal {0} listed more than once")]
    DuplicateOrdinal(usize),

    #[error("pruning requires the maximum classifier set ({expected} classifiers), got {actual}")]
    NotFullSet { expected: usize, actual: usize },

    #[error("retained classifiers no longer cover positions {missing:?}")]
    CoverageLost { missing: Vec<usize> },

    #[error("voter confidence needs at least two codewords, got {0}")]
    TooFewCodewords(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
