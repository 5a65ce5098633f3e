use thiserror::Error;

/// Errors raised by the library. Verdicts that are merely undecided are not errors;
/// they are reported as `Verdict::Unknown`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("forests must have at least one root")]
    EmptyForest,
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("colour clash at vertex {0}")]
    ColourClash(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("tag violation: {0}")]
    TagViolation(String),
    #[error("no common right multiple found: {0}")]
    NotFound(String),
    #[error("element is not representable under the given tree: {0}")]
    NotRepresentable(String),
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("relation sides have {lhs} and {rhs} leaves")]
    LeafCountMismatch { lhs: usize, rhs: usize },
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
