use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unknown algebra name {0:?}")]
    UnknownName(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("invalid type/rank: {0}")]
    InvalidType(String),
    #[error("not a finite-type Cartan matrix: {0}")]
    NotFiniteType(String),
    #[error("word of length {length} exceeds truncation degree {degree}")]
    TruncationOverflow { length: usize, degree: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
