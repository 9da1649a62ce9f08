use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported polynomial degree {0} (at most 4)")]
    UnsupportedDegree(usize),
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("tensor arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("unknown family name `{0}`")]
    UnknownName(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no generating set found for `{0}`")]
    GeneratingSet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
