use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("vector has length {got}, expected {expected}")]
    VectorLength { got: usize, expected: usize },

    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a Lie element: {0}")]
    NotLie(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("boundary word not preserved: {0}")]
    BoundaryNotPreserved(String),

    #[error("no inverse witness available: {0}")]
    NoInverse(String),

    #[error("invalid inverse witness: {0}")]
    BadInverse(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
