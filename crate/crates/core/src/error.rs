use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an odd prime ≥ 5: {0}")]
    NotOddPrime(u64),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("image outside codomain basis: {0}")]
    ImageOutsideCodomain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("internal degree {0} exceeds the 128-bit enumeration range")]
    DegreeTooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
