//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Denominator of a rational was zero.
    #[error("zero denominator")]
    ZeroDenominator,

    /// The two arguments must be coprime.
    #[error("arguments not coprime: gcd({0}, {1}) != 1")]
    NotCoprime(i128, i128),

    /// A ratio whose denominator vanished (e.g. S(a,b) = 0).
    #[error("degenerate ratio: {0}")]
    DegenerateRatio(String),

    /// Allocation or other resource exhaustion.
    #[error("resource error: {0}")]
    Resource(String),

    /// Bad user input (CLI parsing).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
