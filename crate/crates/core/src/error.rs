use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by the decoders, certifiers and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} is {value}, above the guard of {limit}")]
    GuardExceeded { what: &'static str, value: usize, limit: usize },

    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },

    #[error("vector is not in the real nullspace: check {row} evaluates to {value}")]
    NotInNullspace { row: usize, value: Rational },

    #[error("check {row} is fully known and contradicts the observation")]
    Inconsistent { row: usize },

    #[error("observed coordinates agree with no codeword")]
    InconsistentObservation,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("no solution with at most {k_max} nonzero entries")]
    NoSolutionWithinK { k_max: usize },

    #[error("invalid channel parameter: {0}")]
    Channel(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A theorem-backed invariant failed; always an implementation bug.
    #[error("soundness violation: {0}")]
    Soundness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
