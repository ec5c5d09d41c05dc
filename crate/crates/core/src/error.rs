use thiserror::Error;

/// Errors raised by the exact and approximate evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("branch {branch} is outside 1..={order}")]
    InvalidBranch { branch: usize, order: usize },

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("index {index} is below the first defined index {min}")]
    IndexOutOfDomain { index: i64, min: i64 },

    #[error("recurrence cannot be run backwards: {0}")]
    NonInvertibleRecurrence(String),

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("weighted partition sum produced a non-integral coefficient {0}")]
    NonIntegralCoefficient(String),

    #[error("weighted partition sum is not an integer: {0}")]
    NonIntegralSum(String),

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("core polynomial has repeated roots (computed separation {separation:e})")]
    RepeatedRoots { separation: f64 },

    #[error("Vandermonde system is ill conditioned: {0}")]
    IllConditioned(String),

    #[error("index {n} exceeds the floating-point cap {cap}")]
    RangeExceeded { n: i64, cap: i64 },

    #[error("operation requires all-ones coefficients")]
    UnsupportedCoefficients,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("grid outside identity domain: {0}")]
    DomainViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
