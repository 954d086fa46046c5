use thiserror::Error;

/// Errors raised by the library. Every variant describes a violated
/// precondition or an input outside the supported domain; none of them are
/// transient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("num(x) is undefined for x = 0")]
    NumOfZero,

    #[error("the valuation of 0 is undefined")]
    ValuationOfZero,

    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("{0} is outside the deterministic primality range (n < 2^64)")]
    PrimalityOutOfRange(String),

    #[error("cannot factor {0} with the available methods")]
    FactorizationFailed(String),

    #[error("the level must be at least {min}, got {got}")]
    LevelTooSmall { min: u64, got: u64 },

    #[error("{d} does not divide the level {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the zero vector has no tensor decomposition")]
    ZeroVector,

    #[error("level {0} is not of a supported shape (2^a*M with M odd squarefree and a <= 3, or p^s, 4p^s, 8p^s)")]
    UnsupportedLevel(u64),

    #[error("the divisor has non-integral coefficients")]
    NonIntegral,

    #[error("the divisor has degree {0}, expected 0")]
    NonzeroDegree(String),

    #[error("order-table side condition failed: {0}")]
    TableCondition(String),

    #[error("operator error: {0}")]
    Operator(String),

    #[error("expected a class of order 2, found order {0}")]
    NotOrderTwo(u64),

    #[error("invalid sign assignment: {0}")]
    InvalidSigns(String),

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("singular Weierstrass model (discriminant 0)")]
    SingularModel,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
