use thiserror::Error;

/// Errors produced by ring, matrix and kernel computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring parameter must be at least 2, got {0}")]
    InvalidParameter(u64),

    #[error("{0} is composite; a prime field needs a prime modulus")]
    CompositeModulusForField(u64),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },

    /// `gcd` is the common factor with the modulus when one exists; polynomial
    /// elements of positive degree carry `None`.
    #[error("element is not invertible{}", .gcd.map(|g| format!(" (gcd {g} with the modulus)")).unwrap_or_default())]
    NotInvertible { gcd: Option<u64> },

    #[error("operation needs a prime field, got {0}")]
    NotAField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("enumeration of {size} elements exceeds the limit of {limit}")]
    OracleTooLarge { size: u128, limit: u128 },

    #[error("ring {0} is infinite; enumeration is unavailable")]
    NotFinite(String),

    #[error("modulus {m} is not square-free (repeated prime {prime})")]
    NotSquareFree { m: u64, prime: u64 },

    #[error("identity ({clause}) violated: {detail}")]
    IdentityViolated { clause: String, detail: String },

    #[error("base change violated at prime {prime}: {detail}")]
    BaseChangeViolated { prime: u64, detail: String },

    #[error("splitting violated: {0}")]
    SplittingViolated(String),

    #[error("consistency violated: {0}")]
    ConsistencyViolated(String),

    #[error("methods disagree: {0}")]
    MethodMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
