use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("ideal is not zero-dimensional within the truncation cap (degree {cap})")]
    NotZeroDimensional { cap: u32 },

    #[error("ideal is not a complete intersection")]
    NotCompleteIntersection,

    #[error("unsupported singularity class: {0}")]
    UnsupportedClass(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid weights ({p}, {q}): both must be positive")]
    InvalidWeights { p: u32, q: u32 },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial {0} is not a member of the ideal")]
    MembershipViolation(String),

    #[error("intersection multiplicity is infinite (common component)")]
    InfiniteIntersection,

    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(String),

    #[error("searched value {value} exceeds the registered upper bound {bound}")]
    UpperBoundViolated { value: String, bound: String },
}

pub type Result<T> = std::result::Result<T, Error>;
