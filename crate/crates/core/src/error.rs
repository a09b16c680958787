use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration cap exceeded: {needed} candidates, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous: found terms of degree {first} and {second}")]
    MixedDegree { first: u32, second: u32 },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("polynomial is not primitive; call normalize_primitive first")]
    NotPrimitive,

    #[error("comparison inconclusive at maximum precision {0} bits")]
    Inconclusive(u32),

    #[error("estimator spread {spread} exceeds tolerance {tolerance}; samples: {samples:?}")]
    NonConvergent {
        spread: String,
        tolerance: String,
        samples: Vec<String>,
    },

    #[error("tail majorant is not decreasing at scan_max = {0}; rerun with a larger scan_max")]
    TailNotDecreasing(u64),

    #[error("invalid domain for interval operation: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
