use alloc::string::String;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite (leading minor {index} = {value:e})")]
    NotPositiveDefinite { index: usize, value: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("determinant {det} differs from 1")]
    NotUnimodular { det: f64 },

    #[error("index ({a}, {b}) out of range for dimension {dim}")]
    IndexOutOfRange { a: usize, b: usize, dim: usize },

    #[error("non-finite value encountered")]
    NonFinite,

    #[error("jet of order {have} supplied where order {need} is required")]
    JetOrder { have: u8, need: u8 },

    #[error("point is within {margin} of a chamber wall (closest gap {gap:e})")]
    WallProximity { margin: f64, gap: f64 },

    #[error("argument {0} is outside the domain")]
    Domain(f64),

    #[error("truncation tail {tail:e} exceeds tolerance {tolerance:e}")]
    Truncation { tail: f64, tolerance: f64 },

    #[error("input does not decay: {0}")]
    NotIntegrable(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
