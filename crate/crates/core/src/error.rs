use thiserror::Error;

/// Errors produced by the exact-algebra and numeric layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("shape mismatch: {op} on {lhs:?} and {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("unsupported hypercomplex dimension {0} for {1}")]
    UnsupportedHypercomplexDim(usize, &'static str),

    #[error("matrix dimension {requested} exceeds the configured limit {limit}")]
    MaxDimExceeded { requested: usize, limit: usize },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("zero vector has no generated submodule")]
    ZeroVector,

    #[error("unsupported dimension n = {n}: {reason}")]
    UnsupportedDimension { n: usize, reason: &'static str },

    #[error(
        "n = {n} is obstructed: dim R_n = {spinor_dim} < 2 dim R_(n-2) = {required}"
    )]
    ObstructedDimension {
        n: usize,
        spinor_dim: usize,
        required: usize,
    },

    #[error("spinning evidence needs n mod 8 in {{6, 7}}, got n = {0}")]
    WrongResidueClass(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: estimated error {estimate:e} > tolerance {tolerance:e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
