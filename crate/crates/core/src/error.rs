use thiserror::Error;

/// Errors raised by the numeric routines.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar
/// so that the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitudes are not normalised: |alpha|^2 + |beta|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("operator is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("operator trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("invalid state: eigenvalue {eigenvalue:e} is below the positivity floor")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("parameter `{name}` = {value} is outside its domain: {reason}")]
    ParameterDomain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown {name} `{value}`: expected {expected}")]
    UnknownLabel {
        name: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("negative radicand {radicand:e} in `{quantity}`")]
    NegativeRadicand {
        quantity: &'static str,
        radicand: f64,
    },

    #[error("amplitudes must be real for this protocol")]
    ComplexAmplitude,

    #[error("quadrature needs at least {min} nodes, got {nodes}")]
    QuadratureNodes { nodes: usize, min: usize },

    #[error("invalid quadrature spec `{0}` (expected gauss:N or simpson:N)")]
    QuadratureSpec(String),

    #[error("moment index (m = {m}, k = {k}) outside the table")]
    MomentOutOfRange { m: u32, k: u32 },

    #[error("average {0} has a transcendental component")]
    NotRational(String),

    #[error("stationary point is indeterminate: quadratic part is singular")]
    Indeterminate,

    #[error("constraint matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("overlaps do not match the `{subcase}` subcase")]
    SubcaseMismatch { subcase: &'static str },

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
