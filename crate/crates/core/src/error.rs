use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("symbol evaluated exactly at its jump location θ = {theta}")]
    OnJump { theta: f64 },

    #[error("Hardy exponent must satisfy 1 < p < ∞, got {p}")]
    InvalidExponent { p: f64 },

    #[error("symbols with different Hardy exponents cannot be combined ({left} vs {right})")]
    MismatchedExponent { left: f64, right: f64 },

    #[error("two jump factors declared at the same location θ = {theta}")]
    DuplicateJump { theta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("M(φ) is not Fredholm: {0}")]
    NotFredholm(String),

    #[error("operation requires index κ = 0, got κ = {kappa}")]
    NonzeroIndex { kappa: i64 },

    #[error("truncation at {n_trunc} is insufficient: coefficients up to degree {needed} are required")]
    TruncationInsufficient { n_trunc: usize, needed: usize },

    #[error("quadrature did not converge (relative change {residual:e})")]
    QuadratureNotConverged { residual: f64 },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("finite-section probes are only defined for p = 2, got p = {p}")]
    ProbeUnsupported { p: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Whether the failure comes from numerics rather than from invalid input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::QuadratureNotConverged { .. } | Error::NumericFailure(_) | Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
