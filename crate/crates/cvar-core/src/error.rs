use thiserror::Error;

/// Errors raised by estimators, bounds, and oracles.
#[derive(Debug, Clone, Error)]
pub enum CvarError {
    #[error("sample must contain at least one value")]
    EmptySample,

    #[error("sample values must be finite and non-decreasing")]
    UnsortedSample,

    #[error("value {value} violates declared support [{lo}, {hi}]")]
    SupportViolation { value: f64, lo: f64, hi: f64 },

    #[error("alpha must be in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("delta must be in (0, 0.5], got {0}")]
    InvalidDelta(f64),

    #[error("epsilon must be in [0, 1], got {0}")]
    InvalidEpsilon(f64),

    #[error("{bound} bound requires the {side} support bound")]
    MissingSupport {
        bound: &'static str,
        side: &'static str,
    },

    #[error("invalid CDF: {0}")]
    InvalidCdf(&'static str),

    #[error("invalid discrepancy grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid distribution parameters: {0}")]
    InvalidDistribution(String),
}
