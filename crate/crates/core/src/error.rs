use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: multi-index has {index} parts but the weight system has {weights} shifts")]
    DimensionMismatch { index: usize, weights: usize },

    #[error("polynomial has degree 0, derivative is the zero polynomial")]
    ZeroPolynomial,

    #[error("isolation failure: found {found} of {expected} sign changes (multiple roots or insufficient precision)")]
    IsolationFailure { found: usize, expected: usize },

    #[error("branch tracking failure at z = {re} + {im}i: {reason}")]
    TrackingFailure { re: f64, im: f64, reason: String },

    #[error("operation requires the three-interval phase (chat > c*), got chat = {chat}")]
    UnsupportedPhase { chat: f64 },

    #[error("point coincides with a node")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
