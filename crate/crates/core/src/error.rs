use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate weight vector: {0}")]
    DegenerateWeights(String),

    #[error("invalid entry at index {index}: {reason}")]
    InvalidEntry { index: usize, reason: String },

    #[error("support size mismatch: {left} vs {right}")]
    SupportMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation produced NaN at index {index}")]
    NotANumber { index: usize },

    #[error("argument {value} outside the generator domain [0, {upper}]")]
    OutsideDomain { value: f64, upper: f64 },

    #[error("loss is not symmetric: max |L(1,y) - L(0,1-y)| = {max_gap:e} at y = {at}")]
    AsymmetricLoss { max_gap: f64, at: f64 },

    #[error("generator not convex: {0}")]
    NotConvex(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
