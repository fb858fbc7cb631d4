//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    #[error("points live in different spaces")]
    SpaceMismatch,

    #[error("numerical tolerance not met: {what} (achieved {achieved:e}, wanted {wanted:e})")]
    Tolerance {
        what: String,
        achieved: f64,
        wanted: f64,
    },

    #[error("root not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error("limit undefined: {0}")]
    LimitUndefined(String),

    #[error("boundary not smooth at the requested point")]
    NotSmooth,

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("refinement required: {0}")]
    RefinementRequired(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
