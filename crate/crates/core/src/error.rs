use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid dimension {d}: {reason}")]
    InvalidDimension { d: usize, reason: String },

    #[error("empty label path")]
    EmptyLabelPath,

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("target {target} is not bracketed: {reason}")]
    UnbracketedTarget { target: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Fails with `InvalidParameter` unless `cond` holds.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
