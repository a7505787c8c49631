use thiserror::Error;

/// A configuration or argument value outside its valid range.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid parameter: {0}")]
pub struct ParamError(pub String);

impl ParamError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}
