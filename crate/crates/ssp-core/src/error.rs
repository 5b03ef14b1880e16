use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum SspError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("corrupted instance: {0}")]
    CorruptedInstance(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("run aborted: {0}")]
    Aborted(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
