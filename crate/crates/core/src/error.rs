use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} has size {size}, above the configured bound {bound}")]
    Capacity { what: String, size: usize, bound: usize },
    #[error("frame elements come from different frames")]
    FrameMismatch,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid input at {location}: {message}")]
    Input { location: String, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undecided within budget: {0}")]
    Undecided(String),
}

impl Error {
    pub fn input(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input { location: location.into(), message: message.into() }
    }

    pub fn capacity(what: impl Into<String>, size: usize, bound: usize) -> Self {
        Error::Capacity { what: what.into(), size, bound }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
