//! Error type shared by all modules.

use crate::series_limits::SeriesValue;

/// Crate-wide error type.
///
/// `ResourceLimit` carries the partial result when a truncated summation
/// had already accumulated one; callers can inspect it instead of
/// discarding the work.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {message}")]
    ResourceLimit {
        message: String,
        partial: Option<Box<SeriesValue>>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit {
            message: msg.into(),
            partial: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
