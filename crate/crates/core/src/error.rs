use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{what} = {value} exceeds the configured ceiling {ceiling}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        ceiling: u64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
