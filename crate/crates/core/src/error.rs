use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: {reason}")]
    UnsupportedRootSystem {
        family: String,
        rank: usize,
        reason: String,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("raising past truncation level {l_max}")]
    Truncation { l_max: usize },
    /// An internal invariant failed; this is a bug or a wrong convention,
    /// never a user error.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed
    /// internal check.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Contract(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
