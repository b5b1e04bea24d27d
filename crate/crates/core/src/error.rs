use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("outside the supported theory: {0}")]
    Theory(String),
    #[error("different blocks: {0}")]
    DifferentBlocks(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("no stabilization: {0}")]
    Unstable(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Theory(_) => 3,
            Error::DifferentBlocks(_) => 4,
            Error::Cache(_) => 5,
            Error::Unstable(_) | Error::Invariant(_) | Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
