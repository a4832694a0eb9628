use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word too large to materialize: {0}")]
    TooLarge(String),
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("index {index} out of range (truncation {bound})")]
    OutOfRange { index: usize, bound: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
