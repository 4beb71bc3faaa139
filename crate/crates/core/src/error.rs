use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotABijection(String),

    #[error("element is not a member of the ambient group")]
    NotInAmbient,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group of order {order} exceeds the cutoff {cutoff}")]
    CutoffExceeded { order: u64, cutoff: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid sigma partition: {0}")]
    Partition(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
