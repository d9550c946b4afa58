use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of a computation does not hold.
    #[error("{0}")]
    Invalid(String),
    /// Input data could not be read or does not follow the schema.
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("empty polyhedron")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Rank { expected: usize, got: usize },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_rank(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Rank { expected, got });
    }
    Ok(())
}
