use thiserror::Error;

use crate::vogelplane::Basis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis mismatch: expected {expected:?}, found {found:?}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("all three coordinates are zero")]
    ZeroVector,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("invalid multipliers: {0}")]
    InvalidMultiplier(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("degenerate family: {0}")]
    DegenerateFamily(String),

    #[error("invalid configuration table: {0}")]
    InvalidTable(String),

    #[error("malformed coloring: {0}")]
    MalformedColoring(String),

    #[error("not a Q picture: {0}")]
    NotAQPicture(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
