use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomials over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not a unit modulo the modulus")]
    NotAUnit(String),
    #[error("unit group is not cyclic")]
    NotCyclic,
    #[error("operation undefined for the trivial character")]
    TrivialCharacter,
    #[error("matrix does not stabilize the modulus: {0}")]
    NotAStabilizer(String),
    /// An internal cross-check failed: non-integral explicit count, a
    /// disagreement between two counting routes, a broken certificate.
    #[error("consistency violation: {0}")]
    Consistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}
