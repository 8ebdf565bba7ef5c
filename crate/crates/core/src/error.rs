use thiserror::Error;

/// Errors raised by sign-vector, cycle and decomposition operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("topes are not adjacent (Hamming distance {0}, expected 1)")]
    NotAdjacent(usize),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("cycle is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("singular: {0}")]
    Singular(String),

    #[error("not a tope of the hypercube: {0}")]
    NotATope(String),

    #[error("oracle contradiction: {0}")]
    OracleContradiction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn odd_t(t: usize) -> Self {
        Error::Singular(format!("N({t}) is not invertible for odd t = {t}"))
    }
}
