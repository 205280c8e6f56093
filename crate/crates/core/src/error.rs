use thiserror::Error;

use crate::poly::{CoefficientField, JetVariable};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(CoefficientField, CoefficientField),

    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("variable {0} has no assigned value")]
    UnboundVariable(JetVariable),

    #[error("shape error: {0}")]
    ShapeError(String),

    #[error("invalid determinantal spec: {0}")]
    InvalidSpec(String),

    #[error("rank bound 0 has no singular locus")]
    NoSingularLocus,

    #[error("input is not homogeneous of a common degree: {0}")]
    HomogeneityError(String),

    #[error("jet order {m} is smaller than the generator degree {d}")]
    OrderTooSmall { m: usize, d: usize },

    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),

    #[error("invalid log-resolution data: {0}")]
    InvalidResolution(String),

    #[error("{needed} evaluations exceed the enumeration cap {cap}")]
    TooLarge { needed: u128, cap: u128 },

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Groebner budget of {limit} pair reductions exceeded")]
    BudgetExceeded { limit: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
