use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A located error in one of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("enumeration budget exceeded: {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("circuit is not monotone")]
    NotMonotone,
    #[error("invalid ratio function: {0}")]
    InvalidRatio(String),
    #[error("hash family: {0}")]
    HashFamily(String),
    #[error("field: {0}")]
    Field(String),
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("need at least {needed} known positions, got {got}")]
    TooFewKnown { needed: usize, got: usize },
    #[error("known values are inconsistent at position {position}")]
    InconsistentCodeword { position: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("instance carries no reduction metadata")]
    MissingMetadata,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn budget(required: u128, budget: u64) -> Self {
        Error::BudgetExceeded { required, budget: budget as u128 }
    }
}
