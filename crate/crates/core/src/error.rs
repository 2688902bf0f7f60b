use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("computation needs {needed} basis elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("irreducible labeling does not reproduce tableau multiplicities: {0}")]
    ConventionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
