use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("denominator vanishes at v = 1")]
    PoleAtOne,
    #[error("pole at the root of unity: {0}")]
    Pole(String),
    #[error("the formal unit I has no value at this root of unity")]
    MissingI,
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,
    #[error("degenerate order: {0}")]
    Degenerate(String),
    #[error("inadmissible order: {0}")]
    Inadmissible(String),
    #[error("truncation K = {truncation} is below the order r = {order}")]
    Truncation { truncation: usize, order: u64 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("valuation certificate failed at k = {0}")]
    Valuation(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
