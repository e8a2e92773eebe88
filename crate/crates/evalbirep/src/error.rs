use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { index: i64, what: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("complex is not minimal")]
    NonMinimal,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
