use thiserror::Error;

/// Errors raised by the exact algebra layers and the fixture model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: u64, cap: u64 },
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group not monomial (or search exhausted)")]
    NotMonomial,
    #[error("element is not central: coefficients differ on conjugates {0} and {1}")]
    NotCentral(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture error at {path}: {msg}")]
    Fixture { path: String, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn fixture(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Fixture {
            path: path.into(),
            msg: msg.into(),
        }
    }
}
