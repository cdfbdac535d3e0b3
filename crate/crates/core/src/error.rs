use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid tower parameters: {0}")]
    InvalidParameters(String),
    #[error("field of order {size} exceeds the configured bound {bound}")]
    FieldTooLarge { size: u64, bound: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must have degree at least {min}, got {got:?}")]
    DegreeTooSmall { min: usize, got: Option<usize> },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("algebra of order {order} exceeds the oracle bound {bound}")]
    OracleBound { order: u128, bound: u128 },
    #[error("maps are not closed under composition")]
    NotClosed,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
