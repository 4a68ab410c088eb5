use num_bigint::BigUint;
use thiserror::Error;

use crate::scalar::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("invalid element set: {0}")]
    InvalidSet(String),

    #[error("invalid dimensions: {0}")]
    Dimensions(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {required} units of work required, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(text: &str, reason: impl Into<String>) -> Self {
        Error::Parse { text: text.to_string(), reason: reason.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
