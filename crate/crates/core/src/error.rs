use thiserror::Error;

use crate::scalar::FieldDescriptor;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields {0} and {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal disagreement: {0}")]
    Disagreement(String),
    #[error("canonical tuple budget exceeded: {needed} tuples > budget {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("document error: {0}")]
    Document(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
