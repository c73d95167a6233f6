use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no integer solution")]
    NoSolution,
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("invalid morphism: {0}")]
    InvalidMap(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degree {degree} is outside the truncation {trunc}")]
    OutOfTruncation { degree: usize, trunc: usize },
    #[error("operation needs a duplicial object: {0}")]
    NotDuplicial(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
