use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {0} is outside the supported range 1..=16")]
    Arity(usize),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("malformed truth table `{0}`")]
    MalformedTable(String),
    #[error("malformed tuple `{0}`")]
    MalformedTuple(String),
    #[error("minor map entry {value} is outside 1..={target}")]
    MapOutOfRange { value: usize, target: usize },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
