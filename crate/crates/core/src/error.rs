use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("root {0:?} is not in the system")]
    RootNotInSystem(Vec<i64>),
    #[error("element is not valued in the nilradical of the opposite Borel")]
    NotNilpotent,
    #[error("integrality condition violated: {0}")]
    Integrality(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("characteristic polynomial does not split over the rationals (irrational eigenvalue)")]
    IrrationalEigenvalue,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
