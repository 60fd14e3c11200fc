use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("underdetermined linear system: {0}")]
    Underdetermined(String),
    #[error("pole encountered at theta = {theta}: {detail}")]
    Pole { theta: f64, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("anisotropic couplings: {0}")]
    Anisotropy(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
