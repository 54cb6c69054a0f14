use thiserror::Error;

/// Failure modes across the whole pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("nonlinear parameter expression: {0}")]
    NonlinearParameter(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unbound parameter {0}")]
    UnboundParameter(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular loop matrix: U vanishes identically")]
    SingularM,
    #[error("could not deform polynomial: {0}")]
    DeformationFailed(String),
    #[error("weight does not select a term order on the toric ideal: {0}")]
    NonGenericWeight(String),
    #[error("standard pair leaves exponents underdetermined: {0}")]
    UnderdeterminedPair(String),
    #[error("series argument outside its convergence region: {0}")]
    DivergentArgument(String),
    #[error("integral does not converge: {0}")]
    NonConvergent(String),
    #[error("no zero component for the gamma prescription: {0}")]
    NoZeroComponent(String),
    #[error("least-squares system is ill conditioned (condition number {0:.3e})")]
    IllConditioned(f64),
}

impl Error {
    /// Stable short name used in reports and exit-code mapping.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::NonlinearParameter(_) => "NonlinearParameter",
            Error::Pole(_) => "PoleError",
            Error::UnboundParameter(_) => "UnboundParameter",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularM => "SingularM",
            Error::DeformationFailed(_) => "DeformationFailed",
            Error::NonGenericWeight(_) => "NonGenericWeight",
            Error::UnderdeterminedPair(_) => "UnderdeterminedPair",
            Error::DivergentArgument(_) => "DivergentArgument",
            Error::NonConvergent(_) => "NonConvergent",
            Error::NoZeroComponent(_) => "NoZeroComponent",
            Error::IllConditioned(_) => "IllConditioned",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
