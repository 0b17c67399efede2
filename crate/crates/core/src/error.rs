use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial {0}")]
    ZeroPolynomial(&'static str),
    #[error("exact division left a nonzero remainder")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate ruled surface (a curve)")]
    DegenerateRuledSurface,
    #[error("surface is not projectable in either parameter ordering")]
    NotProjectable,
    #[error("surfaces share a component")]
    SharedComponent,
    #[error("root at interval endpoint; perturb the query interval")]
    RootAtEndpoint,
    #[error("vertical component leaked into triangular solve")]
    VerticalComponentLeak,
    #[error("non-zero-dimensional self-intersection locus: {0}")]
    NonZeroDimensional(String),
    #[error("parameter pole on intersection curve: {0}")]
    ParameterPole(String),
    #[error("certification failure: {0}")]
    Certification(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
