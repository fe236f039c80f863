use thiserror::Error;

use crate::symtype::TypeTuple;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size must be even and at least 8, got {0}")]
    InvalidGridSize(usize),
    #[error("grid mismatch: expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("kind {0} is not a symmetric solenoidal kind")]
    Inadmissible(TypeTuple),
    #[error("no nondegenerate draw of kind {kind} after {retries} attempts; increase n")]
    DegenerateDraw { kind: TypeTuple, retries: usize },
    #[error("field is not solenoidal (relative divergence {residual:e})")]
    NotSolenoidal { residual: f64 },
    #[error("trajectory covers [0, {covered}] but t = {requested} was requested")]
    InsufficientCoverage { covered: f64, requested: f64 },
    #[error("Picard iteration is not contracting (ratios {ratios:?}); data outside the small-data regime")]
    NoContraction { ratios: Vec<f64> },
    #[error("half-field trace is incompatible with the {extension} extension (component {component}, relative tail {tail:e})")]
    NotCompatible { extension: &'static str, component: usize, tail: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid field file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
