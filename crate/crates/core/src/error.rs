use thiserror::Error;

/// Errors raised by the analysis and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("density must be nonnegative, got {rho}")]
    NegativeDensity { rho: f64 },
    #[error("vacuum state (rho = 0) is not admissible here")]
    Vacuum,
    #[error("spatial dimension must be at least 1")]
    InvalidDimension,
    #[error("physical parameters require c > 0 and k < 0, got c = {c}, k = {k}")]
    InvalidPhysicalParams { c: f64, k: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix dimension {n} exceeds the supported cap {cap}")]
    DimensionCap { n: usize, cap: usize },
    #[error("shape mismatch: {what}")]
    ShapeMismatch { what: String },
    #[error("invalid controls: {what}")]
    InvalidControls { what: String },
    #[error("non-finite input: {what}")]
    NonFinite { what: String },
    #[error("periodic Poisson problem needs a zero-mean source, |mean(rho) - 1| = {deviation:e}")]
    NonzeroMean { deviation: f64 },
    #[error("invalid grid: {what}")]
    InvalidGrid { what: String },
    #[error("invalid field state: {what}")]
    InvalidState { what: String },
    #[error("invalid configuration: {what}")]
    InvalidConfig { what: String },
    #[error("numerical failure at t = {t}: {what}")]
    Numerical { t: f64, what: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
