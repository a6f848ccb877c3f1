use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid cloning map: {0}")]
    InvalidCloningMap(String),

    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid fidelity operator: {0}")]
    InvalidOperator(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unphysical filter transmittance {tau} (must lie in [0, 1])")]
    UnphysicalFilter { tau: f64 },

    #[error("degenerate beam splitter (mu = {mu}, nu = {nu}): {reason}")]
    DegenerateSplitter { mu: f64, nu: f64, reason: &'static str },

    #[error("singular filter ratio ({0}): 0/0")]
    SingularFilterRatio(&'static str),

    #[error("zero calibration rate")]
    ZeroCalibration,

    #[error("no counts recorded")]
    NoCounts,

    #[error("optimizer did not converge after {iterations} iterations")]
    NotConverged { iterations: usize },
}
