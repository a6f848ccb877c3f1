use thiserror::Error;

/// Exit code for invalid configuration or arguments.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit code when an iterative solver hit its cap.
pub const EXIT_NOT_CONVERGED: u8 = 3;
/// Exit code for any other failure.
pub const EXIT_FAILURE: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("{0}")]
    Core(#[from] qclone::Error),
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qclone::Error as E;
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::NotConverged(_) => EXIT_NOT_CONVERGED,
            CliError::Core(e) => match e {
                E::OutOfRange { .. }
                | E::InvalidDistribution(_)
                | E::DegenerateSplitter { .. }
                | E::UnphysicalFilter { .. }
                | E::SingularFilterRatio(_) => EXIT_VALIDATION,
                E::NotConverged { .. } => EXIT_NOT_CONVERGED,
                _ => EXIT_FAILURE,
            },
            _ => EXIT_FAILURE,
        }
    }
}
