//! Command-line front end: regime sweeps over the `qclone` library,
//! written as CSV or JSON tables.

pub mod angle;
pub mod commands;
pub mod config;
mod error;
pub mod table;

pub use commands::{run, Command, Output};
pub use config::{ExperimentConfig, Overrides};
pub use error::{CliError, EXIT_FAILURE, EXIT_NOT_CONVERGED, EXIT_VALIDATION};
pub use table::{Cell, Format, Table};
