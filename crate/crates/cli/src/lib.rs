//! Scenario sweeps, CSV output and density-matrix files for the `mixmeter` binary.

pub mod density_file;
mod error;
pub mod scenario;
pub mod table;

pub use error::{CliError, Result};
