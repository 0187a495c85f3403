//! Library side of the `wfcm` command: file formats and the four
//! subcommands, kept separate from argument parsing so they can be driven
//! from tests.

pub mod commands;
pub mod formats;

use std::path::Path;

use thiserror::Error;
use wfcm_core::clustering::ClusteringError;
use wfcm_core::distributional::DistributionError;
use wfcm_core::synthgen::SynthError;
use wfcm_core::validity::ValidityError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("solver failed: {0}")]
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Solver(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Data(format!("{}: {e}", path.display()))
    }
}

impl From<DistributionError> for CliError {
    fn from(e: DistributionError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ClusteringError> for CliError {
    fn from(e: ClusteringError) -> Self {
        match e {
            ClusteringError::InvalidConfig(_) | ClusteringError::UnknownScheme(_) => {
                CliError::Usage(e.to_string())
            }
            ClusteringError::Shape(_) | ClusteringError::Distribution(_) => {
                CliError::Data(e.to_string())
            }
            ClusteringError::DegenerateCluster { .. }
            | ClusteringError::AllRestartsFailed { .. } => CliError::Solver(e.to_string()),
        }
    }
}

impl From<ValidityError> for CliError {
    fn from(e: ValidityError) -> Self {
        match e {
            ValidityError::Clustering(c) => c.into(),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::UnknownPreset(_) => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}
