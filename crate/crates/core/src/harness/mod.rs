//! Configuration, dataset loading, and benchmark orchestration for the
//! command-line front end.

pub mod config;
pub mod runner;
pub mod snap;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{parse_config, Algorithm, ConfigError, ObjectiveSpec, RunConfig, TimingMode};
pub use runner::{
    prepare_input, render_csv, run_checks, run_single, run_sweep, write_csv, AlgorithmReport,
    CheckSummary, PreparedInput, RunOutcome, CSV_HEADER,
};
pub use snap::{parse_snap_edge_list, parse_snap_text, SnapError, SnapGraph};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("failed to read config {path}: {source}")]
    ConfigIo { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Snap(#[from] SnapError),
    #[error(transparent)]
    Objective(#[from] crate::objectives::ObjectiveError),
    #[error(transparent)]
    Instance(#[from] crate::lattice::InstanceError),
    #[error(transparent)]
    Solver(#[from] crate::solver::SolverError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error("reported objective {reported:e} disagrees with audit re-evaluation {audit:e}")]
    AuditMismatch { reported: f64, audit: f64 },
    #[error("failed to write {path}: {source}")]
    Out { path: PathBuf, source: std::io::Error },
}

pub fn read_config(path: &Path) -> Result<RunConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| HarnessError::ConfigIo { path: path.to_path_buf(), source })?;
    Ok(parse_config(&text)?)
}
