//! Experiment harness around `nflab-core`: JSON configs, seeded runs,
//! CSV/JSON artifacts with a digest manifest, and the command-line tools.

pub mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod experiments;
pub mod manifest;

pub use config::{load_config, parse_config, save_config, ExperimentConfig, ExperimentKind};
pub use emit::{emit_csv, render_csv, Cell, ColumnType, CsvSchema};
pub use error::{LabError, Result};
pub use experiments::{compute, run_experiment, Artifact, Computed, RunOutcome};
pub use manifest::{ResultManifest, MANIFEST_FILE};
