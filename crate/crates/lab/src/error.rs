use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },

    #[error("invalid {experiment} parameters: {}", .problems.join("; "))]
    Validation { experiment: String, keys: Vec<String>, problems: Vec<String> },

    #[error("{experiment}: {message}")]
    Module { experiment: String, message: String },

    #[error("csv schema mismatch: {0}")]
    Schema(String),

    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    pub(crate) fn module(experiment: &str, err: impl std::fmt::Display) -> Self {
        LabError::Module { experiment: experiment.into(), message: err.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
