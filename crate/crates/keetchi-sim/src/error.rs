use std::path::PathBuf;

use thiserror::Error;

/// Errors from scenario loading, trace parsing and simulation runs.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("config error at {path}: {reason}")]
    MalformedConfig { path: String, reason: String },

    #[error("trace line {line}: {reason}")]
    MalformedTrace { line: usize, reason: String },

    #[error("causality violation: event at {at} precedes current time {now}")]
    CausalityViolation { at: f64, now: f64 },

    #[error("mobility model is trace-driven and has no positions")]
    NotPositional,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Engine(#[from] keetchi::Error),
}

impl SimError {
    pub fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        SimError::MalformedConfig {
            path: path.into(),
            reason: reason.into(),
        }
    }

    /// CLI exit code: 2 for configuration problems, 1 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::MalformedConfig { .. } | SimError::MalformedTrace { .. } => 2,
            _ => 1,
        }
    }
}
