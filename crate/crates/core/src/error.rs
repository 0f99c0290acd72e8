//! Error type shared by every module in the crate.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or evaluating the model.
///
/// The enum is deliberately not generic over the scalar type: diagnostic
/// payloads are widened to `f64` so errors stay cheap to pass around.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operation needed at least one building.
    #[error("observation region '{name}' contains no buildings")]
    EmptyRegion { name: String },

    /// Structural problems found while validating a region.
    #[error("invalid observation region '{name}': {}", problems.join("; "))]
    InvalidRegion { name: String, problems: Vec<String> },

    /// A scalar argument violated a positivity requirement.
    #[error("{field} must be positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    /// A structural argument problem (grid sizes, mismatched lengths, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input collection that must not be empty was empty.
    #[error("{what} must not be empty")]
    EmptyInput { what: &'static str },

    /// A distribution table entry evaluated to a non-positive scale.
    #[error("table entry {entry} has non-positive scale {value} at s_norm = {s_norm}")]
    TableScale {
        entry: String,
        s_norm: f64,
        value: f64,
    },

    /// A table override key that names no known coefficient.
    #[error("unknown table override key '{key}'")]
    UnknownOverride { key: String },

    /// A table override key whose coefficient does not exist on that entry.
    #[error("table override '{key}' does not apply: entry expects {expected}")]
    OverrideShape { key: String, expected: &'static str },

    /// Nonnegative truncation gave up; the distribution mass is almost
    /// entirely negative.
    #[error("rejected {attempts} consecutive draws while truncating to nonnegative values")]
    RejectionExhausted { attempts: u32 },

    /// A drop could not be generated; carries the seeds needed to reproduce.
    #[error("drop generation failed (master_seed={master_seed}, drop_index={drop_index}): {cause}")]
    DropGeneration {
        master_seed: u64,
        drop_index: u64,
        cause: Box<Error>,
    },

    #[error("i/o error on {path}: {cause}")]
    Io {
        path: PathBuf,
        cause: std::io::Error,
    },

    #[error("json error{}: {cause}", path.as_ref().map(|p| format!(" in {}", p.display())).unwrap_or_default())]
    Json {
        path: Option<PathBuf>,
        cause: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, cause: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            cause,
        }
    }

    pub(crate) fn json(path: Option<PathBuf>, cause: serde_json::Error) -> Self {
        Error::Json { path, cause }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_offender() {
        let e = Error::NonPositive {
            field: "distance_m",
            value: -3.0,
        };
        assert_eq!(e.to_string(), "distance_m must be positive, got -3");

        let e = Error::TableScale {
            entry: "los.aoa.scale".into(),
            s_norm: -4.0,
            value: -4.2,
        };
        assert!(e.to_string().contains("los.aoa.scale"));
        assert!(e.to_string().contains("-4"));
    }
}
