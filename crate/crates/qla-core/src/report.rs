//! Run manifests embedded in every emitted artifact, so a report can be
//! traced back to the exact command, profile and seed that produced it.
//! Identical manifests imply identical outputs.

use serde::{Deserialize, Serialize};

/// Provenance of one artifact-producing run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub profile: String,
    pub seed: u64,
    /// Non-default parameter overrides as key=value pairs.
    pub overrides: Vec<String>,
    pub output_paths: Vec<String>,
    pub tool_version: String,
    /// Reproducible timestamp: the QLA_TIMESTAMP environment variable when
    /// set, otherwise "0". Wall-clock time would break byte-identical
    /// artifact reproduction.
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, profile: impl Into<String>, seed: u64) -> Self {
        RunManifest {
            command: command.into(),
            profile: profile.into(),
            seed,
            overrides: Vec::new(),
            output_paths: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::env::var("QLA_TIMESTAMP").unwrap_or_else(|_| "0".to_string()),
        }
    }

    pub fn with_override(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.overrides.push(format!("{key}={value}"));
        self
    }

    pub fn with_output(mut self, path: impl Into<String>) -> Self {
        self.output_paths.push(path.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    /// Comment line embedding the manifest at the top of a CSV artifact.
    pub fn csv_comment(&self) -> String {
        format!("# manifest: {}\n", self.to_json())
    }
}
