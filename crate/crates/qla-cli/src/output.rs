//! Artifact writing: CSV and JSON files under the output directory, each
//! embedding its run manifest, with the primary output echoed to stdout.

use anyhow::{Context, Result};
use qla_core::report::RunManifest;
use std::path::{Path, PathBuf};

pub struct Emitter {
    dir: PathBuf,
}

impl Emitter {
    pub fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Emitter {
            dir: dir.to_path_buf(),
        })
    }

    /// Write a CSV artifact with the manifest as a leading comment and echo
    /// it to stdout.
    pub fn csv(&self, name: &str, manifest: &RunManifest, body: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let content = format!("{}{}", manifest.csv_comment(), body);
        std::fs::write(&path, &content)
            .with_context(|| format!("writing {}", path.display()))?;
        print!("{content}");
        Ok(path)
    }

    /// Write a JSON artifact with an embedded manifest field and echo it.
    pub fn json(&self, name: &str, manifest: &RunManifest, value: serde_json::Value) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let wrapped = serde_json::json!({
            "manifest": serde_json::from_str::<serde_json::Value>(&manifest.to_json())?,
            "report": value,
        });
        let content = format!("{}\n", serde_json::to_string_pretty(&wrapped)?);
        std::fs::write(&path, &content)
            .with_context(|| format!("writing {}", path.display()))?;
        print!("{content}");
        Ok(path)
    }

    /// Write a secondary artifact without echoing.
    pub fn csv_quiet(&self, name: &str, manifest: &RunManifest, body: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let content = format!("{}{}", manifest.csv_comment(), body);
        std::fs::write(&path, &content)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

/// Render a float for CSV with full round-trip precision.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}
