//! Run manifest: every output directory records the invocation that
//! produced it.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub params_file: Option<String>,
    pub seed: u64,
    pub z_values: Vec<usize>,
    pub runs: usize,
    /// Wall-clock stamp; excluded from determinism hashing.
    pub created_unix: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            params_file: None,
            seed,
            z_values: Vec::new(),
            runs: 0,
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn input(mut self, path: impl AsRef<Path>) -> Self {
        self.inputs.push(path.as_ref().display().to_string());
        self
    }

    pub fn output(&mut self, path: impl AsRef<Path>) {
        self.outputs.push(path.as_ref().display().to_string());
    }

    pub fn params_file(mut self, path: Option<&Path>) -> Self {
        self.params_file = path.map(|p| p.display().to_string());
        self
    }

    pub fn z_values(mut self, z: &[usize]) -> Self {
        self.z_values = z.to_vec();
        self
    }

    pub fn runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    /// Writes `manifest.json` into the output directory.
    pub fn write(&self, out_dir: &Path) -> Result<()> {
        let path = out_dir.join("manifest.json");
        let json = serde_json::to_string_pretty(self).context("serialize manifest")?;
        std::fs::write(&path, json + "\n").with_context(|| format!("write {}", path.display()))?;
        Ok(())
    }
}
