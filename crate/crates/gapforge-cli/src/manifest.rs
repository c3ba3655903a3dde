//! Run manifests: every output file is accompanied by a sidecar recording
//! the command, its full parameter set, input digests, toolkit version and
//! seeds.  Numerical payloads are byte-deterministic across reruns; the
//! manifest itself carries the (varying) timestamp.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub input_digests: BTreeMap<String, String>,
    pub toolkit_version: String,
    pub seeds: Vec<u64>,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            input_digests: BTreeMap::new(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            seeds: Vec::new(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seeds.push(seed);
        self
    }

    /// Record the SHA-256 of an input file.
    pub fn input(mut self, path: &Path) -> anyhow::Result<Self> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        self.input_digests
            .insert(path.display().to_string(), format!("{digest:x}"));
        Ok(self)
    }

    /// Write `<output>.manifest.json` next to an output file.
    pub fn write_sidecar(&self, output: &Path) -> anyhow::Result<()> {
        let mut name = output.as_os_str().to_os_string();
        name.push(".manifest.json");
        std::fs::write(name, crate::fmt::json_string(self)?)?;
        Ok(())
    }

    /// Write `manifest.json` inside a directory.
    pub fn write_into_dir(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::write(dir.join("manifest.json"), crate::fmt::json_string(self)?)?;
        Ok(())
    }
}
