use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactEntry {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultManifest {
    /// The validated config, defaults included.
    pub config: ExperimentConfig,
    pub artifacts: Vec<ArtifactEntry>,
    /// True when the analysis reported a negative result.
    pub negative: bool,
    pub wall_clock_seconds: f64,
    pub tool_version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ResultManifest {
    /// Recomputes every digest from the files under `dir` and returns the
    /// names whose content no longer matches.
    pub fn verify(&self, dir: &Path) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for a in &self.artifacts {
            let path: PathBuf = dir.join(&a.file);
            let bytes = std::fs::read(&path).map_err(|e| LabError::io(&path, e))?;
            if sha256_hex(&bytes) != a.sha256 || bytes.len() as u64 != a.bytes {
                bad.push(a.file.clone());
            }
        }
        Ok(bad)
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| LabError::io(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
