//! Run manifests: one JSON object per run, listing every artifact with its
//! SHA-256 checksum.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Default)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discard: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub path: PathBuf,
    pub format: String,
    pub sha256: String,
    pub bytes: u64,
}

impl Artifact {
    pub fn from_file(path: &Path, format: &str) -> std::io::Result<Self> {
        let data = fs::read(path)?;
        Ok(Self {
            path: path.to_path_buf(),
            format: format.to_string(),
            sha256: sha256_hex(&data),
            bytes: data.len() as u64,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: String,
    pub polytope: String,
    pub parameters: Parameters,
    pub outputs: Vec<Artifact>,
    pub duration_ms: f64,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// `<out>.manifest.json` next to the primary output.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}
