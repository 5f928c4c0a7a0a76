//! Run records and atomic file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::CliError;

/// Bumped whenever a CSV header changes.
pub const CSV_FORMAT: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Version {
    pub toolkit: String,
    pub csv_format: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub threads: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub master_seed: u64,
    /// Label path template of the replica streams.
    pub streams: String,
}

/// JSON summary written next to every CSV.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub version: Version,
    pub experiment_id: String,
    pub command: String,
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub results: serde_json::Value,
    pub timing: Timing,
    pub rng: RngInfo,
    /// `ok` or `check_failed`.
    pub status: String,
}

impl RunRecord {
    pub fn read(path: &Path) -> Result<RunRecord, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::Io(e.to_string()))?;
    tmp.write_all(bytes).map_err(|e| CliError::Io(e.to_string()))?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn artifact(out_dir: &Path, id: &str, suffix: &str) -> PathBuf {
    out_dir.join(format!("{id}.{suffix}"))
}

/// CSV bytes of serializable rows; a header is written even without rows.
pub fn csv_bytes<T: Serialize>(header: &[&str], rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}
