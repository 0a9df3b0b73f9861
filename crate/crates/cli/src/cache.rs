//! On-disk cache for enumerated Weyl actions.
//!
//! One JSON file per Cartan type, named `weyl-<TYPE>.json`.  The payload is
//! the list of fundamental-coordinate action matrices in enumeration order,
//! guarded by a format version, the Cartan type it was computed for, and a
//! checksum over the canonical serialization of all three.  A missing file is
//! not an error (callers recompute); a file that fails any guard is.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::errors::{CliError, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylCacheFile {
    pub format_version: u32,
    pub cartan_type: String,
    pub checksum: String,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

/// Hex digest binding version, type, and matrices together.
fn digest(version: u32, cartan_type: &str, matrices: &[Vec<Vec<i64>>]) -> String {
    let canonical = serde_json::to_string(&(version, cartan_type, matrices))
        .expect("checksum payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(out.len() * 2);
    for byte in out {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

pub fn cache_path(dir: &Path, cartan_type: &str) -> PathBuf {
    dir.join(format!("weyl-{cartan_type}.json"))
}

/// Writes the enumerated actions for `cartan_type` into `dir`.
pub fn store_weyl(dir: &Path, cartan_type: &str, matrices: &[Vec<Vec<i64>>]) -> Result<()> {
    let file = WeylCacheFile {
        format_version: FORMAT_VERSION,
        cartan_type: cartan_type.to_string(),
        checksum: digest(FORMAT_VERSION, cartan_type, matrices),
        matrices: matrices.to_vec(),
    };
    let body = serde_json::to_string_pretty(&file).expect("cache file serializes");
    fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(cache_path(dir, cartan_type), body).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Loads a cached enumeration, validating every guard.
///
/// Returns `Ok(None)` when no file exists so callers can fall back to a fresh
/// enumeration; any malformed or mismatched file is a hard error.
pub fn load_weyl(dir: &Path, cartan_type: &str) -> Result<Option<Vec<Vec<Vec<i64>>>>> {
    let path = cache_path(dir, cartan_type);
    let body = match fs::read_to_string(&path) {
        Ok(body) => body,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(CliError::Io(e.to_string())),
    };
    let file: WeylCacheFile =
        serde_json::from_str(&body).map_err(|e| CliError::CacheCorrupt(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::CacheVersion {
            found: file.format_version,
            expected: FORMAT_VERSION,
        });
    }
    if file.cartan_type != cartan_type {
        return Err(CliError::CacheKey {
            found: file.cartan_type,
            expected: cartan_type.to_string(),
        });
    }
    let expect = digest(file.format_version, &file.cartan_type, &file.matrices);
    if file.checksum != expect {
        return Err(CliError::CacheCorrupt(
            "checksum does not match payload".to_string(),
        ));
    }
    Ok(Some(file.matrices))
}
