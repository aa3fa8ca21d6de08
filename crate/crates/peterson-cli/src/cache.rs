//! On-disk persistence of derived root-system data.
//!
//! Entries are keyed by a canonical SHA-256 digest of the Cartan matrix and
//! live under `<dir>/v1/<digest>.json`. Each file embeds a format version;
//! entries with a stale version are ignored. The cache is purely an
//! optimization: any read or parse failure degrades to recomputation, and a
//! seeded system still verifies against cache-free results (the library
//! ignores snapshot entries that do not fit the matrix).

use peterson::{CartanMatrix, DataSnapshot};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Canonical digest of a Cartan matrix: SHA-256 over the rank followed by the
/// rows in order, so two matrices share a key exactly when they are equal.
pub fn digest(cartan: &CartanMatrix) -> String {
    let n = cartan.rank();
    let mut canonical = n.to_string();
    for i in 1..=n {
        canonical.push(';');
        let row: Vec<String> = (1..=n).map(|j| cartan.entry(i, j).to_string()).collect();
        canonical.push_str(&row.join(","));
    }
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("{:x}", hasher.finalize())
}

pub fn entry_path(dir: &Path, cartan: &CartanMatrix) -> PathBuf {
    dir.join(format!("v{CACHE_FORMAT_VERSION}")).join(format!("{}.json", digest(cartan)))
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CacheFile {
    version: u32,
    data: DataSnapshot,
}

/// Loads the entry for `cartan`, treating missing files, unreadable JSON, and
/// version mismatches all as cache misses.
pub fn load(dir: &Path, cartan: &CartanMatrix) -> Option<DataSnapshot> {
    let text = fs::read_to_string(entry_path(dir, cartan)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.version == CACHE_FORMAT_VERSION).then_some(file.data)
}

/// Writes the entry for `cartan`. Failures are silent: a read-only or missing
/// cache directory must never fail the computation that produced the data.
pub fn store(dir: &Path, cartan: &CartanMatrix, data: &DataSnapshot) {
    if data.is_empty() {
        return;
    }
    let path = entry_path(dir, cartan);
    let Some(parent) = path.parent() else { return };
    if fs::create_dir_all(parent).is_err() {
        return;
    }
    let file = CacheFile { version: CACHE_FORMAT_VERSION, data: data.clone() };
    if let Ok(text) = serde_json::to_string_pretty(&file) {
        let _ = fs::write(&path, text);
    }
}
