//! On-disk cache of count results.
//!
//! One JSON file per cache directory. Keys carry the artifact version, so
//! entries written by another version are never read back and are dropped on
//! the next write.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_DIR_ENV: &str = "SIGNOTOPE_CACHE_DIR";
const FILE_NAME: &str = "counts.json";

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    entries: BTreeMap<String, u64>,
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: BTreeMap<String, u64>,
    dirty: bool,
}

/// `$SIGNOTOPE_CACHE_DIR`, else `$XDG_CACHE_HOME/signotope`, else
/// `$HOME/.cache/signotope`.
pub fn default_dir() -> Option<PathBuf> {
    let var = |k: &str| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    var(CACHE_DIR_ENV)
        .or_else(|| var("XDG_CACHE_HOME").map(|p| p.join("signotope")))
        .or_else(|| var("HOME").map(|p| p.join(".cache").join("signotope")))
}

fn version_prefix() -> String {
    format!("v{}:", signotope_core::VERSION)
}

pub fn key(method: &str, d: usize, p: usize, n: Option<usize>) -> String {
    match n {
        Some(n) => format!("{}{method}:d={d}:p={p}:n={n}", version_prefix()),
        None => format!("{}{method}:d={d}:p={p}", version_prefix()),
    }
}

impl CountCache {
    /// Loads the cache in `dir`; a missing or unreadable file yields an empty
    /// cache.
    pub fn load(dir: &Path) -> Self {
        let path = dir.join(FILE_NAME);
        let prefix = version_prefix();
        let entries = fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<CacheFile>(&s).ok())
            .map(|f| {
                f.entries
                    .into_iter()
                    .filter(|(k, _)| k.starts_with(&prefix))
                    .collect()
            })
            .unwrap_or_default();
        Self {
            path,
            entries,
            dirty: false,
        }
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.entries.get(key).copied()
    }

    pub fn insert(&mut self, key: String, value: u64) {
        if self.entries.insert(key, value) != Some(value) {
            self.dirty = true;
        }
    }

    /// Replaces the cache file atomically (write to a temp file, then rename).
    pub fn store(&self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let dir = self.path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let body = serde_json::to_string_pretty(&CacheFile {
            entries: self.entries.clone(),
        })?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(body.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(&self.path).map_err(|e| e.error)?;
        Ok(())
    }
}
