use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub version: String,
    /// `sha256:` followed by the hex digest of the bytes written.
    pub digest: String,
}

/// Flattens a serializable argument struct into a parameter map.
pub fn params<T: Serialize>(args: &T) -> BTreeMap<String, serde_json::Value> {
    match serde_json::to_value(args) {
        Ok(serde_json::Value::Object(map)) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + 64);
    out.push_str("sha256:");
    for b in hash {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

impl RunManifest {
    pub fn new(command: &str, params: BTreeMap<String, serde_json::Value>, output: &[u8]) -> Self {
        Self {
            command: command.to_owned(),
            params,
            version: signotope_core::VERSION.to_owned(),
            digest: digest(output),
        }
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        let mut body = serde_json::to_string_pretty(self)?;
        body.push('\n');
        fs::write(path, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn params_are_sorted() {
        #[derive(Serialize)]
        struct A {
            z: u32,
            a: &'static str,
        }
        let p = params(&A { z: 1, a: "x" });
        assert_eq!(p.keys().collect::<Vec<_>>(), vec!["a", "z"]);
    }
}
