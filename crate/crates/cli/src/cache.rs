//! Content-addressed result cache. Keys hash the schema version, the content
//! ids of the inputs, the command and its parameters; labels never enter a
//! key. Payloads are stored verbatim so a hit reproduces the exact bytes of
//! the original run.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::{parse_json, to_json, write_atomic, SCHEMA};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    pub key: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub payload: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

pub fn cache_key(command: &str, content_ids: &[&str], params: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    h.update(format!("schema={SCHEMA}\n").as_bytes());
    h.update(format!("command={command}\n").as_bytes());
    for id in content_ids {
        h.update(format!("input={id}\n").as_bytes());
    }
    for (k, v) in params {
        h.update(format!("{k}={v}\n").as_bytes());
    }
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// The stored payload, if present. An unreadable or mismatched entry is
    /// treated as a miss.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let entry: CacheEntry = parse_json(&text, &path).ok()?;
        (entry.key == key).then_some(entry.payload)
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<(), CliError> {
        let Some(path) = self.path(key) else { return Ok(()) };
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = CacheEntry {
            key: key.to_string(),
            created_at,
            payload: payload.to_string(),
        };
        write_atomic(&path, to_json(&entry).as_bytes())
    }

    /// Cached payload for `key`, computing and storing it on a miss.
    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String, CliError>,
    ) -> Result<String, CliError> {
        if let Some(p) = self.get(key) {
            return Ok(p);
        }
        let payload = compute()?;
        self.put(key, &payload)?;
        Ok(payload)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }
}
