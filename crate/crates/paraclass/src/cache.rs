//! Append-only JSON-lines cache keyed by `(kind, key)`. Every write
//! rewrites the file through a temporary sibling and a rename, so readers
//! never see a torn line.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::Result;

pub const ENV_VAR: &str = "PARACLASS_CACHE";

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<(String, String), Value>,
}

impl Cache {
    /// `$PARACLASS_CACHE`, else `$XDG_CACHE_HOME/paraclass/cache.jsonl`,
    /// else `$HOME/.cache/paraclass/cache.jsonl`.
    pub fn default_path() -> PathBuf {
        if let Some(p) = std::env::var_os(ENV_VAR) {
            return PathBuf::from(p);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        base.join("paraclass").join("cache.jsonl")
    }

    /// Loads the cache, skipping malformed lines; later lines win.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines() {
                let Ok(v) = serde_json::from_str::<Value>(line) else {
                    continue;
                };
                if let (Some(k), Some(key), Some(val)) =
                    (v["kind"].as_str(), v["key"].as_str(), v.get("value"))
                {
                    entries.insert((k.to_string(), key.to_string()), val.clone());
                }
            }
        }
        Ok(Cache { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kind: &str, key: &str) -> Option<&Value> {
        self.entries.get(&(kind.to_string(), key.to_string()))
    }

    /// Appends the entries not already present with the same value.
    pub fn put_all(
        &mut self,
        items: impl IntoIterator<Item = (String, String, Value)>,
    ) -> Result<()> {
        let mut lines = String::new();
        for (kind, key, value) in items {
            let slot = (kind.clone(), key.clone());
            if self.entries.get(&slot) == Some(&value) {
                continue;
            }
            lines.push_str(&serde_json::to_string(
                &json!({"kind": kind, "key": key, "value": value}),
            )?);
            lines.push('\n');
            self.entries.insert(slot, value);
        }
        if lines.is_empty() {
            return Ok(());
        }
        let dir = match self.path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        if self.path.exists() {
            tmp.write_all(&fs::read(&self.path)?)?;
        }
        tmp.write_all(lines.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&self.path).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn put(&mut self, kind: &str, key: &str, value: Value) -> Result<()> {
        self.put_all([(kind.to_string(), key.to_string(), value)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_append_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("c.jsonl");
        let mut c = Cache::open(&path).unwrap();
        assert!(c.is_empty());
        c.put("quad", "10", json!({"x": 1})).unwrap();
        c.put("quad", "10", json!({"x": 1})).unwrap();
        c.put("quad", "2", json!(3)).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 2);
        c.put("quad", "2", json!(4)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        let reopened = Cache::open(&path).unwrap();
        assert_eq!(reopened.get("quad", "2"), Some(&json!(4)));
        assert_eq!(reopened.get("quad", "10"), Some(&json!({"x": 1})));
        assert_eq!(reopened.len(), 2);
    }

    #[test]
    fn malformed_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        fs::write(
            &path,
            "not json\n{\"kind\":\"a\",\"key\":\"b\",\"value\":1}\n",
        )
        .unwrap();
        assert_eq!(Cache::open(&path).unwrap().get("a", "b"), Some(&json!(1)));
    }
}
