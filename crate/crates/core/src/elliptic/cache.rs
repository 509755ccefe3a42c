//! Persistent point-count cache: one `curve-hash field-size count` record per
//! line. Only an accelerator; counts are identical with or without it.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use super::{count_points, trace_from_count, FrobeniusTrace, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::finite_field::FiniteField;

/// First 128 bits of SHA-256 over `order|a2|a4|a6`, in hex.
pub fn curve_hash<F: FiniteField>(curve: &WeierstrassCurve<F>) -> String {
    let key = format!("{}|{}|{}|{}", curve.a2.order(), curve.a2, curve.a4, curve.a6);
    let digest = Sha256::digest(key.as_bytes());
    hex::encode(&digest[..16])
}

/// Counts points, optionally memoized through a cache file.
#[derive(Debug, Default)]
pub struct PointCounter {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<(String, u64), u64>>,
    dirty: Mutex<bool>,
}

impl PointCounter {
    /// No cache: every count is computed.
    pub fn direct() -> Self {
        Self::default()
    }

    /// Loads records from `path` if it exists; [`PointCounter::flush`] writes back.
    pub fn with_cache_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for (lineno, line) in fs::read_to_string(&path)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                let bad = || Error::Parse(format!("{}:{}: bad cache record", path.display(), lineno + 1));
                if parts.len() != 3 {
                    return Err(bad());
                }
                let size: u64 = parts[1].parse().map_err(|_| bad())?;
                let count: u64 = parts[2].parse().map_err(|_| bad())?;
                entries.insert((parts[0].to_string(), size), count);
            }
        }
        Ok(PointCounter { path: Some(path), entries: Mutex::new(entries), dirty: Mutex::new(false) })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count<F: FiniteField>(&self, curve: &WeierstrassCurve<F>) -> Result<u64> {
        if self.path.is_none() {
            return count_points(curve);
        }
        let key = (curve_hash(curve), curve.a2.order());
        if let Some(&n) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(n);
        }
        let n = count_points(curve)?;
        self.entries.lock().expect("cache lock").insert(key, n);
        *self.dirty.lock().expect("cache lock") = true;
        Ok(n)
    }

    pub fn trace<F: FiniteField>(&self, curve: &WeierstrassCurve<F>) -> Result<FrobeniusTrace> {
        trace_from_count(curve.a2.order(), self.count(curve)?)
    }

    /// Rewrites the cache file, records sorted, if anything was added.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let mut dirty = self.dirty.lock().expect("cache lock");
        if !*dirty {
            return Ok(());
        }
        let entries = self.entries.lock().expect("cache lock");
        let mut records: Vec<_> = entries.iter().collect();
        records.sort();
        let mut out = fs::File::create(path)?;
        for ((hash, size), count) in records {
            writeln!(out, "{hash} {size} {count}")?;
        }
        *dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FqElem;

    fn curve(q: u64) -> WeierstrassCurve<FqElem> {
        WeierstrassCurve::new(FqElem::new(0, q), FqElem::new(-1, q), FqElem::new(0, q))
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("qf-cache-{}", std::process::id()));
        let _ = fs::remove_file(&dir);
        let counter = PointCounter::with_cache_file(&dir).unwrap();
        assert!(counter.is_empty());
        assert_eq!(counter.count(&curve(13)).unwrap(), 8);
        counter.flush().unwrap();
        let text = fs::read_to_string(&dir).unwrap();
        assert_eq!(text, format!("{} 13 8\n", curve_hash(&curve(13))));

        let reloaded = PointCounter::with_cache_file(&dir).unwrap();
        assert_eq!(reloaded.len(), 1);
        assert_eq!(reloaded.count(&curve(13)).unwrap(), 8);
        assert_eq!(reloaded.count(&curve(17)).unwrap(), PointCounter::direct().count(&curve(17)).unwrap());
        fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn malformed_cache_rejected() {
        let path = std::env::temp_dir().join(format!("qf-bad-{}", std::process::id()));
        fs::write(&path, "abc 13\n").unwrap();
        assert!(matches!(PointCounter::with_cache_file(&path), Err(Error::Parse(_))));
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn hash_separates_fields() {
        assert_ne!(curve_hash(&curve(13)), curve_hash(&curve(17)));
        assert_eq!(curve_hash(&curve(13)).len(), 32);
    }
}
