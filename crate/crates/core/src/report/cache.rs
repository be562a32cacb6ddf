//! On-disk cache of block decompositions, keyed by tool version, configuration and level.
//! Entries are re-verified exactly on load, so a stale or edited file is only a cache miss.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::crossed::CrossedProduct;
use crate::ktheory::{block_decompose, BlockSummary, KTheoryError, SemisimpleDecomposition};

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    algebra: String,
    summary: BlockSummary,
}

#[derive(Debug, Default)]
pub struct LevelCache {
    dir: Option<PathBuf>,
    config_hash: String,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl LevelCache {
    pub fn new(dir: Option<PathBuf>, config_text: &str) -> Self {
        LevelCache { dir, config_hash: hex::encode(Sha256::digest(config_text.as_bytes())), ..Default::default() }
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn key(&self, cp: &CrossedProduct) -> String {
        let mut h = Sha256::new();
        for part in [crate::VERSION, &self.config_hash, cp.id()] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        hex::encode(h.finalize())
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn load(&self, path: &PathBuf, cp: &Arc<CrossedProduct>) -> Option<SemisimpleDecomposition> {
        let entry: Entry = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
        if entry.version != crate::VERSION || entry.algebra != cp.id() {
            return None;
        }
        SemisimpleDecomposition::from_summary(cp, &entry.summary).ok()
    }

    pub fn decompose(&self, cp: &Arc<CrossedProduct>) -> Result<SemisimpleDecomposition, KTheoryError> {
        let Some(dir) = &self.dir else {
            return block_decompose(cp);
        };
        let path = dir.join(format!("{}.json", self.key(cp)));
        if let Some(dec) = self.load(&path, cp) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(dec);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let dec = block_decompose(cp)?;
        let entry = Entry { version: crate::VERSION.into(), algebra: cp.id().into(), summary: dec.summary() };
        // a failed write only costs a recomputation next time
        if fs::create_dir_all(dir).is_ok() {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, serde_json::to_string(&entry).expect("serializable")).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        Ok(dec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::build_level;
    use crate::exact::CyclotomicField;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::hecke::HeckeInstance;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let g = FiniteGroup::cyclic(3);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::new(3).unwrap());
        let cp = build_level(&inst, &Subgroup::trivial(&g)).unwrap();
        let cache = LevelCache::new(Some(dir.path().into()), "cfg");
        let first = cache.decompose(&cp).unwrap();
        let second = cache.decompose(&cp).unwrap();
        assert_eq!((cache.hits(), cache.misses()), (1, 1));
        assert_eq!(first.summary(), second.summary());
        let path = dir.path().join(format!("{}.json", cache.key(&cp)));
        let text = fs::read_to_string(&path).unwrap().replace("\"1/3\"", "\"1/2\"");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.decompose(&cp).unwrap().summary(), first.summary());
        assert_eq!(cache.misses(), 2);
        assert_ne!(cache.key(&cp), LevelCache::new(None, "other").key(&cp));
    }
}
