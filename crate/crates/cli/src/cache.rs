//! On-disk cache of character tables, one JSON file per group fingerprint.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use subdepth::{
    CharacterTable, CharacterTableDocument, GroupFingerprint, PermutationGroup, TableSource,
};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub fingerprint: GroupFingerprint,
    pub table: CharacterTableDocument,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    /// Entries present on disk but unreadable or inconsistent.
    pub rejected: usize,
    pub write_failures: usize,
}

/// Table source backed by an optional cache directory and an in-memory memo.
pub struct CachedTables {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<String, Arc<CharacterTable>>>,
    stats: Mutex<CacheStats>,
}

/// `$XDG_CACHE_HOME/subdepth`, else `$HOME/.cache/subdepth`.
pub fn default_cache_dir() -> Option<PathBuf> {
    let non_empty = |k| std::env::var_os(k).filter(|v| !v.is_empty());
    non_empty("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| non_empty("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|base| base.join("subdepth"))
}

impl CachedTables {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self {
            dir,
            memo: Mutex::new(HashMap::new()),
            stats: Mutex::new(CacheStats::default()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().expect("stats lock")
    }

    pub fn entry_path(&self, fingerprint: &GroupFingerprint) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", fingerprint.key())))
    }

    fn load(
        path: &Path,
        fingerprint: &GroupFingerprint,
        group: &Arc<PermutationGroup>,
    ) -> Option<CharacterTable> {
        let bytes = fs::read(path).ok()?;
        let entry: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        if entry.schema_version != CACHE_SCHEMA_VERSION || &entry.fingerprint != fingerprint {
            return None;
        }
        CharacterTable::from_document(group.clone(), &entry.table).ok()
    }

    fn store(path: &Path, entry: &CacheEntry) -> std::io::Result<()> {
        let dir = path.parent().expect("entry paths have a parent");
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl TableSource for CachedTables {
    fn table(&self, group: &Arc<PermutationGroup>) -> subdepth::Result<Arc<CharacterTable>> {
        let fingerprint = group.fingerprint();
        let key = fingerprint.key();
        if let Some(t) = self.memo.lock().expect("memo lock").get(&key) {
            if t.group().same_as(group) {
                return Ok(t.clone());
            }
        }
        let path = self.entry_path(&fingerprint);
        let cached = path.as_ref().and_then(|p| {
            let present = p.exists();
            let table = Self::load(p, &fingerprint, group);
            if present && table.is_none() {
                self.stats.lock().expect("stats lock").rejected += 1;
            }
            table
        });
        let table = match cached {
            Some(t) => {
                self.stats.lock().expect("stats lock").hits += 1;
                Arc::new(t)
            }
            None => {
                self.stats.lock().expect("stats lock").misses += 1;
                let t = Arc::new(CharacterTable::compute(group.clone())?);
                if let Some(p) = &path {
                    let entry = CacheEntry {
                        schema_version: CACHE_SCHEMA_VERSION,
                        fingerprint: fingerprint.clone(),
                        table: t.to_document(),
                    };
                    if Self::store(p, &entry).is_err() {
                        self.stats.lock().expect("stats lock").write_failures += 1;
                    }
                }
                t
            }
        };
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, table.clone());
        Ok(table)
    }
}
