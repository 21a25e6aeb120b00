use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::radix::{from_decimal_str, to_decimal_string};
use crate::seq::SequenceId;
use crate::Nat;

pub const CACHE_ENV: &str = "DUNGEONLAB_CACHE";

/// Sequence terms on disk, one file per `(sequence, n)`:
/// `<dir>/<name>/<n>.json`.
#[derive(Debug, Clone)]
pub struct TermCache {
    dir: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    sequence: SequenceId,
    n: u32,
    digits: u64,
    value: String,
}

impl TermCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TermCache { dir: dir.into() }
    }

    /// `$DUNGEONLAB_CACHE`, else `<user data dir>/dungeonlab`.
    pub fn from_env() -> Option<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Some(TermCache::new(dir)),
            _ => dirs::data_dir().map(|d| TermCache::new(d.join("dungeonlab"))),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: SequenceId, n: u32) -> PathBuf {
        self.dir.join(id.name()).join(format!("{n}.json"))
    }

    /// A stored term. Missing, unreadable or inconsistent entries are misses.
    pub fn get(&self, id: SequenceId, n: u32) -> Option<Nat> {
        let text = fs::read_to_string(self.path(id, n)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        if e.sequence != id || e.n != n || e.digits != e.value.len() as u64 {
            return None;
        }
        from_decimal_str(&e.value)
    }

    /// Writes to a temporary file in the same directory, then renames it
    /// into place, so readers never see a partial entry.
    pub fn put(&self, id: SequenceId, n: u32, value: &Nat) -> Result<()> {
        let path = self.path(id, n);
        let parent = path.parent().expect("entry path has a parent");
        fs::create_dir_all(parent)?;
        let text = to_decimal_string(value);
        let entry = Entry {
            sequence: id,
            n,
            digits: text.len() as u64,
            value: text,
        };
        let tmp = parent.join(format!(".{n}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, &entry).map_err(|e| crate::Error::Io(e.to_string()))?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })?;
        Ok(())
    }
}
