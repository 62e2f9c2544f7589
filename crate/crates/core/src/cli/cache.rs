//! On-disk cache of space lists.
//!
//! File layout: `MHGCACHE v1`, `key=<key>`, `sha256=<hex digest of body>`,
//! then the body, a sequence of blank-line separated spaces in the text
//! format. Entries whose header, key or digest do not match are treated as
//! misses and rewritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::space::MetricSpace;

pub const CACHE_HEADER: &str = "MHGCACHE v1";
pub const CACHE_ENV: &str = "MHG_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".mhg-cache";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Hit(Vec<MetricSpace>),
    Miss,
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.mhg"))
    }

    pub fn load(&self, key: &str) -> Lookup {
        match fs::read_to_string(self.path(key)) {
            Ok(text) => match decode(&text, key) {
                Ok(spaces) => Lookup::Hit(spaces),
                Err(reason) => Lookup::Corrupt(reason),
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => Lookup::Miss,
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn store(&self, key: &str, spaces: &[MetricSpace]) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, encode(key, spaces))?;
        fs::rename(tmp, self.path(key))
    }

    /// Cached list for `key`, computing and storing it on a miss. Returns
    /// the list and whether it came from the cache.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<Vec<MetricSpace>, E>,
    ) -> Result<(Vec<MetricSpace>, bool), E> {
        if let Lookup::Hit(spaces) = self.load(key) {
            return Ok((spaces, true));
        }
        let spaces = compute()?;
        // A cache that cannot be written only costs a recomputation later.
        let _ = self.store(key, &spaces);
        Ok((spaces, false))
    }
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub fn encode(key: &str, spaces: &[MetricSpace]) -> String {
    let body: String = spaces.iter().map(|s| format!("{s}\n")).collect();
    format!("{CACHE_HEADER}\nkey={key}\nsha256={}\n{body}", digest(&body))
}

pub fn decode(text: &str, key: &str) -> Result<Vec<MetricSpace>, String> {
    let mut parts = text.splitn(4, '\n');
    let header = parts.next().unwrap_or_default();
    if header != CACHE_HEADER {
        return Err(format!("bad header {header:?}"));
    }
    let stored_key = parts.next().and_then(|l| l.strip_prefix("key=")).ok_or("missing key line")?;
    if stored_key != key {
        return Err(format!("entry is for {stored_key:?}, not {key:?}"));
    }
    let sum = parts.next().and_then(|l| l.strip_prefix("sha256=")).ok_or("missing checksum line")?;
    let body = parts.next().unwrap_or_default();
    if digest(body) != sum {
        return Err("checksum mismatch".into());
    }
    MetricSpace::parse_many(body).map_err(|e| e.to_string())
}
