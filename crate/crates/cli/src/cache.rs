//! Line-delimited cache of `Pf2` results.
//!
//! One JSON record per line, fields in this order:
//!
//! ```text
//! {"key":"4:0000,0001,0010,0100,1000,1111","status":"exact","value":3,"nodes":8}
//! ```
//!
//! `key` is [`GroupAlgebraElement::canonical_key`]: the dimension, a colon,
//! then the support bitstrings in increasing order separated by commas.
//! `status` is `exact`, `lower` or `upper`. Records are appended as they are
//! learned; the last applicable line wins, except that an exact record is
//! never replaced by a bound. `compact` rewrites the file with one line per
//! surviving record, sorted by key.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use pforge_core::{GroupAlgebraElement, SearchOutcome};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Exact,
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub status: CacheStatus,
    pub value: u32,
    pub nodes: u64,
}

impl CacheRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Parses one line, rejecting keys that are not in canonical form.
    pub fn from_line(line: &str) -> Result<Self, String> {
        let rec: CacheRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let element = GroupAlgebraElement::parse_canonical_key(&rec.key).map_err(|e| e.to_string())?;
        if element.canonical_key() != rec.key {
            return Err(format!("non-canonical key {:?}", rec.key));
        }
        Ok(rec)
    }

    /// Records describing a search outcome: one exact record, or a lower
    /// and an upper bound.
    pub fn from_outcome(x: &GroupAlgebraElement, out: &SearchOutcome) -> Vec<CacheRecord> {
        let key = x.canonical_key();
        let rec = |status, value| CacheRecord {
            key: key.clone(),
            status,
            value,
            nodes: out.nodes_visited,
        };
        match out.value {
            Some(v) => vec![rec(CacheStatus::Exact, v)],
            None => vec![
                rec(CacheStatus::Lower, out.lower),
                rec(CacheStatus::Upper, out.upper),
            ],
        }
    }
}

#[derive(Default, Debug, Clone)]
struct Entry {
    exact: Option<CacheRecord>,
    lower: Option<CacheRecord>,
    upper: Option<CacheRecord>,
}

impl Entry {
    /// Applies `rec`; returns whether anything changed.
    fn merge(&mut self, rec: CacheRecord) -> bool {
        match rec.status {
            CacheStatus::Exact => {
                if self.exact.as_ref() == Some(&rec) {
                    return false;
                }
                self.lower = None;
                self.upper = None;
                self.exact = Some(rec);
                true
            }
            _ if self.exact.is_some() => false,
            CacheStatus::Lower => {
                if self.lower.as_ref().is_some_and(|old| old.value >= rec.value) {
                    return false;
                }
                self.lower = Some(rec);
                true
            }
            CacheStatus::Upper => {
                if self.upper.as_ref().is_some_and(|old| old.value <= rec.value) {
                    return false;
                }
                self.upper = Some(rec);
                true
            }
        }
    }

    fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        [&self.exact, &self.lower, &self.upper].into_iter().flatten()
    }
}

/// The in-memory view of a cache file. Writes go through `&mut self`, so a
/// single owner serializes them.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, Entry>,
}

impl Cache {
    /// Loads `path`, or starts empty if it does not exist. Corrupt lines are
    /// skipped with a warning.
    pub fn open(path: impl Into<PathBuf>) -> io::Result<Self> {
        let path = path.into();
        let mut cache = Cache {
            path,
            entries: BTreeMap::new(),
        };
        let file = match File::open(&cache.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match CacheRecord::from_line(&line) {
                Ok(rec) => {
                    cache.entries.entry(rec.key.clone()).or_default().merge(rec);
                }
                Err(e) => log::warn!(
                    "{}:{}: skipping corrupt cache line: {e}",
                    cache.path.display(),
                    lineno + 1
                ),
            }
        }
        Ok(cache)
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

    /// The exact record for `key`, if known.
    pub fn get(&self, key: &str) -> Option<&CacheRecord> {
        self.entries.get(key).and_then(|e| e.exact.as_ref())
    }

    /// Best known `(lower, upper)` for `key`.
    pub fn bounds(&self, key: &str) -> Option<(Option<u32>, Option<u32>)> {
        self.entries.get(key).map(|e| match &e.exact {
            Some(x) => (Some(x.value), Some(x.value)),
            None => (
                e.lower.as_ref().map(|r| r.value),
                e.upper.as_ref().map(|r| r.value),
            ),
        })
    }

    /// Upserts `rec` and appends it to the file if it changed anything.
    pub fn put(&mut self, rec: CacheRecord) -> io::Result<bool> {
        let line = rec.to_line();
        let changed = self.entries.entry(rec.key.clone()).or_default().merge(rec);
        if changed {
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
            writeln!(file, "{line}")?;
        }
        Ok(changed)
    }

    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.entries.values().flat_map(Entry::records)
    }

    /// Rewrites the file with one line per record.
    pub fn compact(&self) -> io::Result<()> {
        let tmp = self.path.with_extension("tmp");
        {
            let mut file = File::create(&tmp)?;
            for rec in self.records() {
                writeln!(file, "{}", rec.to_line())?;
            }
            file.sync_all()?;
        }
        fs::rename(tmp, &self.path)
    }
}
