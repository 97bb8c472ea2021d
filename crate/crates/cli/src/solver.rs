//! `Pf2` evaluation backed by the cache.
//!
//! Workers read the cache concurrently and queue what they learn; the
//! owner of the [`Cache`] writes the queue out afterwards with
//! [`Solver::into_pending`], so there is a single writer.

use std::sync::Mutex;

use pforge_core::{pf2_exact, GroupAlgebraElement, SearchConfig, SearchOutcome};

use crate::cache::{Cache, CacheRecord, CacheStatus};

/// A `Pf2` value or bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pf2 {
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    pub nodes: u64,
}

impl Pf2 {
    fn from_outcome(out: &SearchOutcome) -> Self {
        Self {
            value: out.value,
            lower: out.lower,
            upper: out.upper,
            nodes: out.nodes_visited,
        }
    }
}

pub struct Solver<'a> {
    pub cfg: SearchConfig,
    cache: Option<&'a Cache>,
    pending: Mutex<Vec<CacheRecord>>,
}

impl<'a> Solver<'a> {
    pub fn new(cfg: SearchConfig, cache: Option<&'a Cache>) -> Self {
        Self {
            cfg,
            cache,
            pending: Mutex::new(Vec::new()),
        }
    }

    pub fn cached(&self, x: &GroupAlgebraElement) -> Option<Pf2> {
        let rec = self.cache?.get(&x.canonical_key())?;
        debug_assert_eq!(rec.status, CacheStatus::Exact);
        Some(Pf2 {
            value: Some(rec.value),
            lower: rec.value,
            upper: rec.value,
            nodes: rec.nodes,
        })
    }

    /// Runs the search and queues the result for the cache.
    pub fn search(&self, x: &GroupAlgebraElement) -> pforge_core::Result<SearchOutcome> {
        let out = pf2_exact(x, &self.cfg)?;
        if self.cache.is_some() {
            self.pending
                .lock()
                .expect("cache queue poisoned")
                .extend(CacheRecord::from_outcome(x, &out));
        }
        Ok(out)
    }

    /// `Pf2(x)` from the cache if known exactly, else by search.
    pub fn pf2(&self, x: &GroupAlgebraElement) -> pforge_core::Result<Pf2> {
        if let Some(hit) = self.cached(x) {
            return Ok(hit);
        }
        self.search(x).map(|out| Pf2::from_outcome(&out))
    }

    /// The queued records in a deterministic order, for the cache owner to
    /// write once the workers are done.
    pub fn into_pending(self) -> Vec<CacheRecord> {
        let mut pending = self.pending.into_inner().expect("cache queue poisoned");
        pending.sort_by(|a, b| (&a.key, a.status).cmp(&(&b.key, b.status)));
        pending
    }
}
