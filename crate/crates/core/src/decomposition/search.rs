//! Iterative-deepening search for minimal 2-fold decompositions.
//!
//! Works in reduced coordinates `F2^r`. A 2-fold term is a plane
//! `{0, a, b, a ^ b}` keyed by its two smallest nonzero members `a < b`.
//! Every node branches only on the planes through the least nonzero vector
//! `w` of the residual: any decomposition of the residual has an odd number
//! of terms containing `w`, so one of them can be taken first.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{RunOutcome, RunResult};

pub(crate) type Plane = (u32, u32);

/// Planes through `w` in `F2^r`, ascending by key.
fn planes_through(rank: u32, w: u32) -> Vec<Plane> {
    let mut planes: Vec<Plane> = (1..1u32 << rank)
        .filter(|&v| v != w && v < (v ^ w))
        .map(|v| {
            let mut m = [w, v, v ^ w];
            m.sort_unstable();
            (m[0], m[1])
        })
        .collect();
    planes.sort_unstable();
    planes
}

fn toggle(set: &mut Vec<u32>, x: u32) {
    match set.binary_search(&x) {
        Ok(i) => {
            set.remove(i);
        }
        Err(i) => set.insert(i, x),
    }
}

fn apply(set: &mut Vec<u32>, (a, b): Plane) {
    toggle(set, 0);
    toggle(set, a);
    toggle(set, b);
    toggle(set, a ^ b);
}

fn as_plane(set: &[u32]) -> Option<Plane> {
    (set.len() == 4 && set[0] == 0 && set[1] ^ set[2] == set[3]).then(|| (set[1], set[2]))
}

/// Cheap infeasibility test for covering `set` with at most `k` planes.
fn too_large(set: &[u32], k: u32) -> bool {
    let len = set.len() as u32;
    let nonzero = len - u32::from(set.first() == Some(&0));
    nonzero > 3 * k || len > 4 * k
}

struct Aborted;

struct Dfs {
    rank: u32,
    residual: Vec<u32>,
    path: Vec<Plane>,
    nodes: u64,
    cap: u64,
    cache: HashMap<u32, Arc<[Plane]>>,
}

impl Dfs {
    fn new(rank: u32, residual: Vec<u32>, cap: u64, cache: HashMap<u32, Arc<[Plane]>>) -> Self {
        Self {
            rank,
            residual,
            path: Vec::new(),
            nodes: 0,
            cap,
            cache,
        }
    }

    fn planes(&mut self, w: u32) -> Arc<[Plane]> {
        let rank = self.rank;
        self.cache
            .entry(w)
            .or_insert_with(|| planes_through(rank, w).into())
            .clone()
    }

    /// Searches for a decomposition of the residual with at most `k` planes.
    fn descend(&mut self, k: u32) -> Result<bool, Aborted> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Aborted);
        }
        if self.residual.is_empty() {
            return Ok(true);
        }
        if k == 0 || too_large(&self.residual, k) {
            return Ok(false);
        }
        if k == 1 {
            return Ok(match as_plane(&self.residual) {
                Some(p) => {
                    self.path.push(p);
                    true
                }
                None => false,
            });
        }
        let w = self.residual[usize::from(self.residual[0] == 0)];
        let planes = self.planes(w);
        for &p in planes.iter() {
            apply(&mut self.residual, p);
            self.path.push(p);
            if self.descend(k - 1)? {
                return Ok(true);
            }
            self.path.pop();
            apply(&mut self.residual, p);
        }
        Ok(false)
    }
}

struct Branch {
    found: Option<Vec<Plane>>,
    nodes: u64,
}

/// One iteration at depth `k >= 2`, fanned out over the first-level planes.
///
/// Branches run independently, each capped at the budget left when the
/// iteration starts; they are then replayed in order, so the outcome and
/// node count are those of the sequential search.
fn iteration(
    rank: u32,
    target: &[u32],
    k: u32,
    spent: u64,
    budget: u64,
) -> (Result<Option<Vec<Plane>>, Aborted>, u64) {
    let mut total = spent + 1;
    if total > budget {
        return (Err(Aborted), total);
    }
    if too_large(target, k) {
        return (Ok(None), total);
    }
    let w = target[usize::from(target[0] == 0)];
    let roots = planes_through(rank, w);
    let cap = budget - total;

    let shared: HashMap<u32, Arc<[Plane]>> = HashMap::from([(w, Arc::from(roots.as_slice()))]);
    let run_branch = |&p: &Plane| {
        let mut residual = target.to_vec();
        apply(&mut residual, p);
        let mut dfs = Dfs::new(rank, residual, cap, shared.clone());
        dfs.path.push(p);
        match dfs.descend(k - 1) {
            Ok(true) => Branch {
                found: Some(dfs.path),
                nodes: dfs.nodes,
            },
            _ => Branch {
                found: None,
                nodes: dfs.nodes,
            },
        }
    };
    let branches: Vec<Branch> = if k >= 3 && roots.len() >= 8 {
        roots.par_iter().map(run_branch).collect()
    } else {
        roots.iter().map(run_branch).collect()
    };

    for b in branches {
        total += b.nodes;
        if total > budget {
            return (Err(Aborted), total);
        }
        if b.found.is_some() {
            return (Ok(b.found), total);
        }
    }
    (Ok(None), total)
}

/// Iterative deepening from `lower` up to `upper - 1`.
pub(crate) fn run(rank: u32, target: &[u32], lower: u32, upper: u32, budget: u64) -> RunResult {
    debug_assert!(!target.is_empty() && lower >= 1);
    let mut nodes = 0u64;
    for k in lower..upper {
        let result = if k == 1 {
            nodes += 1;
            if nodes > budget {
                Err(Aborted)
            } else {
                Ok(as_plane(target).map(|p| vec![p]))
            }
        } else {
            let (r, total) = iteration(rank, target, k, nodes, budget);
            nodes = total;
            r
        };
        match result {
            Err(Aborted) => {
                return RunResult {
                    outcome: RunOutcome::Exhausted(k),
                    nodes,
                }
            }
            Ok(Some(path)) => {
                return RunResult {
                    outcome: RunOutcome::Found(path),
                    nodes,
                }
            }
            Ok(None) => {}
        }
    }
    RunResult {
        outcome: RunOutcome::NoneBelowUpper,
        nodes,
    }
}
