//! `pforge bench`: exact `Pf2(xi_e(n))` under both search strategies.

use std::time::Instant;

use anyhow::Result;
use pforge_core::{pf2_exact, xi_e, SearchConfig, SearchStatus, Strategy};
use serde::Serialize;

use crate::input::NRange;

/// Default node budget for the meet-in-the-middle strategy, whose balls
/// grow much faster than the depth-first search tree.
pub const MIM_DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub strategy: Strategy,
    pub status: SearchStatus,
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    pub nodes: u64,
    /// Wall time, not reproducible across runs.
    pub millis: f64,
}

/// Runs every `n` in `dims` with each strategy. `budget` applies to both;
/// when it is `None` the search default is used, capped at
/// [`MIM_DEFAULT_BUDGET`] for meet-in-the-middle.
pub fn run(dims: NRange, budget: Option<u64>) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in dims.iter() {
        let x = xi_e(n)?;
        for strategy in [Strategy::LeastUncoveredIddfs, Strategy::MeetInMiddle] {
            let nodes = budget.unwrap_or(match strategy {
                Strategy::MeetInMiddle => MIM_DEFAULT_BUDGET,
                _ => SearchConfig::DEFAULT_BUDGET,
            });
            let cfg = SearchConfig::with_budget(nodes).strategy(strategy);
            let started = Instant::now();
            let out = pf2_exact(&x, &cfg)?;
            let millis = started.elapsed().as_secs_f64() * 1e3;
            log::info!("bench n={n} {strategy}: {:?} in {millis:.2} ms", out.value);
            rows.push(BenchRow {
                n,
                strategy,
                status: out.status,
                value: out.value,
                lower: out.lower,
                upper: out.upper,
                nodes: out.nodes_visited,
                millis,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let rows = run(NRange::new(3, 4), None).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert_eq!(r.status, SearchStatus::Exact);
            assert_eq!(r.value, Some(r.n as u32 - 1));
        }
        let bounded = run(NRange::single(5), Some(1)).unwrap();
        assert!(bounded.iter().all(|r| r.status == SearchStatus::Bounded));
    }
}
