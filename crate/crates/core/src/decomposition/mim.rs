//! Meet-in-the-middle search: grow the balls `B_t` of elements that are
//! sums of at most `t` planes, then test whether `x = y + z` with
//! `y in B_a`, `z in B_b` for `a + b = d`, increasing `d`.

use std::collections::HashMap;

use super::search::Plane;
use super::{RunOutcome, RunResult};
use crate::algebra::symmetric_difference;

/// Every 2-dimensional subspace of `F2^r`, ascending by key.
fn all_planes(rank: u32) -> Vec<Plane> {
    let top = 1u32 << rank;
    let mut planes = Vec::new();
    for a in 1..top {
        for b in a + 1..top {
            if (a ^ b) > b {
                planes.push((a, b));
            }
        }
    }
    planes
}

fn plane_set((a, b): Plane) -> [u32; 4] {
    [0, a, b, a ^ b]
}

/// Ball size at which the search gives up, whatever the node budget.
const MAX_BALL: usize = 1 << 22;

/// element -> (distance from 0, index of the plane that reached it)
type Seen = HashMap<Vec<u32>, (u32, u32)>;

fn path(seen: &Seen, planes: &[Plane], x: &[u32]) -> Vec<Plane> {
    let mut cur = x.to_vec();
    let mut out = Vec::new();
    while !cur.is_empty() {
        let (_, idx) = seen[&cur];
        let p = planes[idx as usize];
        out.push(p);
        cur = symmetric_difference(&cur, &plane_set(p));
    }
    out
}

pub(crate) fn run(rank: u32, target: &[u32], lower: u32, upper: u32, budget: u64) -> RunResult {
    let planes = all_planes(rank);
    let mut seen: Seen = HashMap::from([(Vec::new(), (0, u32::MAX))]);
    // Levels are kept in discovery order so the search is deterministic.
    let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    let mut nodes = 0u64;
    let mut proven = lower;

    macro_rules! tick {
        () => {
            nodes += 1;
            if nodes > budget {
                return RunResult {
                    outcome: RunOutcome::Exhausted(proven),
                    nodes,
                };
            }
        };
    }

    let mut t = 0u32;
    loop {
        if t > 0 {
            // With balls up to radius t: d = 2t - 1 uses y in B_{t-1}, d = 2t uses y in B_t.
            for (d, inner) in [(2 * t - 1, t - 1), (2 * t, t)] {
                if d < proven {
                    continue;
                }
                if d >= upper {
                    break;
                }
                for level in &levels[..=inner as usize] {
                    for y in level {
                        tick!();
                        let z = symmetric_difference(target, y);
                        if seen.get(&z).is_some_and(|&(dz, _)| dz <= t) {
                            let mut found = path(&seen, &planes, y);
                            found.extend(path(&seen, &planes, &z));
                            debug_assert_eq!(found.len() as u32, d);
                            return RunResult {
                                outcome: RunOutcome::Found(found),
                                nodes,
                            };
                        }
                    }
                }
                proven = d + 1;
            }
        }
        if proven >= upper {
            return RunResult {
                outcome: RunOutcome::NoneBelowUpper,
                nodes,
            };
        }

        let mut next = Vec::new();
        for y in &levels[t as usize] {
            for (idx, &p) in planes.iter().enumerate() {
                tick!();
                let z = symmetric_difference(y, &plane_set(p));
                if !seen.contains_key(&z) {
                    if seen.len() >= MAX_BALL {
                        return RunResult {
                            outcome: RunOutcome::Exhausted(proven),
                            nodes,
                        };
                    }
                    seen.insert(z.clone(), (t + 1, idx as u32));
                    next.push(z);
                }
            }
        }
        levels.push(next);
        t += 1;
    }
}
