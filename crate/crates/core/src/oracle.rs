//! Exhaustive reference implementations for small instances. Distances are
//! recomputed from coordinates or the rational matrix rather than read from
//! the precomputed keys.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induce_network, Cost, Network, StrategyProfile};
use crate::metric::{MetricSpace, SpaceKind};

/// Size cap of the path enumeration.
pub const MAX_ORACLE_N: usize = 12;

fn compare(space: &MetricSpace, a: usize, b: usize, t: usize) -> Ordering {
    match space.kind() {
        SpaceKind::Euclidean(e) => {
            let d = |x: usize| -> i128 {
                e.point(x)
                    .iter()
                    .zip(e.point(t))
                    .map(|(&p, &q)| {
                        let diff = p as i128 - q as i128;
                        diff * diff
                    })
                    .sum()
            };
            d(a).cmp(&d(b))
        }
        SpaceKind::General(g) => g.distance(a, t).cmp(g.distance(b, t)),
    }
}

/// Counts the strictly decreasing paths from `s` to `t`, stopping early once
/// `limit` have been found.
pub fn count_decreasing_paths(network: &Network, space: &MetricSpace, s: usize, t: usize, limit: usize) -> usize {
    fn walk(network: &Network, space: &MetricSpace, x: usize, t: usize, limit: usize, found: &mut usize) {
        if x == t {
            *found += 1;
            return;
        }
        for &y in network.neighbors(x) {
            if *found >= limit {
                return;
            }
            if compare(space, y, x, t) == Ordering::Less {
                walk(network, space, y, t, limit, found);
            }
        }
    }
    let mut found = 0;
    walk(network, space, s, t, limit, &mut found);
    found
}

/// `m[s][t]`: some strictly decreasing path leads from `s` to `t`.
pub fn brute_reach_matrix(network: &Network, space: &MetricSpace) -> Result<Vec<Vec<bool>>> {
    let n = space.len();
    if network.len() != n {
        return Err(Error::InvalidProfile("network and space sizes differ".into()));
    }
    if n > MAX_ORACLE_N {
        return Err(Error::TooLarge { n, max: MAX_ORACLE_N });
    }
    Ok((0..n)
        .map(|s| (0..n).map(|t| count_decreasing_paths(network, space, s, t, 1) > 0).collect())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteBestResponse {
    pub cost: Cost,
    pub strategy: Vec<usize>,
}

/// Smallest strategy for `u` (lexicographically first among equals) found
/// by trying every subset of the other agents.
pub fn brute_best_response(space: &MetricSpace, profile: &StrategyProfile, u: usize) -> Result<BruteBestResponse> {
    let n = space.len();
    space.check_index(u)?;
    if n > MAX_ORACLE_N {
        return Err(Error::TooLarge { n, max: MAX_ORACLE_N });
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..1 << others.len() {
        let set: Vec<usize> = (0..others.len()).filter(|i| mask >> i & 1 == 1).map(|i| others[i]).collect();
        if best.as_ref().is_some_and(|b| (b.len(), b) <= (set.len(), &set)) {
            continue;
        }
        let mut p = profile.clone();
        p.set_strategy(u, set.iter().copied().collect::<BTreeSet<_>>())?;
        let g = induce_network(&p);
        if (0..n).all(|t| t == u || count_decreasing_paths(&g, space, u, t, 1) > 0) {
            best = Some(set);
        }
    }
    Ok(match best {
        Some(s) => BruteBestResponse {
            cost: Cost::Finite(s.len()),
            strategy: s,
        },
        None => BruteBestResponse {
            cost: Cost::Infinite,
            strategy: Vec::new(),
        },
    })
}
