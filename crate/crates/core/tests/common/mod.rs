#![allow(dead_code)]

use std::collections::BTreeSet;

use navnet::graph::Edge;
use navnet::{GeneralMetric, MetricSpace, Network, StrategyProfile, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` distinct integer points in `[0, side)^dim`.
pub fn random_points(rng: &mut impl Rng, n: usize, dim: usize, side: i64) -> MetricSpace {
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.random_range(0..side)).collect();
        seen.insert(p);
    }
    let mut pts: Vec<Vec<i64>> = seen.into_iter().collect();
    // Shuffle so that index order carries no geometric information.
    for i in (1..pts.len()).rev() {
        let j = rng.random_range(0..=i);
        pts.swap(i, j);
    }
    MetricSpace::euclidean(dim, pts).unwrap()
}

/// Distances drawn from `[low, 2·low]`, which always satisfy the triangle
/// inequality.
pub fn random_metric(rng: &mut impl Rng, n: usize, low: i64) -> MetricSpace {
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.random_range(low..=2 * low);
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    GeneralMetric::from_integers(d).unwrap().into()
}

/// A mix: points on a line, in the plane, in 3D, or a general metric.
pub fn random_space(rng: &mut impl Rng, n: usize) -> MetricSpace {
    match rng.random_range(0..4) {
        0 => random_points(rng, n, 1, 4 * n as i64),
        1 => random_points(rng, n, 2, 30),
        2 => random_points(rng, n, 3, 12),
        _ => random_metric(rng, n, 10),
    }
}

/// Each agent buys each possible edge with probability `p`.
pub fn random_profile(rng: &mut impl Rng, variant: Variant, n: usize, p: f64) -> StrategyProfile {
    let mut sets = vec![BTreeSet::new(); n];
    for u in 0..n {
        for v in 0..n {
            if u == v || (variant == Variant::Undirected && sets[v].contains(&u)) {
                continue;
            }
            if rng.random_bool(p) {
                sets[u].insert(v);
            }
        }
    }
    StrategyProfile::from_sets(variant, sets).unwrap()
}

/// Smallest number of sets covering `universe`, by trying every subset.
pub fn exhaustive_cover(universe: &BTreeSet<usize>, sets: &[BTreeSet<usize>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << sets.len() {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut covered = BTreeSet::new();
        for (i, s) in sets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                covered.extend(s.iter().copied());
            }
        }
        if universe.is_subset(&covered) {
            best = Some(size);
        }
    }
    best
}

/// Orientation with in-degree at most `delta` exists iff every vertex set
/// spans no more edges than its bounds sum to.
pub fn orientation_exists(n: usize, edges: &[Edge], delta: &[usize]) -> bool {
    (0u32..1 << n).all(|mask| {
        let inside = |v: usize| mask >> v & 1 == 1;
        let spanned = edges.iter().filter(|&&(a, b)| inside(a) && inside(b)).count();
        let budget: usize = (0..n).filter(|&v| inside(v)).map(|v| delta[v]).sum();
        spanned <= budget
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<Edge> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn network(variant: Variant, n: usize, edges: &[Edge]) -> Network {
    Network::from_edges(variant, n, edges.iter().copied()).unwrap()
}

/// Compares `d(a, t)` with `d(b, t)` from raw coordinates or matrix entries.
pub fn cmp_dist(space: &MetricSpace, a: usize, b: usize, t: usize) -> std::cmp::Ordering {
    match space.kind() {
        navnet::SpaceKind::Euclidean(e) => {
            let d = |x: usize| -> i128 {
                e.point(x)
                    .iter()
                    .zip(e.point(t))
                    .map(|(&p, &q)| (p as i128 - q as i128).pow(2))
                    .sum()
            };
            d(a).cmp(&d(b))
        }
        navnet::SpaceKind::General(g) => g.distance(a, t).cmp(g.distance(b, t)),
    }
}

/// Fewest endpoints giving `u` a strictly closer first hop toward every
/// other point, by subset enumeration.
pub fn exhaustive_phi(space: &MetricSpace, u: usize) -> usize {
    let n = space.len();
    let universe: BTreeSet<usize> = (0..n).filter(|&t| t != u).collect();
    let sets: Vec<BTreeSet<usize>> = (0..n)
        .filter(|&v| v != u)
        .map(|v| {
            (0..n)
                .filter(|&t| t != u && (t == v || cmp_dist(space, v, u, t).is_lt()))
                .collect()
        })
        .collect();
    exhaustive_cover(&universe, &sets).expect("targets cover themselves")
}
