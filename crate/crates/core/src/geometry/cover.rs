use std::cmp::Ordering;

use super::predicates::sign_minus_sqrt3;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// Greedy routing set for `u` by nearest-uncovered peeling: connect to the
/// nearest target not yet covered, then mark every `w` with `d(v,w) < d(u,w)`
/// as covered. Two chosen endpoints are always at least 60° apart as seen
/// from `u`, so in dimension `D` at most `K(D)` endpoints are chosen.
pub fn peeling_cover(space: &MetricSpace, u: usize) -> Result<Vec<usize>> {
    let n = space.len();
    space.check_index(u)?;
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    let mut covered = vec![false; n];
    covered[u] = true;
    let mut chosen = Vec::new();
    // by_distance_to(u) lists u first, then points by distance with index ties.
    for &v in &space.by_distance_to(u)[1..] {
        let v = v as usize;
        if covered[v] {
            continue;
        }
        chosen.push(v);
        for w in 0..n {
            if !covered[w] && space.closer(v, u, w) {
                covered[w] = true;
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Doubled unit vectors of the six sector boundaries: `(c, s)` stands for
/// the direction `(c, s·√3) / 2`.
const BOUNDARIES: [(i128, i128); 6] = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)];

/// Sign of the cross product of boundary `k` with `(x, y)`.
fn side(k: usize, x: i128, y: i128) -> Ordering {
    let (c, s) = BOUNDARIES[k];
    // c·y − s·√3·x
    sign_minus_sqrt3(c * y, s * x)
}

/// Index of the half-open sector `[60k°, 60(k+1)°)` containing `(x, y) ≠ 0`.
fn sector(x: i128, y: i128) -> usize {
    (0..6)
        .find(|&k| side(k, x, y) != Ordering::Less && side((k + 1) % 6, x, y) == Ordering::Less)
        .expect("sectors partition the plane")
}

/// The 2D six-sector construction: the nearest point of every non-empty
/// half-open 60° sector around `u`, ties to the lowest index.
pub fn cone_cover_2d(space: &MetricSpace, u: usize) -> Result<Vec<usize>> {
    let e = space.as_euclidean().ok_or(Error::NotEuclidean)?;
    if e.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: e.dimension(),
        });
    }
    space.check_index(u)?;
    let mut best: [Option<usize>; 6] = [None; 6];
    let pu = e.point(u);
    for v in 0..e.len() {
        if v == u {
            continue;
        }
        let pv = e.point(v);
        let k = sector(pv[0] as i128 - pu[0] as i128, pv[1] as i128 - pu[1] as i128);
        match best[k] {
            Some(b) if space.key(u, b) <= space.key(u, v) => {}
            _ => best[k] = Some(v),
        }
    }
    let mut out: Vec<usize> = best.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}
