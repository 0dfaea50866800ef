use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use super::predicates::{incircle, orient2d};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Network, Variant};
use crate::metric::MetricSpace;

const INF: usize = usize::MAX;

/// Counter-clockwise triangles over point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation2D {
    n: usize,
    triangles: Vec<[usize; 3]>,
}

impl Triangulation2D {
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.triangles
            .iter()
            .flat_map(|t| [edge(t[0], t[1]), edge(t[1], t[2]), edge(t[2], t[0])])
            .collect()
    }

    pub fn to_network(&self) -> Network {
        Network::from_edges(Variant::Undirected, self.n, self.edges()).expect("valid edges")
    }
}

/// Delaunay triangulation by Bowyer–Watson insertion with a point at
/// infinity. Cocircular configurations are resolved by flipping toward the
/// lexicographically smaller diagonal until no such flip applies.
pub fn delaunay_2d(space: &MetricSpace) -> Result<Triangulation2D> {
    let e = space.as_euclidean().ok_or(Error::NotEuclidean)?;
    if e.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: e.dimension(),
        });
    }
    let n = e.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, found: n });
    }
    let pts: Vec<[i64; 2]> = e.points().map(|p| [p[0], p[1]]).collect();
    let seed = (2..n)
        .find(|&k| orient2d(pts[0], pts[1], pts[k]) != Ordering::Equal)
        .ok_or(Error::Collinear)?;

    let mut bw = BowyerWatson { pts: &pts, tris: Vec::new() };
    let first = if orient2d(pts[0], pts[1], pts[seed]) == Ordering::Greater {
        [0, 1, seed]
    } else {
        [1, 0, seed]
    };
    bw.tris.push(first);
    for i in 0..3 {
        let (a, b) = (first[i], first[(i + 1) % 3]);
        bw.tris.push([b, a, INF]);
    }
    for p in (2..n).filter(|&p| p != seed) {
        bw.insert(p);
    }
    let mut triangles: Vec<[usize; 3]> = bw.tris.into_iter().filter(|t| !t.contains(&INF)).collect();
    canonicalize_cocircular(&pts, &mut triangles);
    for t in &mut triangles {
        let m = (0..3).min_by_key(|&i| t[i]).unwrap();
        t.rotate_left(m);
    }
    triangles.sort_unstable();
    Ok(Triangulation2D { n, triangles })
}

struct BowyerWatson<'a> {
    pts: &'a [[i64; 2]],
    tris: Vec<[usize; 3]>,
}

impl BowyerWatson<'_> {
    fn in_conflict(&self, t: &[usize; 3], p: usize) -> bool {
        let q = self.pts[p];
        if t[2] == INF {
            let (a, b) = (self.pts[t[0]], self.pts[t[1]]);
            match orient2d(a, b, q) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => strictly_between(a, b, q),
            }
        } else {
            incircle(self.pts[t[0]], self.pts[t[1]], self.pts[t[2]], q) == Ordering::Greater
        }
    }

    fn insert(&mut self, p: usize) {
        let (cavity, keep): (Vec<[usize; 3]>, Vec<[usize; 3]>) =
            self.tris.iter().partition(|t| self.in_conflict(t, p));
        debug_assert!(!cavity.is_empty());
        let directed: HashSet<(usize, usize)> = cavity
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .collect();
        self.tris = keep;
        for t in &cavity {
            for (x, y) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                if directed.contains(&(y, x)) {
                    continue;
                }
                let new = if x == INF {
                    [y, p, INF]
                } else if y == INF {
                    [p, x, INF]
                } else {
                    [x, y, p]
                };
                self.tris.push(new);
            }
        }
    }
}

/// `q` is collinear with `a, b` and lies strictly inside the segment.
fn strictly_between(a: [i64; 2], b: [i64; 2], q: [i64; 2]) -> bool {
    let inside = |lo: i64, hi: i64, x: i64| lo.min(hi) <= x && x <= lo.max(hi);
    q != a && q != b && inside(a[0], b[0], q[0]) && inside(a[1], b[1], q[1])
}

fn canonicalize_cocircular(pts: &[[i64; 2]], tris: &mut [[usize; 3]]) {
    loop {
        let mut by_edge: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, t) in tris.iter().enumerate() {
            for k in 0..3 {
                by_edge.insert((t[k], t[(k + 1) % 3]), i);
            }
        }
        let mut flipped = false;
        let mut candidates: Vec<(usize, usize)> = by_edge.keys().copied().filter(|&(a, b)| a < b).collect();
        candidates.sort_unstable();
        for (a, b) in candidates {
            let (Some(&i), Some(&j)) = (by_edge.get(&(a, b)), by_edge.get(&(b, a))) else {
                continue;
            };
            let c = third(&tris[i], a, b);
            let d = third(&tris[j], b, a);
            if incircle(pts[a], pts[b], pts[c], pts[d]) == Ordering::Equal && edge(c, d) < (a, b) {
                // a, b, c counter-clockwise and d on the other side of ab.
                tris[i] = [c, d, b];
                tris[j] = [d, c, a];
                flipped = true;
                break;
            }
        }
        if !flipped {
            return;
        }
    }
}

/// The vertex of `t` other than the directed edge `a -> b` it contains.
fn third(t: &[usize; 3], a: usize, b: usize) -> usize {
    *t.iter().find(|&&x| x != a && x != b).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_nng;
    use crate::graph::is_navigable;

    fn space(pts: &[[i64; 2]]) -> MetricSpace {
        MetricSpace::euclidean(2, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    /// Checks orientation, the empty-circle property and that every interior
    /// edge is shared by exactly two triangles.
    fn assert_valid(pts: &[[i64; 2]], t: &Triangulation2D) {
        let mut uses: HashMap<Edge, usize> = HashMap::new();
        for tri in t.triangles() {
            let [a, b, c] = tri.map(|i| pts[i]);
            assert_eq!(orient2d(a, b, c), Ordering::Greater, "{tri:?}");
            for (i, &p) in pts.iter().enumerate() {
                if !tri.contains(&i) {
                    assert_ne!(incircle(a, b, c, p), Ordering::Greater, "{tri:?} contains {i}");
                }
            }
            for k in 0..3 {
                *uses.entry(edge(tri[k], tri[(k + 1) % 3])).or_default() += 1;
            }
        }
        assert!(uses.values().all(|&u| u <= 2));
        let hull = uses.values().filter(|&&u| u == 1).count();
        // Euler: 2n - h - 2 triangles when every point is a vertex.
        let vertices: BTreeSet<usize> = t.triangles().iter().flatten().copied().collect();
        assert_eq!(vertices.len(), pts.len());
        assert_eq!(t.triangles().len(), 2 * pts.len() - hull - 2);
    }

    #[test]
    fn unit_square_takes_smaller_diagonal() {
        let pts = [[0, 0], [1, 0], [1, 1], [0, 1]];
        let t = delaunay_2d(&space(&pts)).unwrap();
        assert_eq!(t.edges().into_iter().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        assert_valid(&pts, &t);
        // Other insertion order, same point set up to relabeling: 0=(0,0) 1=(1,1) 2=(1,0) 3=(0,1)
        let pts = [[0, 0], [1, 1], [1, 0], [0, 1]];
        let t = delaunay_2d(&space(&pts)).unwrap();
        assert!(t.edges().contains(&(0, 1)));
        assert_eq!(t.edges().len(), 5);
    }

    #[test]
    fn single_triangle() {
        let pts = [[0, 0], [4, 0], [1, 3]];
        let t = delaunay_2d(&space(&pts)).unwrap();
        assert_eq!(t.triangles(), &[[0, 1, 2]]);
        assert_eq!(t.edges().len(), 3);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(delaunay_2d(&space(&[[0, 0], [1, 1], [3, 3]])), Err(Error::Collinear)));
        assert!(matches!(delaunay_2d(&space(&[[0, 0], [1, 1]])), Err(Error::TooFewPoints { .. })));
        let line = MetricSpace::line(&[0, 1, 2]).unwrap();
        assert!(matches!(delaunay_2d(&line), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn collinear_prefix_and_grid() {
        let pts = [[0, 0], [2, 0], [1, 0], [3, 0], [1, 5], [-1, 0]];
        let t = delaunay_2d(&space(&pts)).unwrap();
        assert_valid(&pts, &t);
        let grid: Vec<[i64; 2]> = (0..5).flat_map(|x| (0..4).map(move |y| [x, y])).collect();
        let t = delaunay_2d(&space(&grid)).unwrap();
        assert_valid(&grid, &t);
        assert_eq!(t.edges().len(), 3 * grid.len() - 3 - 14);
    }

    #[test]
    fn contains_nng_and_is_navigable() {
        let pts = [[0, 0], [10, 1], [3, 7], [8, 8], [-4, 5], [6, -3], [1, 2], [12, 6]];
        let s = space(&pts);
        let t = delaunay_2d(&s).unwrap();
        assert_valid(&pts, &t);
        let edges = t.edges();
        assert!(edges.len() <= 3 * pts.len() - 6);
        for e in build_nng(&s, false).unwrap().edges() {
            assert!(edges.contains(e));
        }
        assert!(is_navigable(&t.to_network(), &s));
    }

    #[test]
    fn huge_coordinates() {
        let b = 1i64 << 52;
        let pts = [[-b, -b], [b, -b], [b, b], [-b, b], [0, 1], [3, -b + 7]];
        let t = delaunay_2d(&space(&pts)).unwrap();
        assert_valid(&pts, &t);
    }
}
