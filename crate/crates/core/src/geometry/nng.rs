use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Network, Variant};
use crate::metric::MetricSpace;

/// `N(u)` for every point: all points at minimum distance from `u`.
pub fn nearest_neighbor_sets(space: &MetricSpace) -> Result<Vec<Vec<usize>>> {
    let n = space.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    Ok((0..n)
        .map(|u| {
            let best = (0..n).filter(|&v| v != u).map(|v| space.key(u, v)).min().unwrap();
            (0..n).filter(|&v| v != u && space.key(u, v) == best).collect()
        })
        .collect())
}

/// Nearest neighbour graph with the components of its undirected version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NngGraph {
    directed: bool,
    nearest: Vec<Vec<usize>>,
    edges: BTreeSet<Edge>,
    component: Vec<usize>,
    components: Vec<Vec<usize>>,
}

pub fn build_nng(space: &MetricSpace, directed: bool) -> Result<NngGraph> {
    let nearest = nearest_neighbor_sets(space)?;
    let n = nearest.len();
    let edges: BTreeSet<Edge> = nearest
        .iter()
        .enumerate()
        .flat_map(|(u, vs)| vs.iter().map(move |&v| edge(u, v)))
        .collect();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut component = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        component[s] = id;
        let mut i = 0;
        while i < members.len() {
            for &y in &adj[members[i]] {
                if component[y] == usize::MAX {
                    component[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    Ok(NngGraph {
        directed,
        nearest,
        edges,
        component,
        components,
    })
}

impl NngGraph {
    pub fn len(&self) -> usize {
        self.nearest.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nearest.is_empty()
    }

    /// `N(u)`
    pub fn nearest(&self, u: usize) -> &[usize] {
        &self.nearest[u]
    }

    /// Undirected NNG edges in sorted order.
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Directed arcs `(u, v)` with `v ∈ N(u)`.
    pub fn arcs(&self) -> Vec<Edge> {
        self.nearest
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&edge(a, b))
    }

    /// Endpoints of undirected NNG edges at `u`.
    pub fn adjacent(&self, u: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| v != u && self.contains(u, v)).collect()
    }

    pub fn component_of(&self, u: usize) -> usize {
        self.component[u]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The arcs as a directed network, or the undirected edges, depending on
    /// how the graph was built.
    pub fn to_network(&self) -> Network {
        if self.directed {
            Network::from_edges(Variant::Directed, self.len(), self.arcs()).expect("valid arcs")
        } else {
            Network::from_edges(Variant::Undirected, self.len(), self.edges.iter().copied())
                .expect("valid edges")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_nearest_sets() {
        let space = MetricSpace::line(&[0, 1, 3]).unwrap();
        assert_eq!(nearest_neighbor_sets(&space).unwrap(), vec![vec![1], vec![0], vec![1]]);
        let g = build_nng(&space, false).unwrap();
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.arcs(), vec![(0, 1), (1, 0), (2, 1)]);
    }

    #[test]
    fn square_ties() {
        let space =
            MetricSpace::euclidean(2, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let sets = nearest_neighbor_sets(&space).unwrap();
        assert_eq!(sets, vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]);
    }

    #[test]
    fn far_pairs_give_two_components() {
        let space = MetricSpace::line(&[0, 1, 100, 101]).unwrap();
        let g = build_nng(&space, true).unwrap();
        assert_eq!(g.components(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(g.component_of(3), 1);
        assert_eq!(g.to_network().edge_count(), 4);
    }

    #[test]
    fn needs_two_points() {
        let space = MetricSpace::line(&[0]).unwrap();
        assert!(matches!(nearest_neighbor_sets(&space), Err(Error::TooFewPoints { .. })));
    }
}
