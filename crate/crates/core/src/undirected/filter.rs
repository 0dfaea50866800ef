use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{edge, is_navigable, Edge, Network, Variant};
use crate::metric::MetricSpace;

/// `u` still has, for every target, a strictly closer neighbour other than
/// `skip`. In a navigable network this is exactly "the edge `{u, skip}` is
/// not needed by `u`".
pub(crate) fn locally_covered_without(network: &Network, space: &MetricSpace, u: usize, skip: usize) -> bool {
    (0..network.len()).filter(|&t| t != u).all(|t| {
        network
            .neighbors(u)
            .iter()
            .any(|&v| v != skip && space.closer(v, u, t))
    })
}

/// Removes, longest first, every edge whose removal keeps the network
/// navigable. An edge that is needed stays needed when other edges go, so a
/// single pass gives the same result as rescanning after each removal.
pub fn filter_redundant_edges(network: &Network, space: &MetricSpace) -> Result<Network> {
    if network.variant() != Variant::Undirected {
        return Err(Error::InvalidParameter("filtering applies to undirected networks".into()));
    }
    if !is_navigable(network, space) {
        return Err(Error::NotNavigable);
    }
    let mut g = network.clone();
    for (a, b) in by_decreasing_length(space, &g.edges()) {
        if locally_covered_without(&g, space, a, b) && locally_covered_without(&g, space, b, a) {
            g.remove_edge(a, b);
        }
    }
    Ok(g)
}

/// Edges sorted by decreasing exact length, ties by endpoint indices.
pub(crate) fn by_decreasing_length(space: &MetricSpace, edges: &[Edge]) -> Vec<Edge> {
    let mut v = edges.to_vec();
    v.sort_by(|&(a, b), &(c, d)| space.key(c, d).cmp(&space.key(a, b)).then((a, b).cmp(&(c, d))));
    v
}

pub(crate) fn network_of(n: usize, edges: &BTreeSet<Edge>) -> Network {
    Network::from_edges(Variant::Undirected, n, edges.iter().map(|&(a, b)| edge(a, b))).expect("valid edges")
}
