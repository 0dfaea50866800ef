//! Greedy routing sets, the degrees φ, φ⁺ and φ′, and best responses.
//!
//! Every question here reduces to set cover. Let `R_t(u)` be the nodes that
//! are strictly closer to `t` than `u` and greedily reach `t`. Greedy paths
//! from such nodes never come back through `u`, so `R_t(u)` does not depend
//! on `u`'s own edges, and `u` is greedy connected exactly when its
//! neighbourhood meets `R_t(u)` for every target `t`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::cover::min_cover;
use crate::error::{Error, Result};
use crate::geometry::{kissing_number, nearest_neighbor_sets, peeling_cover, NngGraph};
use crate::graph::{induce_network, Cost, Network, ReachTable, StrategyProfile, Variant};
use crate::metric::MetricSpace;

/// Limits for exact searches. A search that hits the limit returns its best
/// solution so far marked [`SearchMode::Heuristic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Branch-and-bound nodes per set-cover solve.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 2_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

impl SearchMode {
    fn from_exact(exact: bool) -> Self {
        if exact {
            SearchMode::Exact
        } else {
            SearchMode::Heuristic
        }
    }

    pub fn and(self, other: SearchMode) -> SearchMode {
        if self == SearchMode::Exact && other == SearchMode::Exact {
            SearchMode::Exact
        } else {
            SearchMode::Heuristic
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyRoutingSet {
    pub agent: usize,
    /// Ascending endpoint indices.
    pub endpoints: Vec<usize>,
    /// Endpoints joined to the agent by an NNG edge; this is φ⁺ for the
    /// canonical set.
    pub nng_overlap: usize,
    pub mode: SearchMode,
}

impl GreedyRoutingSet {
    pub fn size(&self) -> usize {
        self.endpoints.len()
    }
}

/// Targets `w ≠ u` with `d(v,w) < d(u,w)`; always contains `v`.
pub fn coverage(space: &MetricSpace, u: usize, v: usize) -> BitSet {
    let n = space.len();
    BitSet::from_iter(n, (0..n).filter(|&w| w != u && space.closer(v, u, w)))
}

pub fn is_greedy_routing_set(space: &MetricSpace, u: usize, endpoints: &[usize]) -> Result<bool> {
    space.check_index(u)?;
    for &v in endpoints {
        space.check_index(v)?;
        if v == u {
            return Err(Error::InvalidParameter(format!("agent {u} cannot be its own endpoint")));
        }
    }
    Ok((0..space.len())
        .filter(|&w| w != u)
        .all(|w| endpoints.iter().any(|&v| space.closer(v, u, w))))
}

/// Points joined to `u` by an undirected NNG edge.
fn nng_adjacent(nearest: &[Vec<usize>], u: usize) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = nearest[u].iter().copied().collect();
    for (v, nv) in nearest.iter().enumerate() {
        if nv.contains(&u) {
            s.insert(v);
        }
    }
    s
}

/// The canonical `Φ(u)`: a minimum greedy routing set with the most NNG
/// endpoints, then the lexicographically smallest.
pub fn minimum_greedy_routing_set(space: &MetricSpace, u: usize) -> Result<GreedyRoutingSet> {
    let nearest = nearest_neighbor_sets(space)?;
    minimum_greedy_routing_set_with(space, &nearest, u, SearchBudget::default())
}

/// As [`minimum_greedy_routing_set`] with precomputed `N(·)` and a budget.
pub fn minimum_greedy_routing_set_with(
    space: &MetricSpace,
    nearest: &[Vec<usize>],
    u: usize,
    budget: SearchBudget,
) -> Result<GreedyRoutingSet> {
    space.check_index(u)?;
    let n = space.len();
    let adjacent = nng_adjacent(nearest, u);
    let candidates: Vec<usize> = (0..n).filter(|&v| v != u).collect();
    let sets: Vec<BitSet> = candidates.iter().map(|&v| coverage(space, u, v)).collect();
    let preferred: Vec<bool> = candidates.iter().map(|v| adjacent.contains(v)).collect();
    let mut universe = BitSet::full(n);
    universe.remove(u);
    let peel = peeling_cover(space, u)?;
    let hint: Vec<usize> = peel.iter().map(|&v| if v < u { v } else { v - 1 }).collect();
    let sol = min_cover(&universe, &sets, &preferred, budget.max_nodes, Some(&hint))
        .expect("all other points cover every target");
    Ok(GreedyRoutingSet {
        agent: u,
        endpoints: sol.chosen.iter().map(|&i| candidates[i]).collect(),
        nng_overlap: sol.preferred,
        mode: SearchMode::from_exact(sol.exact),
    })
}

/// Canonical `Φ(u)` for every agent.
pub fn routing_sets(space: &MetricSpace, budget: SearchBudget) -> Result<Vec<GreedyRoutingSet>> {
    let nearest = nearest_neighbor_sets(space)?;
    (0..space.len())
        .map(|u| minimum_greedy_routing_set_with(space, &nearest, u, budget))
        .collect()
}

/// Upper bound on `φ(u)`: `K(D)` for Euclidean `D ≤ 4`, else `n − 1`.
pub fn degree_cap(space: &MetricSpace) -> usize {
    space
        .dimension()
        .and_then(kissing_number)
        .unwrap_or(space.len().saturating_sub(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiPrime {
    pub agent: usize,
    pub value: usize,
    /// A minimum set of non-NNG endpoints covering the remaining targets.
    pub endpoints: Vec<usize>,
    pub mode: SearchMode,
}

/// `φ′(u)`: the fewest endpoints outside the NNG neighbourhood of `u` that
/// cover, in one strictly closer hop, every target not already covered by
/// an NNG neighbour of `u`.
///
/// Every navigable undirected network contains all NNG edges, so in any
/// such network `u` has at least `φ′(u)` incident non-NNG edges.
pub fn phi_prime(space: &MetricSpace, nng: &NngGraph, u: usize, budget: SearchBudget) -> Result<PhiPrime> {
    space.check_index(u)?;
    if nng.len() != space.len() {
        return Err(Error::InvalidParameter("NNG built on a different space".into()));
    }
    let n = space.len();
    let adjacent = nng.adjacent(u);
    let mut remaining = BitSet::full(n);
    remaining.remove(u);
    for &v in &adjacent {
        remaining.difference_with(&coverage(space, u, v));
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| v != u && !adjacent.contains(&v)).collect();
    let sets: Vec<BitSet> = candidates.iter().map(|&v| coverage(space, u, v)).collect();
    let sol = min_cover(&remaining, &sets, &vec![false; sets.len()], budget.max_nodes, None)
        .expect("non-neighbours cover themselves");
    let endpoints: Vec<usize> = sol.chosen.iter().map(|&i| candidates[i]).collect();
    Ok(PhiPrime {
        agent: u,
        value: endpoints.len(),
        endpoints,
        mode: SearchMode::from_exact(sol.exact),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponseResult {
    pub agent: usize,
    /// Endpoints to buy edges to.
    pub strategy: BTreeSet<usize>,
    pub cost: Cost,
    pub mode: SearchMode,
    /// Bought endpoints that are themselves not greedy connected; for these
    /// the one-hop shortcut through a connected neighbour did not apply.
    pub unconnected_endpoints: usize,
}

impl BestResponseResult {
    pub fn certified(&self) -> bool {
        self.mode == SearchMode::Exact
    }
}

/// Minimum set of endpoints making `u` greedy connected, given neighbours
/// `forced` that `u` has regardless of its choice. `reach` must be computed
/// on a network that differs from the evaluated one only in edges at `u`.
/// Ties go to more endpoints in `preferred`, then lexicographic order.
pub fn best_response_in(
    space: &MetricSpace,
    reach: &ReachTable,
    u: usize,
    forced: &BTreeSet<usize>,
    preferred: &BTreeSet<usize>,
    budget: SearchBudget,
) -> BestResponseResult {
    let n = space.len();
    let usable_toward = |v: usize, t: usize| space.closer(v, u, t) && reach.reaches(v, t);
    let mut universe = BitSet::new(n);
    for t in (0..n).filter(|&t| t != u) {
        if !forced.iter().any(|&v| usable_toward(v, t)) {
            universe.insert(t);
        }
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| v != u && !forced.contains(&v)).collect();
    let sets: Vec<BitSet> = candidates
        .iter()
        .map(|&v| BitSet::from_iter(n, universe.iter().filter(|&t| usable_toward(v, t))))
        .collect();
    let pref: Vec<bool> = candidates.iter().map(|v| preferred.contains(v)).collect();
    // Target t itself is always usable toward t, so a cover exists.
    let sol = min_cover(&universe, &sets, &pref, budget.max_nodes, None).expect("targets cover themselves");
    let strategy: BTreeSet<usize> = sol.chosen.iter().map(|&i| candidates[i]).collect();
    let unconnected_endpoints = strategy.iter().filter(|&&v| !reach.is_connected(v)).count();
    BestResponseResult {
        agent: u,
        cost: Cost::Finite(strategy.len()),
        strategy,
        mode: SearchMode::from_exact(sol.exact),
        unconnected_endpoints,
    }
}

/// Neighbours `u` keeps whatever it buys: none when directed, the far
/// endpoints of edges bought by others when undirected.
pub fn forced_neighbors(profile: &StrategyProfile, u: usize) -> BTreeSet<usize> {
    match profile.variant() {
        Variant::Directed => BTreeSet::new(),
        Variant::Undirected => (0..profile.len())
            .filter(|&v| v != u && profile.strategy(v).contains(&u))
            .collect(),
    }
}

/// `u`'s best response against the other strategies in `profile`. Ties go
/// to NNG endpoints, then lexicographic order.
pub fn best_response(
    space: &MetricSpace,
    profile: &StrategyProfile,
    u: usize,
    budget: SearchBudget,
) -> Result<BestResponseResult> {
    space.check_index(u)?;
    if profile.len() != space.len() {
        return Err(Error::InvalidProfile("profile and space sizes differ".into()));
    }
    let nearest = nearest_neighbor_sets(space)?;
    let network: Network = induce_network(profile);
    let reach = ReachTable::new(&network, space);
    let forced = forced_neighbors(profile, u);
    Ok(best_response_in(space, &reach, u, &forced, &nng_adjacent(&nearest, u), budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_nng;
    use crate::graph::social_cost;

    fn line013() -> MetricSpace {
        MetricSpace::line(&[0, 1, 3]).unwrap()
    }

    #[test]
    fn routing_set_checks() {
        let s = line013();
        assert!(!is_greedy_routing_set(&s, 1, &[0]).unwrap());
        assert!(is_greedy_routing_set(&s, 1, &[0, 2]).unwrap());
        assert!(is_greedy_routing_set(&s, 0, &[1, 2]).unwrap());
        assert!(is_greedy_routing_set(&s, 0, &[0]).is_err());
    }

    #[test]
    fn line_phi() {
        let s = line013();
        let phi: Vec<usize> = (0..3).map(|u| minimum_greedy_routing_set(&s, u).unwrap().size()).collect();
        assert_eq!(phi, vec![1, 2, 1]);
        let g = minimum_greedy_routing_set(&s, 2).unwrap();
        assert_eq!(g.endpoints, vec![1]);
        assert_eq!(g.nng_overlap, 1);
        assert_eq!(g.mode, SearchMode::Exact);
    }

    #[test]
    fn square_phi_is_two() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        for u in 0..4 {
            let g = minimum_greedy_routing_set(&s, u).unwrap();
            assert_eq!(g.size(), 2);
            // Both axis neighbours are NNG neighbours.
            assert_eq!(g.nng_overlap, 2);
        }
    }

    #[test]
    fn all_others_is_a_routing_set() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![7, 1], vec![3, 9], vec![-2, 4]]).unwrap();
        for u in 0..4 {
            let others: Vec<usize> = (0..4).filter(|&v| v != u).collect();
            assert!(is_greedy_routing_set(&s, u, &others).unwrap());
        }
    }

    #[test]
    fn phi_prime_examples() {
        let s = line013();
        let nng = build_nng(&s, false).unwrap();
        for u in 0..3 {
            assert_eq!(phi_prime(&s, &nng, u, SearchBudget::default()).unwrap().value, 0);
        }
        // Two far clusters: each cluster needs one agent with an outside edge.
        let s = MetricSpace::line(&[0, 1, 100, 101]).unwrap();
        let nng = build_nng(&s, false).unwrap();
        let v: Vec<usize> = (0..4)
            .map(|u| phi_prime(&s, &nng, u, SearchBudget::default()).unwrap().value)
            .collect();
        assert_eq!(v, vec![0, 1, 1, 0]);
    }

    #[test]
    fn directed_best_response_with_connected_others() {
        let s = line013();
        let p = StrategyProfile::new(Variant::Directed, vec![vec![1, 2], vec![0, 2], vec![1]]).unwrap();
        let br = best_response(&s, &p, 0, SearchBudget::default()).unwrap();
        assert_eq!(br.strategy, BTreeSet::from([1]));
        assert_eq!(br.cost, Cost::Finite(1));
        assert!(br.certified());
    }

    #[test]
    fn undirected_best_response_can_be_empty() {
        let s = line013();
        let p = StrategyProfile::new(Variant::Undirected, vec![vec![], vec![0, 2], vec![]]).unwrap();
        let br = best_response(&s, &p, 0, SearchBudget::default()).unwrap();
        assert!(br.strategy.is_empty());
        let br = best_response(&s, &p, 1, SearchBudget::default()).unwrap();
        assert_eq!(br.strategy.len(), 2);
    }

    #[test]
    fn best_response_connects_through_unconnected_endpoint() {
        // Agent 2 alone has no edges; 0 -> 1 -> nothing. Agent 0's best response
        // must reach 2 directly since nobody closer reaches it.
        let s = line013();
        let p = StrategyProfile::new(Variant::Directed, vec![vec![], vec![0], vec![]]).unwrap();
        let br = best_response(&s, &p, 0, SearchBudget::default()).unwrap();
        assert_eq!(br.strategy, BTreeSet::from([1, 2]));
        let mut q = p.clone();
        q.set_strategy(0, br.strategy.clone()).unwrap();
        assert!(social_cost(&q, &s).unwrap().per_agent[0].is_finite());
    }
}
