//! Strategy profiles, induced networks, greedy reachability and costs.
//!
//! A node `x` can forward toward `t` over an edge `(x, y)` only when
//! `d(y,t) < d(x,t)`. Since every usable hop strictly decreases the distance to
//! `t`, whether `x` reaches `t` depends only on nodes strictly closer to `t`,
//! which is what makes the one-pass [`ReachTable`] computation possible.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Directed,
    Undirected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Directed => "directed",
            Variant::Undirected => "undirected",
        })
    }
}

/// An arc `(from, to)`, or an undirected edge stored as `(min, max)`.
pub type Edge = (usize, usize);

/// The undirected edge `{a, b}` in canonical orientation.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An undirected edge bought by two agents; the copy of the higher-indexed
/// owner was dropped during canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateEdge {
    pub edge: Edge,
    pub kept_owner: usize,
    pub dropped_owner: usize,
}

/// Per-agent strategies: out-neighbours (directed) or far endpoints of owned
/// edges (undirected).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    variant: Variant,
    strategies: Vec<BTreeSet<usize>>,
}

impl StrategyProfile {
    pub fn empty(variant: Variant, n: usize) -> Self {
        StrategyProfile {
            variant,
            strategies: vec![BTreeSet::new(); n],
        }
    }

    /// Rejects self-edges, out-of-range endpoints and repeated endpoints
    /// within one strategy.
    pub fn new(variant: Variant, strategies: Vec<Vec<usize>>) -> Result<Self> {
        let n = strategies.len();
        let mut sets = Vec::with_capacity(n);
        for (u, s) in strategies.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for v in s {
                if v >= n {
                    return Err(Error::InvalidProfile(format!(
                        "agent {u} buys an edge to {v}, but there are only {n} agents"
                    )));
                }
                if v == u {
                    return Err(Error::InvalidProfile(format!("agent {u} buys a self-edge")));
                }
                if !set.insert(v) {
                    return Err(Error::InvalidProfile(format!(
                        "agent {u} lists endpoint {v} twice"
                    )));
                }
            }
            sets.push(set);
        }
        Ok(StrategyProfile {
            variant,
            strategies: sets,
        })
    }

    pub fn from_sets(variant: Variant, strategies: Vec<BTreeSet<usize>>) -> Result<Self> {
        Self::new(variant, strategies.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    pub fn strategy(&self, u: usize) -> &BTreeSet<usize> {
        &self.strategies[u]
    }

    pub fn strategies(&self) -> &[BTreeSet<usize>] {
        &self.strategies
    }

    /// Replaces the strategy of `u`. Endpoints must be valid and differ from `u`.
    pub fn set_strategy(&mut self, u: usize, s: BTreeSet<usize>) -> Result<()> {
        let n = self.len();
        if u >= n {
            return Err(Error::IndexOutOfRange { index: u, n });
        }
        if let Some(&v) = s.iter().find(|&&v| v >= n || v == u) {
            return Err(Error::InvalidProfile(format!("agent {u} cannot buy an edge to {v}")));
        }
        self.strategies[u] = s;
        Ok(())
    }

    /// Total number of bought edges, duplicates included.
    pub fn total_bought(&self) -> usize {
        self.strategies.iter().map(BTreeSet::len).sum()
    }

    /// Drops duplicate undirected purchases from the higher-indexed owner.
    /// Directed profiles are returned unchanged.
    pub fn canonicalize(&self) -> (StrategyProfile, Vec<DuplicateEdge>) {
        let mut out = self.clone();
        let mut events = Vec::new();
        if self.variant == Variant::Directed {
            return (out, events);
        }
        for u in 0..self.len() {
            for &v in &self.strategies[u] {
                if v < u && self.strategies[v].contains(&u) {
                    out.strategies[u].remove(&v);
                    events.push(DuplicateEdge {
                        edge: edge(u, v),
                        kept_owner: v,
                        dropped_owner: u,
                    });
                }
            }
        }
        (out, events)
    }

    /// FNV-1a hash of the canonical profile.
    pub fn fingerprint(&self) -> u64 {
        let (canon, _) = self.canonicalize();
        let mut h = Fnv::new();
        h.write(self.variant as u64);
        h.write(canon.len() as u64);
        for s in &canon.strategies {
            h.write(s.len() as u64);
            for &v in s {
                h.write(v as u64);
            }
        }
        h.0
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

/// A graph over the agents, optionally annotated with edge ownership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    variant: Variant,
    /// Out-neighbours; symmetric for undirected networks.
    adj: Vec<BTreeSet<usize>>,
    owners: Option<std::collections::BTreeMap<Edge, usize>>,
    duplicates: Vec<DuplicateEdge>,
}

impl Network {
    pub fn new(variant: Variant, n: usize) -> Self {
        Network {
            variant,
            adj: vec![BTreeSet::new(); n],
            owners: None,
            duplicates: Vec::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(variant: Variant, n: usize, edges: I) -> Result<Self> {
        let mut g = Self::new(variant, n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidProfile(format!("self-edge at {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Nodes `y` such that `x` can forward to `y`.
    pub fn neighbors(&self, x: usize) -> &BTreeSet<usize> {
        &self.adj[x]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    /// Adds arc `a -> b`, or edge `{a, b}`. Clears ownership.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        if self.variant == Variant::Undirected {
            self.adj[b].insert(a);
        }
        self.owners = None;
    }

    /// Removes arc `a -> b`, or edge `{a, b}`. Clears ownership.
    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        if self.variant == Variant::Undirected {
            self.adj[b].remove(&a);
        }
        self.owners = None;
    }

    /// Arcs, or canonical undirected edges, in sorted order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (a, s) in self.adj.iter().enumerate() {
            for &b in s {
                if self.variant == Variant::Directed || a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.adj.iter().map(BTreeSet::len).sum();
        match self.variant {
            Variant::Directed => total,
            Variant::Undirected => total / 2,
        }
    }

    pub fn owner(&self, e: Edge) -> Option<usize> {
        self.owners.as_ref().and_then(|o| o.get(&e).copied())
    }

    pub fn owners(&self) -> Option<&std::collections::BTreeMap<Edge, usize>> {
        self.owners.as_ref()
    }

    /// Attaches ownership; every edge must get exactly one owner that is one
    /// of its endpoints (the tail, for arcs).
    pub fn set_owners(&mut self, owners: std::collections::BTreeMap<Edge, usize>) -> Result<()> {
        let edges = self.edges();
        if owners.len() != edges.len() || edges.iter().any(|e| !owners.contains_key(e)) {
            return Err(Error::InvalidProfile(
                "ownership must cover every edge exactly once".into(),
            ));
        }
        for (&(a, b), &o) in &owners {
            let ok = match self.variant {
                Variant::Directed => o == a,
                Variant::Undirected => o == a || o == b,
            };
            if !ok {
                return Err(Error::InvalidProfile(format!(
                    "agent {o} cannot own edge ({a}, {b})"
                )));
            }
        }
        self.owners = Some(owners);
        Ok(())
    }

    /// Duplicate purchases dropped while inducing this network.
    pub fn duplicates(&self) -> &[DuplicateEdge] {
        &self.duplicates
    }

    /// The profile in which each edge is bought by its owner.
    pub fn to_profile(&self) -> Result<StrategyProfile> {
        let owners = self
            .owners
            .as_ref()
            .ok_or_else(|| Error::InvalidProfile("network has no ownership".into()))?;
        let mut p = StrategyProfile::empty(self.variant, self.len());
        for (&(a, b), &o) in owners {
            let other = if o == a { b } else { a };
            p.strategies[o].insert(other);
        }
        Ok(p)
    }
}

/// `E(s)`: the union of all strategies, with ownership.
pub fn induce_network(profile: &StrategyProfile) -> Network {
    let (canon, duplicates) = profile.canonicalize();
    let n = canon.len();
    let mut g = Network::new(profile.variant, n);
    let mut owners = std::collections::BTreeMap::new();
    for (u, s) in canon.strategies.iter().enumerate() {
        for &v in s {
            g.adj[u].insert(v);
            let e = match profile.variant {
                Variant::Directed => (u, v),
                Variant::Undirected => {
                    g.adj[v].insert(u);
                    edge(u, v)
                }
            };
            owners.insert(e, u);
        }
    }
    g.owners = Some(owners);
    g.duplicates = duplicates;
    g
}

/// Nodes that greedily reach `t`, including `t` itself.
pub fn reach_to(network: &Network, space: &MetricSpace, t: usize) -> BitSet {
    let n = network.len();
    let mut reach = BitSet::new(n);
    reach.insert(t);
    for &x in &space.by_distance_to(t)[1..] {
        let x = x as usize;
        let kx = space.key(x, t);
        if network.adj[x]
            .iter()
            .any(|&y| reach.contains(y) && space.key(y, t) < kx)
        {
            reach.insert(x);
        }
    }
    reach
}

/// Greedy reachability toward every target of one network.
#[derive(Debug, Clone)]
pub struct ReachTable {
    /// `reach[t]` holds every node with a greedy path to `t`, and `t`.
    reach: Vec<BitSet>,
}

impl ReachTable {
    pub fn new(network: &Network, space: &MetricSpace) -> Self {
        ReachTable {
            reach: (0..network.len()).map(|t| reach_to(network, space, t)).collect(),
        }
    }

    pub fn reaches(&self, x: usize, t: usize) -> bool {
        self.reach[t].contains(x)
    }

    pub fn to_target(&self, t: usize) -> &BitSet {
        &self.reach[t]
    }

    pub fn is_connected(&self, u: usize) -> bool {
        self.reach.iter().all(|r| r.contains(u))
    }

    pub fn is_navigable(&self) -> bool {
        let n = self.reach.len();
        self.reach.iter().all(|r| r.count() == n)
    }

    /// Targets `u` cannot reach.
    pub fn unreached_from(&self, u: usize) -> Vec<usize> {
        (0..self.reach.len()).filter(|&t| !self.reach[t].contains(u)).collect()
    }
}

/// Agents with a greedy routing path to `t`; `t` itself is excluded.
pub fn greedy_reachable_to(network: &Network, space: &MetricSpace, t: usize) -> Result<BitSet> {
    space.check_index(t)?;
    let mut r = reach_to(network, space, t);
    r.remove(t);
    Ok(r)
}

pub fn is_greedy_connected(network: &Network, space: &MetricSpace, u: usize) -> Result<bool> {
    space.check_index(u)?;
    Ok((0..network.len()).all(|t| reach_to(network, space, t).contains(u)))
}

/// Every node has, for every target, a strictly closer neighbour; by
/// induction on the distance to the target this is equivalent to all pairs
/// being greedy connected.
pub fn is_navigable(network: &Network, space: &MetricSpace) -> bool {
    let n = network.len();
    (0..n).all(|u| {
        (0..n).all(|t| t == u || network.adj[u].iter().any(|&v| space.closer(v, u, t)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyPath {
    pub nodes: Vec<usize>,
}

impl GreedyPath {
    /// Checks edges and strictly decreasing distance to the last node.
    pub fn is_valid(&self, network: &Network, space: &MetricSpace) -> bool {
        let Some(&t) = self.nodes.last() else {
            return false;
        };
        self.nodes
            .windows(2)
            .all(|w| network.has_edge(w[0], w[1]) && space.closer(w[1], w[0], t))
    }
}

/// A witness path from `u` to `t`. Each hop goes to the usable neighbour
/// closest to `t` that still reaches `t`, ties to the lowest index.
pub fn extract_greedy_path(
    network: &Network,
    space: &MetricSpace,
    u: usize,
    t: usize,
) -> Result<Option<GreedyPath>> {
    space.check_index(u)?;
    space.check_index(t)?;
    if u == t {
        return Err(Error::InvalidParameter("path endpoints must differ".into()));
    }
    let reach = reach_to(network, space, t);
    if !reach.contains(u) {
        return Ok(None);
    }
    let mut nodes = vec![u];
    let mut x = u;
    while x != t {
        x = network.adj[x]
            .iter()
            .copied()
            .filter(|&y| reach.contains(y) && space.closer(y, x, t))
            .min_by_key(|&y| (space.key(y, t), y))
            .expect("reachable node has a reaching closer neighbour");
        nodes.push(x);
    }
    Ok(Some(GreedyPath { nodes }))
}

/// Agent cost: edges bought, or infinite when not greedy connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cost {
    Finite(usize),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<usize> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

impl std::ops::Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub per_agent: Vec<Cost>,
    pub social: Cost,
}

fn check_profile(profile: &StrategyProfile, space: &MetricSpace) -> Result<()> {
    if profile.len() != space.len() {
        return Err(Error::InvalidProfile(format!(
            "profile has {} agents, space has {} points",
            profile.len(),
            space.len()
        )));
    }
    Ok(())
}

pub fn agent_cost(profile: &StrategyProfile, space: &MetricSpace, u: usize) -> Result<Cost> {
    check_profile(profile, space)?;
    let g = induce_network(profile);
    Ok(if is_greedy_connected(&g, space, u)? {
        Cost::Finite(profile.strategy(u).len())
    } else {
        Cost::Infinite
    })
}

pub fn social_cost(profile: &StrategyProfile, space: &MetricSpace) -> Result<CostReport> {
    check_profile(profile, space)?;
    let g = induce_network(profile);
    let table = ReachTable::new(&g, space);
    let per_agent: Vec<Cost> = (0..profile.len())
        .map(|u| {
            if table.is_connected(u) {
                Cost::Finite(profile.strategy(u).len())
            } else {
                Cost::Infinite
            }
        })
        .collect();
    let social = per_agent.iter().fold(Cost::Finite(0), |a, &c| a + c);
    Ok(CostReport { per_agent, social })
}
