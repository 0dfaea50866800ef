use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Network, ReachTable, Variant};
use crate::metric::MetricSpace;
use crate::routing::{best_response_in, BestResponseResult, SearchBudget, SearchMode};

/// Per-target lists of `u`'s neighbours that are strictly closer to the
/// target and reach it. These are independent of `u`'s own edges.
fn usable_neighbors(network: &Network, space: &MetricSpace, reach: &ReachTable, u: usize) -> Vec<Vec<usize>> {
    (0..network.len())
        .map(|t| {
            if t == u {
                return Vec::new();
            }
            network
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| space.closer(v, u, t) && reach.reaches(v, t))
                .collect()
        })
        .collect()
}

fn critical_with(network: &Network, space: &MetricSpace, reach: &ReachTable, u: usize) -> Result<BTreeSet<usize>> {
    let usable = usable_neighbors(network, space, reach, u);
    let mut out = BTreeSet::new();
    for (t, vs) in usable.iter().enumerate() {
        if t == u {
            continue;
        }
        match vs.as_slice() {
            [] => return Err(Error::NotGreedyConnected(u)),
            [v] => {
                out.insert(*v);
            }
            _ => {}
        }
    }
    Ok(out)
}

fn require_undirected(network: &Network) -> Result<()> {
    if network.variant() == Variant::Undirected {
        Ok(())
    } else {
        Err(Error::InvalidParameter("critical sets are defined for undirected networks".into()))
    }
}

/// `H_u`: the edges at `u` whose individual removal disconnects `u`.
pub fn critical_incident_set(network: &Network, space: &MetricSpace, u: usize) -> Result<BTreeSet<Edge>> {
    require_undirected(network)?;
    space.check_index(u)?;
    let reach = ReachTable::new(network, space);
    Ok(critical_with(network, space, &reach, u)?
        .into_iter()
        .map(|v| edge(u, v))
        .collect())
}

fn critical_best_with(
    network: &Network,
    space: &MetricSpace,
    reach: &ReachTable,
    u: usize,
    critical: &BTreeSet<usize>,
    budget: SearchBudget,
) -> BestResponseResult {
    let forced: BTreeSet<usize> = network.neighbors(u).difference(critical).copied().collect();
    best_response_in(space, reach, u, &forced, critical, budget)
}

/// `S_u^best`: a minimum set of edges making `u` connected again after all of
/// `H_u` is removed, with the most edges of `H_u`, then lexicographically
/// smallest. The remaining edges at `u` stay in place.
pub fn critical_best_response(
    network: &Network,
    space: &MetricSpace,
    u: usize,
    budget: SearchBudget,
) -> Result<BestResponseResult> {
    require_undirected(network)?;
    space.check_index(u)?;
    let reach = ReachTable::new(network, space);
    let critical = critical_with(network, space, &reach, u)?;
    Ok(critical_best_with(network, space, &reach, u, &critical, budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "agent", rename_all = "snake_case")]
pub enum EdgeClass {
    /// Critical for this endpoint only.
    SingleFor(usize),
    Double,
    Slack,
}

/// Classifies every edge by the endpoints it is critical for.
pub fn classify_edges(network: &Network, space: &MetricSpace) -> Result<BTreeMap<Edge, EdgeClass>> {
    require_undirected(network)?;
    let reach = ReachTable::new(network, space);
    let critical: Vec<BTreeSet<usize>> = (0..network.len())
        .map(|u| critical_with(network, space, &reach, u))
        .collect::<Result<_>>()?;
    Ok(classify_with(network, &critical))
}

fn classify_with(network: &Network, critical: &[BTreeSet<usize>]) -> BTreeMap<Edge, EdgeClass> {
    network
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let class = match (critical[a].contains(&b), critical[b].contains(&a)) {
                (true, true) => EdgeClass::Double,
                (true, false) => EdgeClass::SingleFor(a),
                (false, true) => EdgeClass::SingleFor(b),
                (false, false) => EdgeClass::Slack,
            };
            ((a, b), class)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentAnalysis {
    pub agent: usize,
    /// Far endpoints of `H_u`.
    pub critical: BTreeSet<usize>,
    /// Far endpoints of `S_u^best`.
    pub best: BTreeSet<usize>,
    /// `A_u = S_u^best \ H_u`, all of them edges not in the network.
    pub added: BTreeSet<usize>,
    /// `S_u^{s-}`: far endpoints of edges single for `u` and not in `S_u^best`.
    pub single_minus: BTreeSet<usize>,
    pub mode: SearchMode,
    pub unconnected_endpoints: usize,
}

impl AgentAnalysis {
    pub fn alpha(&self) -> usize {
        self.added.len()
    }

    /// `S_u^best ∩ H_u`
    pub fn kept_critical(&self) -> BTreeSet<usize> {
        self.best.intersection(&self.critical).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalAnalysis {
    pub agents: Vec<AgentAnalysis>,
    pub classes: BTreeMap<Edge, EdgeClass>,
}

impl CriticalAnalysis {
    pub fn mode(&self) -> SearchMode {
        self.agents.iter().fold(SearchMode::Exact, |m, a| m.and(a.mode))
    }

    pub fn slack_edges(&self) -> Vec<Edge> {
        self.classes
            .iter()
            .filter(|(_, c)| **c == EdgeClass::Slack)
            .map(|(e, _)| *e)
            .collect()
    }
}

/// `H_u`, `S_u^best`, `α(u)`, `S_u^{s-}` for every agent, and the edge classes.
pub fn analyze(network: &Network, space: &MetricSpace, budget: SearchBudget) -> Result<CriticalAnalysis> {
    require_undirected(network)?;
    let reach = ReachTable::new(network, space);
    let n = network.len();
    let critical: Vec<BTreeSet<usize>> = (0..n)
        .map(|u| critical_with(network, space, &reach, u))
        .collect::<Result<_>>()?;
    let classes = classify_with(network, &critical);
    let agents = (0..n)
        .map(|u| {
            let br = critical_best_with(network, space, &reach, u, &critical[u], budget);
            let added: BTreeSet<usize> = br.strategy.difference(&critical[u]).copied().collect();
            let single_minus = critical[u]
                .iter()
                .copied()
                .filter(|&v| classes[&edge(u, v)] == EdgeClass::SingleFor(u) && !br.strategy.contains(&v))
                .collect();
            AgentAnalysis {
                agent: u,
                critical: critical[u].clone(),
                best: br.strategy,
                added,
                single_minus,
                mode: br.mode,
                unconnected_endpoints: br.unconnected_endpoints,
            }
        })
        .collect();
    Ok(CriticalAnalysis { agents, classes })
}
