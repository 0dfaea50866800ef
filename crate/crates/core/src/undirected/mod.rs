//! The undirected game: redundant-edge filtering, critical incident sets,
//! critical best responses, Hakimi orientation, and the approximate
//! equilibrium construction built from them.

mod critical;
mod filter;
mod hakimi;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use critical::{
    analyze, classify_edges, critical_best_response, critical_incident_set, AgentAnalysis,
    CriticalAnalysis, EdgeClass,
};
pub use filter::filter_redundant_edges;
pub use hakimi::{hakimi_orient, HakimiOutcome, Orientation};

use crate::error::{Error, Result};
use crate::geometry::{delaunay_2d, kissing_number};
use crate::graph::{edge, is_navigable, Edge, Network, StrategyProfile};
use crate::metric::MetricSpace;
use crate::routing::{routing_sets, SearchBudget, SearchMode};
use filter::network_of;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    GeneralMetric,
    Euclidean,
    /// Two-dimensional Euclidean: adds the Delaunay shortcut and two extra
    /// units of orientation budget per agent.
    #[serde(rename = "planar_2d")]
    Planar2D,
}

impl Mode {
    /// Planar2D for 2D points, Euclidean for other dimensions, otherwise general.
    pub fn for_space(space: &MetricSpace) -> Mode {
        match space.dimension() {
            Some(2) => Mode::Planar2D,
            Some(_) => Mode::Euclidean,
            None => Mode::GeneralMetric,
        }
    }

    fn slack(self) -> usize {
        match self {
            Mode::Planar2D => 2,
            _ => 0,
        }
    }
}

/// One change of the working edge set before the main loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupStep {
    pub step: String,
    pub edges: usize,
    pub navigable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentSummary {
    pub agent: usize,
    pub critical: usize,
    pub best: usize,
    pub alpha: usize,
    pub single_minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    /// Edges critical for neither endpoint were filtered out.
    FilteredSlack { removed: Vec<Edge> },
    /// `S_u^{s-}` was replaced by the cheaper `A_u`.
    ReplacedSingles { agent: usize, removed: Vec<Edge>, added: Vec<Edge> },
    /// No orientation exists; the unassigned edges were traded for the
    /// `A` sets, over all agents or over a violating vertex set.
    TradedUnassigned { removed: Vec<Edge>, added: Vec<Edge>, scope: Vec<usize> },
    Oriented,
    /// No rule could shrink the edge set; ownership was assigned without
    /// the orientation bounds.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub edges: usize,
    pub navigable: bool,
    pub agents: Vec<AgentSummary>,
    /// `δ(u)` per agent when an orientation was attempted.
    pub delta: Option<Vec<usize>>,
    pub unassigned: Option<usize>,
    pub flow_feasible: Option<bool>,
    pub action: Action,
    pub mode: SearchMode,
    /// Bought endpoints of critical best responses that were not greedy
    /// connected themselves.
    pub unconnected_endpoints: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Oriented,
    Stuck,
    LoopBoundExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmTrace {
    pub mode: Mode,
    pub delta_rule: String,
    pub iteration_bound: usize,
    pub setup: Vec<SetupStep>,
    pub iterations: Vec<IterationRecord>,
    pub outcome: Outcome,
}

impl AlgorithmTrace {
    /// Every working network, before and during the loop, was navigable.
    pub fn all_navigable(&self) -> bool {
        self.setup.iter().all(|s| s.navigable) && self.iterations.iter().all(|r| r.navigable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximateNe {
    /// Final network with ownership.
    pub network: Network,
    pub profile: StrategyProfile,
    pub trace: AlgorithmTrace,
    /// Exact searches throughout, a feasible orientation at the end, and a
    /// known kissing number in Euclidean mode.
    pub certified: bool,
}

/// `(K − 1)·n − 1`, with `K = K(D)` for Euclidean `D ≤ 4` and `K = n − 1`
/// otherwise; at least 1.
pub fn iteration_bound(space: &MetricSpace) -> usize {
    let n = space.len();
    let k = space
        .dimension()
        .and_then(kissing_number)
        .unwrap_or(n.saturating_sub(1));
    (k.saturating_sub(1) * n).saturating_sub(1).max(1)
}

/// Builds a navigable network with ownership that approximates an
/// equilibrium of the undirected game.
///
/// Start from the union of canonical minimum greedy routing sets and filter
/// redundant edges (in `Planar2D` mode, switch to the Delaunay graph if it is
/// smaller). Then repeat: drop slack edges; let an agent trade its single
/// edges for its `A_u` when that is cheaper; otherwise orient the remaining
/// unassigned double edges with in-degree bounds `α(u) − |S_u^{s-}|` (plus 2
/// in `Planar2D` mode). If no orientation exists, the unassigned edges are
/// traded for the `A` sets and the loop restarts.
pub fn compute_approximate_ne(space: &MetricSpace, mode: Mode, budget: SearchBudget) -> Result<ApproximateNe> {
    let n = space.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    match (mode, space.dimension()) {
        (Mode::Planar2D, Some(2)) | (Mode::Euclidean, Some(_)) | (Mode::GeneralMetric, _) => {}
        (Mode::Planar2D, Some(d)) => return Err(Error::UnsupportedDimension { expected: 2, found: d }),
        (_, None) => return Err(Error::NotEuclidean),
    }
    let mut certified = match (mode, space.dimension()) {
        (Mode::GeneralMetric, _) => true,
        (_, d) => d.and_then(kissing_number).is_some(),
    };
    let mut setup = Vec::new();
    let record = |setup: &mut Vec<SetupStep>, step: &str, g: &Network| {
        setup.push(SetupStep {
            step: step.into(),
            edges: g.edge_count(),
            navigable: is_navigable(g, space),
        });
    };

    let sets = routing_sets(space, budget)?;
    certified &= sets.iter().all(|s| s.mode == SearchMode::Exact);
    let union: BTreeSet<Edge> = sets
        .iter()
        .flat_map(|s| s.endpoints.iter().map(move |&v| edge(s.agent, v)))
        .collect();
    let mut g = network_of(n, &union);
    record(&mut setup, "routing_set_union", &g);
    g = filter_redundant_edges(&g, space)?;
    record(&mut setup, "filter", &g);
    if mode == Mode::Planar2D {
        // Degenerate inputs have no triangulation; the union stands.
        let dt = match delaunay_2d(space) {
            Ok(dt) => dt.to_network(),
            Err(Error::TooFewPoints { .. } | Error::Collinear) => g.clone(),
            Err(e) => return Err(e),
        };
        if dt.edge_count() < g.edge_count() {
            record(&mut setup, "delaunay", &dt);
            g = filter_redundant_edges(&dt, space)?;
            record(&mut setup, "filter", &g);
        }
    }

    let bound = iteration_bound(space);
    let mut iterations = Vec::new();
    let delta_rule = match mode {
        Mode::Planar2D => "alpha - |S_s-| + 2",
        _ => "alpha - |S_s-|",
    };
    let mut edges: BTreeSet<Edge> = g.edges().into_iter().collect();
    let mut iteration = 0;
    loop {
        iteration += 1;
        let g = network_of(n, &edges);
        let navigable = is_navigable(&g, space);
        if !navigable {
            return Err(Error::Internal(format!("working network lost navigability in iteration {iteration}")));
        }
        if iteration > bound {
            let (network, profile) = fallback_ownership(&g, &BTreeMap::new());
            return Ok(ApproximateNe {
                network,
                profile,
                trace: AlgorithmTrace {
                    mode,
                    delta_rule: delta_rule.into(),
                    iteration_bound: bound,
                    setup,
                    iterations,
                    outcome: Outcome::LoopBoundExceeded,
                },
                certified: false,
            });
        }
        let analysis = analyze(&g, space, budget)?;
        let search_mode = analysis.mode();
        certified &= search_mode == SearchMode::Exact;
        let mut rec = IterationRecord {
            iteration,
            edges: edges.len(),
            navigable,
            agents: analysis
                .agents
                .iter()
                .map(|a| AgentSummary {
                    agent: a.agent,
                    critical: a.critical.len(),
                    best: a.best.len(),
                    alpha: a.alpha(),
                    single_minus: a.single_minus.len(),
                })
                .collect(),
            delta: None,
            unassigned: None,
            flow_feasible: None,
            action: Action::Stuck,
            mode: search_mode,
            unconnected_endpoints: analysis.agents.iter().map(|a| a.unconnected_endpoints).sum(),
        };

        let slack = analysis.slack_edges();
        if !slack.is_empty() {
            let filtered = filter_redundant_edges(&g, space)?;
            let removed: Vec<Edge> = edges.iter().filter(|&&(a, b)| !filtered.has_edge(a, b)).copied().collect();
            rec.action = Action::FilteredSlack { removed };
            iterations.push(rec);
            edges = filtered.edges().into_iter().collect();
            continue;
        }

        if let Some(a) = analysis.agents.iter().find(|a| a.alpha() < a.single_minus.len()) {
            let u = a.agent;
            let removed: Vec<Edge> = a.single_minus.iter().map(|&v| edge(u, v)).collect();
            let added: Vec<Edge> = a.added.iter().map(|&v| edge(u, v)).collect();
            for e in &removed {
                edges.remove(e);
            }
            edges.extend(added.iter().copied());
            rec.action = Action::ReplacedSingles { agent: u, removed, added };
            iterations.push(rec);
            continue;
        }

        // Edges claimed by an agent: S^best ∩ H and S^{s-}. A double edge
        // claimed by both endpoints goes to the lower index.
        let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
        for a in &analysis.agents {
            for &v in a.kept_critical().iter().chain(&a.single_minus) {
                owner.entry(edge(a.agent, v)).or_insert(a.agent);
            }
        }
        let unassigned: Vec<Edge> = edges.iter().filter(|e| !owner.contains_key(e)).copied().collect();
        let delta: Vec<usize> = analysis
            .agents
            .iter()
            .map(|a| a.alpha() - a.single_minus.len() + mode.slack())
            .collect();
        rec.delta = Some(delta.clone());
        rec.unassigned = Some(unassigned.len());
        match hakimi_orient(n, &unassigned, &delta)? {
            HakimiOutcome::Feasible(o) => {
                rec.flow_feasible = Some(true);
                rec.action = Action::Oriented;
                iterations.push(rec);
                owner.extend(o.owner);
                let mut network = g;
                network.set_owners(owner)?;
                let profile = network.to_profile()?;
                return Ok(ApproximateNe {
                    network,
                    profile,
                    trace: AlgorithmTrace {
                        mode,
                        delta_rule: delta_rule.into(),
                        iteration_bound: bound,
                        setup,
                        iterations,
                        outcome: Outcome::Oriented,
                    },
                    certified,
                });
            }
            HakimiOutcome::Infeasible { violating, .. } => {
                rec.flow_feasible = Some(false);
                if let Some((next, action)) = trade_unassigned(space, &edges, &unassigned, &analysis, &violating) {
                    rec.action = action;
                    iterations.push(rec);
                    edges = next;
                    continue;
                }
                iterations.push(rec);
                let (network, profile) = fallback_ownership(&g, &owner);
                return Ok(ApproximateNe {
                    network,
                    profile,
                    trace: AlgorithmTrace {
                        mode,
                        delta_rule: delta_rule.into(),
                        iteration_bound: bound,
                        setup,
                        iterations,
                        outcome: Outcome::Stuck,
                    },
                    certified: false,
                });
            }
        }
    }
}

/// Tries, in order: replacing all unassigned edges by all `A` sets; the same
/// restricted to the violating set `U`; and additionally dropping the single
/// edges of `U`. The first candidate that is smaller and navigable wins.
fn trade_unassigned(
    space: &MetricSpace,
    edges: &BTreeSet<Edge>,
    unassigned: &[Edge],
    analysis: &CriticalAnalysis,
    violating: &[usize],
) -> Option<(BTreeSet<Edge>, Action)> {
    let n = space.len();
    let in_u: BTreeSet<usize> = violating.iter().copied().collect();
    let all: Vec<usize> = (0..n).collect();
    let inner: Vec<Edge> = unassigned
        .iter()
        .filter(|(a, b)| in_u.contains(a) && in_u.contains(b))
        .copied()
        .collect();
    let singles: Vec<Edge> = analysis
        .agents
        .iter()
        .filter(|a| in_u.contains(&a.agent))
        .flat_map(|a| a.single_minus.iter().map(move |&v| edge(a.agent, v)))
        .collect();
    let mut inner_and_singles = inner.clone();
    inner_and_singles.extend(singles);
    let options: [(Vec<Edge>, &[usize]); 3] = [
        (unassigned.to_vec(), &all),
        (inner, violating),
        (inner_and_singles, violating),
    ];
    for (drop, scope) in options {
        let added: BTreeSet<Edge> = scope
            .iter()
            .flat_map(|&u| analysis.agents[u].added.iter().map(move |&v| edge(u, v)))
            .collect();
        let mut next = edges.clone();
        for e in &drop {
            next.remove(e);
        }
        next.extend(added.iter().copied());
        if next.len() < edges.len() && is_navigable(&network_of(n, &next), space) {
            let removed = drop.into_iter().filter(|e| !next.contains(e)).collect();
            let added = added.into_iter().filter(|e| !edges.contains(e)).collect();
            return Some((
                next,
                Action::TradedUnassigned {
                    removed,
                    added,
                    scope: scope.to_vec(),
                },
            ));
        }
    }
    None
}

/// Keeps the given owners and gives every other edge to the endpoint that
/// owns fewer edges so far, ties to the lower index.
fn fallback_ownership(g: &Network, fixed: &BTreeMap<Edge, usize>) -> (Network, StrategyProfile) {
    let mut owner = fixed.clone();
    let mut load = vec![0usize; g.len()];
    for &o in owner.values() {
        load[o] += 1;
    }
    for e in g.edges() {
        if owner.contains_key(&e) {
            continue;
        }
        let o = if load[e.1] < load[e.0] { e.1 } else { e.0 };
        load[o] += 1;
        owner.insert(e, o);
    }
    let mut network = g.clone();
    network.set_owners(owner).expect("every edge owned by an endpoint");
    let profile = network.to_profile().expect("ownership present");
    (network, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Variant;

    #[test]
    fn line_gives_path() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        let r = compute_approximate_ne(&s, Mode::Euclidean, SearchBudget::default()).unwrap();
        assert_eq!(r.network.edges(), vec![(0, 1), (1, 2)]);
        assert!(r.certified);
        assert_eq!(r.trace.outcome, Outcome::Oriented);
        assert!(r.trace.all_navigable());
        assert_eq!(r.profile.variant(), Variant::Undirected);
        assert_eq!(r.profile.total_bought(), 2);
    }

    #[test]
    fn unit_square_gives_four_cycle() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let r = compute_approximate_ne(&s, Mode::Planar2D, SearchBudget::default()).unwrap();
        assert_eq!(r.network.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(r.certified);
    }

    #[test]
    fn mode_checks() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        assert!(compute_approximate_ne(&s, Mode::Planar2D, SearchBudget::default()).is_err());
        assert_eq!(Mode::for_space(&s), Mode::Euclidean);
        assert_eq!(iteration_bound(&s), 2);
    }
}
