//! Equilibrium verification, exhaustive social optima, lower bounds and
//! price-of-anarchy reports.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_nng, kissing_number, NngGraph};
use crate::graph::{
    agent_cost, edge, induce_network, Cost, Edge, Network, ReachTable, StrategyProfile, Variant,
};
use crate::metric::MetricSpace;
use crate::routing::{
    best_response, phi_prime, routing_sets, BestResponseResult, SearchBudget, SearchMode,
};
use crate::undirected::{analyze, CriticalAnalysis};

/// A non-negative fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub numer: u64,
    pub denom: u64,
}

impl Fraction {
    pub fn new(numer: u64, denom: u64) -> Self {
        assert!(denom > 0, "zero denominator");
        let g = num_integer::gcd(numer, denom).max(1);
        Fraction {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn integer(v: u64) -> Self {
        Fraction::new(v, 1)
    }

    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.numer as u128 * other.denom as u128).cmp(&(other.numer as u128 * self.denom as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion {
    Exact,
    /// No agent can get below `1/β` of its cost.
    Beta { beta: Fraction },
    /// No agent can get below its cost minus `gamma`.
    Additive { gamma: u64 },
}

impl Criterion {
    /// Whether an agent at cost `current` whose best response costs `best`
    /// satisfies the criterion.
    pub fn accepts(self, current: Cost, best: Cost) -> bool {
        match (current, best) {
            (Cost::Infinite, Cost::Infinite) => true,
            (Cost::Infinite, Cost::Finite(_)) => false,
            (Cost::Finite(_), Cost::Infinite) => true,
            (Cost::Finite(c), Cost::Finite(b)) => match self {
                Criterion::Exact => b >= c,
                Criterion::Beta { beta } => b as u128 * beta.numer as u128 >= c as u128 * beta.denom as u128,
                Criterion::Additive { gamma } => b as u64 + gamma >= c as u64,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Ne,
    BetaNe { beta: Fraction },
    AdditiveNe { gamma: u64 },
    NotStable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentWitness {
    pub agent: usize,
    pub current: Cost,
    pub best: Cost,
    /// The best response, reported when it violates the criterion.
    pub deviation: Option<Vec<usize>>,
    pub stable: bool,
    pub mode: SearchMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub agents: Vec<AgentWitness>,
    /// All best responses were exact.
    pub certified: bool,
}

/// Checks every agent against its best response. In a directed profile where
/// everyone is greedy connected, an agent's best response is its canonical
/// minimum greedy routing set, so no search beyond `φ(u)` is needed.
/// Every reported deviation is re-evaluated with the cost model.
pub fn verify_equilibrium(
    space: &MetricSpace,
    profile: &StrategyProfile,
    criterion: Criterion,
    budget: SearchBudget,
) -> Result<EquilibriumReport> {
    let n = space.len();
    if profile.len() != n {
        return Err(Error::InvalidProfile("profile and space sizes differ".into()));
    }
    let network = induce_network(profile);
    let reach = ReachTable::new(&network, space);
    let current: Vec<Cost> = (0..n)
        .map(|u| {
            if reach.is_connected(u) {
                Cost::Finite(profile.strategy(u).len())
            } else {
                Cost::Infinite
            }
        })
        .collect();
    let fast = profile.variant() == Variant::Directed && reach.is_navigable() && n >= 2;
    let responses: Vec<BestResponseResult> = if fast {
        routing_sets(space, budget)?
            .into_iter()
            .map(|g| BestResponseResult {
                agent: g.agent,
                cost: Cost::Finite(g.size()),
                strategy: g.endpoints.into_iter().collect(),
                mode: g.mode,
                unconnected_endpoints: 0,
            })
            .collect()
    } else {
        (0..n)
            .map(|u| best_response(space, profile, u, budget))
            .collect::<Result<_>>()?
    };
    let mut agents = Vec::with_capacity(n);
    for (u, br) in responses.into_iter().enumerate() {
        let stable = criterion.accepts(current[u], br.cost);
        let deviation = if stable {
            None
        } else {
            let mut deviated = profile.clone();
            deviated.set_strategy(u, br.strategy.clone())?;
            let confirmed = agent_cost(&deviated, space, u)?;
            if confirmed != br.cost {
                return Err(Error::Internal(format!(
                    "deviation of agent {u} costs {confirmed}, expected {}",
                    br.cost
                )));
            }
            Some(br.strategy.iter().copied().collect())
        };
        agents.push(AgentWitness {
            agent: u,
            current: current[u],
            best: br.cost,
            deviation,
            stable,
            mode: br.mode,
        });
    }
    let verdict = if agents.iter().all(|a| a.stable) {
        match criterion {
            Criterion::Exact => Verdict::Ne,
            Criterion::Beta { beta } => Verdict::BetaNe { beta },
            Criterion::Additive { gamma } => Verdict::AdditiveNe { gamma },
        }
    } else {
        Verdict::NotStable
    };
    Ok(EquilibriumReport {
        criterion,
        verdict,
        certified: agents.iter().all(|a| a.mode == SearchMode::Exact),
        agents,
    })
}

/// Result of the α condition for one agent of an undirected profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCheck {
    pub agent: usize,
    /// Owned edges that are not critical for the agent.
    pub non_critical_owned: Vec<usize>,
    /// Owned critical edges outside `S_u^best`.
    pub replaceable_owned: usize,
    pub alpha: usize,
    pub holds: bool,
    /// A strictly cheaper strategy when the condition fails.
    pub deviation: Option<Vec<usize>>,
}

/// The necessary condition for an exact equilibrium in the undirected game:
/// an agent owns only critical edges, and at most `α(u)` of them lie outside
/// `S_u^best`. Otherwise dropping a non-critical edge, or dropping the owned
/// edges of `H_u \ S_u^best` and buying `A_u`, is cheaper.
pub fn alpha_condition(space: &MetricSpace, profile: &StrategyProfile, budget: SearchBudget) -> Result<Vec<AlphaCheck>> {
    if profile.variant() != Variant::Undirected {
        return Err(Error::InvalidParameter("the α condition concerns undirected profiles".into()));
    }
    let (canon, _) = profile.canonicalize();
    let network = induce_network(&canon);
    let analysis: CriticalAnalysis = analyze(&network, space, budget)?;
    let mut out = Vec::new();
    for a in &analysis.agents {
        let u = a.agent;
        let owned = canon.strategy(u);
        let non_critical_owned: Vec<usize> = owned.iter().copied().filter(|v| !a.critical.contains(v)).collect();
        let replaceable: BTreeSet<usize> = owned
            .iter()
            .copied()
            .filter(|v| a.critical.contains(v) && !a.best.contains(v))
            .collect();
        let alpha = a.alpha();
        let deviation = if let Some(&v) = non_critical_owned.first() {
            let mut s = owned.clone();
            s.remove(&v);
            Some(s)
        } else if replaceable.len() > alpha {
            let mut s: BTreeSet<usize> = owned.difference(&replaceable).copied().collect();
            s.extend(a.added.iter().copied());
            Some(s)
        } else {
            None
        };
        if let Some(s) = &deviation {
            let mut deviated = canon.clone();
            deviated.set_strategy(u, s.clone())?;
            let c = agent_cost(&deviated, space, u)?;
            if c >= Cost::Finite(owned.len()) {
                return Err(Error::Internal(format!("α-condition deviation of agent {u} does not improve")));
            }
        }
        out.push(AlphaCheck {
            agent: u,
            holds: deviation.is_none(),
            replaceable_owned: replaceable.len(),
            non_critical_owned,
            alpha,
            deviation: deviation.map(|s| s.into_iter().collect()),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialOptimum {
    /// Network with ownership.
    pub network: Network,
    pub profile: StrategyProfile,
    pub cost: usize,
}

/// Default size caps of the exhaustive optimum.
pub const MAX_BRUTE_UNDIRECTED: usize = 9;
pub const MAX_BRUTE_DIRECTED: usize = 7;

/// Exhaustive social optimum. Undirected: a minimum edge set meeting, for
/// every ordered pair `(u, t)`, some edge from `u` to a point strictly
/// closer to `t`, searched by branch and bound from the forced NNG edges.
/// Directed: per agent the smallest endpoint subset passing the routing-set
/// test, by enumeration of all subsets.
pub fn brute_force_social_optimum(space: &MetricSpace, variant: Variant, max_n: Option<usize>) -> Result<SocialOptimum> {
    let n = space.len();
    let cap = max_n.unwrap_or(match variant {
        Variant::Directed => MAX_BRUTE_DIRECTED,
        Variant::Undirected => MAX_BRUTE_UNDIRECTED,
    });
    if n > cap {
        return Err(Error::TooLarge { n, max: cap });
    }
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    match variant {
        Variant::Directed => brute_directed(space),
        Variant::Undirected => brute_undirected(space),
    }
}

fn brute_directed(space: &MetricSpace) -> Result<SocialOptimum> {
    let n = space.len();
    let mut strategies = Vec::with_capacity(n);
    for u in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        let best = (0u32..1 << others.len())
            .map(|mask| {
                others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect::<Vec<usize>>()
            })
            .filter(|set| {
                (0..n)
                    .filter(|&w| w != u)
                    .all(|w| set.iter().any(|&v| space.key(v, w) < space.key(u, w)))
            })
            .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
            .expect("all others always suffice");
        strategies.push(best);
    }
    let profile = StrategyProfile::new(Variant::Directed, strategies)?;
    let network = induce_network(&profile);
    if !ReachTable::new(&network, space).is_navigable() {
        return Err(Error::Internal("exhaustive directed optimum is not navigable".into()));
    }
    Ok(SocialOptimum {
        cost: profile.total_bought(),
        network,
        profile,
    })
}

struct HittingSearch {
    /// For every unordered pair index, the constraints it hits.
    constraints: Vec<u128>,
    /// Per constraint, its owner agent.
    owner: Vec<usize>,
    best: u128,
    best_len: u32,
}

impl HittingSearch {
    fn dfs(&mut self, chosen: u128, forbidden: u128) {
        let len = chosen.count_ones();
        let mut open_agents = 0u64;
        let mut pick: Option<(usize, u32)> = None;
        for (i, &c) in self.constraints.iter().enumerate() {
            if c & chosen != 0 {
                continue;
            }
            open_agents |= 1 << self.owner[i];
            let options = (c & !forbidden).count_ones();
            if pick.is_none_or(|(_, k)| options < k) {
                pick = Some((i, options));
            }
        }
        let Some((constraint, options)) = pick else {
            if len < self.best_len {
                self.best = chosen;
                self.best_len = len;
            }
            return;
        };
        // Each new edge serves at most two agents.
        if options == 0 || len + open_agents.count_ones().div_ceil(2) >= self.best_len {
            return;
        }
        let mut allowed = self.constraints[constraint] & !forbidden;
        let mut forbid = forbidden;
        while allowed != 0 {
            let bit = allowed & allowed.wrapping_neg();
            allowed ^= bit;
            self.dfs(chosen | bit, forbid);
            forbid |= bit;
        }
    }
}

fn brute_undirected(space: &MetricSpace) -> Result<SocialOptimum> {
    let n = space.len();
    let pairs: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == edge(a, b)).unwrap();
    let mut constraints = Vec::new();
    let mut owner = Vec::new();
    for u in 0..n {
        for t in (0..n).filter(|&t| t != u) {
            let mut mask = 0u128;
            for v in (0..n).filter(|&v| v != u && space.key(v, t) < space.key(u, t)) {
                mask |= 1 << index(u, v);
            }
            constraints.push(mask);
            owner.push(u);
        }
    }
    let nng = build_nng(space, false)?;
    let forced = nng.edges().iter().fold(0u128, |m, &(a, b)| m | 1 << index(a, b));
    let mut search = HittingSearch {
        constraints,
        owner,
        best: (1u128 << pairs.len()) - 1,
        best_len: pairs.len() as u32 + 1,
    };
    search.dfs(forced, 0);
    let edges: Vec<Edge> = (0..pairs.len()).filter(|&i| search.best >> i & 1 == 1).map(|i| pairs[i]).collect();
    let mut network = Network::from_edges(Variant::Undirected, n, edges.iter().copied())?;
    if !ReachTable::new(&network, space).is_navigable() {
        return Err(Error::Internal("exhaustive undirected optimum is not navigable".into()));
    }
    network.set_owners(edges.iter().map(|&(a, b)| ((a, b), a)).collect())?;
    let profile = network.to_profile()?;
    Ok(SocialOptimum {
        cost: edges.len(),
        network,
        profile,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoLowerBound {
    pub value: usize,
    pub nng_edges: usize,
    pub phi_prime_sum: usize,
    /// False if any `φ′` came from a budget-limited search, which could
    /// overstate the bound.
    pub certified: bool,
}

/// `|E_NNG| + ⌈Σ φ′(u) / 2⌉`, a lower bound on the number of edges of any
/// navigable undirected network.
pub fn so_lower_bound(space: &MetricSpace, budget: SearchBudget) -> Result<SoLowerBound> {
    let nng = build_nng(space, false)?;
    so_lower_bound_with(space, &nng, budget)
}

fn so_lower_bound_with(space: &MetricSpace, nng: &NngGraph, budget: SearchBudget) -> Result<SoLowerBound> {
    let mut sum = 0;
    let mut certified = true;
    for u in 0..space.len() {
        let p = phi_prime(space, nng, u, budget)?;
        sum += p.value;
        certified &= p.mode == SearchMode::Exact;
    }
    Ok(SoLowerBound {
        value: nng.edges().len() + sum.div_ceil(2),
        nng_edges: nng.edges().len(),
        phi_prime_sum: sum,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoaBound {
    pub name: String,
    pub value: Fraction,
    /// The ratio must stay strictly below `value`.
    pub strict: bool,
}

impl PoaBound {
    pub fn admits(&self, ratio: Fraction) -> bool {
        if self.strict {
            ratio < self.value
        } else {
            ratio <= self.value
        }
    }
}

/// Proven upper bound on the price of anarchy for this game and space.
pub fn poa_bound(space: &MetricSpace, variant: Variant) -> PoaBound {
    let (name, value, strict) = match (variant, space.dimension()) {
        (Variant::Directed, _) => ("directed", Fraction::integer(1), false),
        (Variant::Undirected, Some(2)) => ("euclidean-2d", Fraction::new(9, 5), false),
        (Variant::Undirected, Some(d)) if kissing_number(d).is_some() => {
            let k = kissing_number(d).unwrap() as u64;
            ("euclidean-kissing", Fraction::new(2 * k - 1, k), false)
        }
        (Variant::Undirected, _) => ("general-metric", Fraction::integer(2), true),
    };
    PoaBound {
        name: name.into(),
        value,
        strict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoaReport {
    pub variant: Variant,
    pub equilibrium_cost: usize,
    pub so_exact: Option<usize>,
    pub so_lower_bound: usize,
    pub ratio_exact: Option<Fraction>,
    pub ratio_lower: Fraction,
    pub bound: PoaBound,
    /// Whether the exact ratio respects the bound, when known.
    pub within_bound: Option<bool>,
    pub certified: bool,
}

/// Compares the social cost of `profile` with the optimum. The directed
/// optimum is `Σ φ(u)`; the undirected one is computed exhaustively when
/// `n ≤ max_exact_n`, and always bounded from below.
pub fn poa_report(
    space: &MetricSpace,
    profile: &StrategyProfile,
    max_exact_n: usize,
    budget: SearchBudget,
) -> Result<PoaReport> {
    let report = crate::graph::social_cost(profile, space)?;
    let Cost::Finite(eq_cost) = report.social else {
        return Err(Error::NotNavigable);
    };
    let variant = profile.variant();
    let (so_exact, lower, certified) = match variant {
        Variant::Directed => {
            let sets = routing_sets(space, budget)?;
            let sum: usize = sets.iter().map(|s| s.size()).sum();
            let exact = sets.iter().all(|s| s.mode == SearchMode::Exact);
            (Some(sum), sum, exact)
        }
        Variant::Undirected => {
            let lb = so_lower_bound(space, budget)?;
            let exact = if space.len() <= max_exact_n.min(MAX_BRUTE_UNDIRECTED) {
                Some(brute_force_social_optimum(space, variant, None)?.cost)
            } else {
                None
            };
            (exact, lb.value, lb.certified)
        }
    };
    if lower == 0 {
        return Err(Error::InvalidParameter("optimum has no edges".into()));
    }
    let bound = poa_bound(space, variant);
    let ratio_exact = so_exact.map(|so| Fraction::new(eq_cost as u64, so as u64));
    Ok(PoaReport {
        variant,
        equilibrium_cost: eq_cost,
        so_exact,
        so_lower_bound: lower,
        ratio_lower: Fraction::new(eq_cost as u64, lower as u64),
        within_bound: ratio_exact.map(|r| bound.admits(r)),
        ratio_exact,
        bound,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBudget {
    pub component: Vec<usize>,
    /// Non-NNG edges owned by members of the component.
    pub bought: usize,
    /// `2 + 3|C|`
    pub budget: usize,
    pub margin: i64,
    pub within: bool,
}

/// For each NNG component `C`, the number of non-NNG edges its members own
/// against the budget `2 + 3|C|`.
pub fn component_edge_budget_check(network: &Network, space: &MetricSpace) -> Result<Vec<ComponentBudget>> {
    let owners = network
        .owners()
        .ok_or_else(|| Error::InvalidProfile("network has no ownership".into()))?;
    let nng = build_nng(space, false)?;
    Ok(nng
        .components()
        .iter()
        .map(|c| {
            let members: BTreeSet<usize> = c.iter().copied().collect();
            let bought = owners
                .iter()
                .filter(|(&(a, b), o)| members.contains(o) && !nng.contains(a, b))
                .count();
            let budget = 2 + 3 * c.len();
            ComponentBudget {
                component: c.clone(),
                bought,
                budget,
                margin: budget as i64 - bought as i64,
                within: bought <= budget,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directed::construct_directed_optimum;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn criteria() {
        let f = Cost::Finite;
        assert!(Criterion::Exact.accepts(f(2), f(2)));
        assert!(!Criterion::Exact.accepts(f(3), f(2)));
        assert!(Criterion::Additive { gamma: 2 }.accepts(f(4), f(2)));
        assert!(!Criterion::Additive { gamma: 2 }.accepts(f(5), f(2)));
        let beta = Fraction::new(2, 1);
        assert!(Criterion::Beta { beta }.accepts(f(4), f(2)));
        assert!(!Criterion::Beta { beta }.accepts(f(5), f(2)));
        assert!(!Criterion::Exact.accepts(Cost::Infinite, f(9)));
    }

    #[test]
    fn directed_optimum_is_ne_and_extra_edge_is_not() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![4, 1], vec![2, 6], vec![7, 5], vec![-3, 2]]).unwrap();
        let opt = construct_directed_optimum(&s, budget()).unwrap();
        let r = verify_equilibrium(&s, &opt.profile, Criterion::Exact, budget()).unwrap();
        assert_eq!(r.verdict, Verdict::Ne);
        assert!(r.certified);

        let mut p = opt.profile.clone();
        let u = 0;
        let extra = (1..5).find(|v| !p.strategy(u).contains(v)).unwrap();
        let mut s0 = p.strategy(u).clone();
        s0.insert(extra);
        p.set_strategy(u, s0).unwrap();
        let r = verify_equilibrium(&s, &p, Criterion::Exact, budget()).unwrap();
        assert_eq!(r.verdict, Verdict::NotStable);
        let w = &r.agents[u];
        assert!(!w.stable);
        assert_eq!(w.best, Cost::Finite(w.current.finite().unwrap() - 1));
        assert!(!w.deviation.as_ref().unwrap().contains(&extra));
    }

    #[test]
    fn brute_force_examples() {
        let line = MetricSpace::line(&[0, 1, 3]).unwrap();
        assert_eq!(brute_force_social_optimum(&line, Variant::Undirected, None).unwrap().cost, 2);
        assert_eq!(brute_force_social_optimum(&line, Variant::Directed, None).unwrap().cost, 4);
        let sq = MetricSpace::euclidean(2, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(brute_force_social_optimum(&sq, Variant::Undirected, None).unwrap().cost, 4);
        let big = MetricSpace::line(&(0..10).map(|i| i * i).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            brute_force_social_optimum(&big, Variant::Undirected, None),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn lower_bound_examples() {
        let line = MetricSpace::line(&[0, 1, 3]).unwrap();
        assert_eq!(so_lower_bound(&line, budget()).unwrap().value, 2);
        let far = MetricSpace::line(&[0, 1, 100, 101]).unwrap();
        let lb = so_lower_bound(&far, budget()).unwrap();
        assert_eq!(lb.value, 3);
        assert_eq!(brute_force_social_optimum(&far, Variant::Undirected, None).unwrap().cost, 3);
    }

    #[test]
    fn directed_poa_is_one() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        let opt = construct_directed_optimum(&s, budget()).unwrap();
        let r = poa_report(&s, &opt.profile, 9, budget()).unwrap();
        assert_eq!(r.ratio_exact, Some(Fraction::integer(1)));
        assert_eq!(r.within_bound, Some(true));
    }

    #[test]
    fn component_budgets() {
        let s = MetricSpace::line(&[0, 1, 100, 101, 102]).unwrap();
        let mut g = Network::from_edges(Variant::Undirected, 5, [(0, 1), (2, 3), (3, 4), (1, 2)]).unwrap();
        g.set_owners([((0, 1), 0), ((2, 3), 2), ((3, 4), 3), ((1, 2), 1)].into_iter().collect()).unwrap();
        let r = component_edge_budget_check(&g, &s).unwrap();
        assert_eq!(r[0].budget, 8);
        assert_eq!(r[0].bought, 1);
        assert_eq!(r[1].budget, 11);
        assert_eq!(r[1].bought, 0);
        assert!(component_edge_budget_check(&Network::new(Variant::Undirected, 5), &s).is_err());
    }

    #[test]
    fn fraction_order() {
        assert!(Fraction::new(7, 4) < Fraction::new(9, 5));
        assert_eq!(Fraction::new(6, 4), Fraction::new(3, 2));
        assert_eq!(Fraction::new(6, 4).to_string(), "3/2");
    }
}
