//! The optimum of the directed game and best-response dynamics.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::nearest_neighbor_sets;
use crate::graph::{induce_network, Cost, ReachTable, StrategyProfile, Variant};
use crate::metric::MetricSpace;
use crate::routing::{
    best_response_in, forced_neighbors, routing_sets, GreedyRoutingSet, SearchBudget, SearchMode,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedOptimum {
    /// Every agent buys arcs to its canonical `Φ(u)`.
    pub profile: StrategyProfile,
    pub routing_sets: Vec<GreedyRoutingSet>,
    /// `Σ φ(u)`
    pub social_cost: usize,
    /// False if any routing set came from a budget-limited search.
    pub certified: bool,
}

/// Each agent buys arcs to its canonical minimum greedy routing set. The
/// result is navigable and is both an equilibrium and a social optimum.
pub fn construct_directed_optimum(space: &MetricSpace, budget: SearchBudget) -> Result<DirectedOptimum> {
    let sets = routing_sets(space, budget)?;
    let profile = StrategyProfile::new(
        Variant::Directed,
        sets.iter().map(|g| g.endpoints.clone()).collect(),
    )?;
    Ok(DirectedOptimum {
        social_cost: sets.iter().map(GreedyRoutingSet::size).sum(),
        certified: sets.iter().all(|g| g.mode == SearchMode::Exact),
        routing_sets: sets,
        profile,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Schedule {
    RoundRobin,
    /// A fresh random permutation of the agents every round.
    RandomSeeded(u64),
    /// The listed agents in order, repeated every round.
    Scripted(Vec<usize>),
}

impl std::fmt::Display for Schedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Schedule::RoundRobin => f.write_str("round-robin"),
            Schedule::RandomSeeded(s) => write!(f, "random:{s}"),
            Schedule::Scripted(order) => {
                let parts: Vec<String> = order.iter().map(usize::to_string).collect();
                write!(f, "scripted:{}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsEvent {
    pub round: usize,
    pub agent: usize,
    pub old_cost: Cost,
    pub new_cost: Cost,
    pub old_size: usize,
    pub new_size: usize,
    pub added: Vec<usize>,
    pub removed: Vec<usize>,
    /// Fingerprint of the profile after this activation.
    pub fingerprint: u64,
}

impl DynamicsEvent {
    pub fn moved(&self) -> bool {
        !self.added.is_empty() || !self.removed.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DynamicsStatus {
    Converged,
    /// The profile after move `repeat_move` equals the one after move
    /// `first_move`; move 0 is the initial profile.
    CycleDetected { first_move: usize, repeat_move: usize },
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsTrace {
    pub variant: Variant,
    pub schedule: String,
    pub events: Vec<DynamicsEvent>,
    pub status: DynamicsStatus,
    /// Every best response was exact.
    pub certified: bool,
    #[serde(skip)]
    pub final_profile: Option<StrategyProfile>,
}

impl DynamicsTrace {
    /// Activations that changed a strategy.
    pub fn moves(&self) -> impl Iterator<Item = &DynamicsEvent> {
        self.events.iter().filter(|e| e.moved())
    }
}

/// Activates agents according to `schedule`; an agent switches to its best
/// response only when that strictly lowers its cost. Stops after a round
/// without a move, when a profile repeats, or after `max_rounds` rounds.
pub fn run_dynamics(
    space: &MetricSpace,
    initial: &StrategyProfile,
    schedule: &Schedule,
    max_rounds: usize,
    budget: SearchBudget,
) -> Result<DynamicsTrace> {
    let n = space.len();
    if initial.len() != n {
        return Err(Error::InvalidProfile("profile and space sizes differ".into()));
    }
    if let Schedule::Scripted(order) = schedule {
        if let Some(&bad) = order.iter().find(|&&a| a >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if order.is_empty() {
            return Err(Error::InvalidParameter("empty activation script".into()));
        }
    }
    let nearest = nearest_neighbor_sets(space)?;
    let preferred: Vec<BTreeSet<usize>> = (0..n)
        .map(|u| {
            let mut s: BTreeSet<usize> = nearest[u].iter().copied().collect();
            s.extend((0..n).filter(|&v| nearest[v].contains(&u)));
            s
        })
        .collect();
    let mut rng = match schedule {
        Schedule::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut profile = initial.clone();
    let mut seen: HashMap<u64, Vec<(usize, StrategyProfile)>> = HashMap::new();
    seen.entry(profile.fingerprint()).or_default().push((0, profile.canonicalize().0));
    let mut events = Vec::new();
    let mut moves = 0;
    let mut certified = true;

    for round in 0..max_rounds {
        let order: Vec<usize> = match schedule {
            Schedule::RoundRobin => (0..n).collect(),
            Schedule::RandomSeeded(_) => {
                let mut o: Vec<usize> = (0..n).collect();
                o.shuffle(rng.as_mut().unwrap());
                o
            }
            Schedule::Scripted(o) => o.clone(),
        };
        let mut moved = false;
        for u in order {
            let network = induce_network(&profile);
            let reach = ReachTable::new(&network, space);
            let old = profile.strategy(u).clone();
            let old_cost = if reach.is_connected(u) {
                Cost::Finite(old.len())
            } else {
                Cost::Infinite
            };
            let br = best_response_in(space, &reach, u, &forced_neighbors(&profile, u), &preferred[u], budget);
            certified &= br.certified();
            let improves = br.cost < old_cost;
            if improves {
                profile.set_strategy(u, br.strategy.clone())?;
            }
            let new = profile.strategy(u);
            let event = DynamicsEvent {
                round,
                agent: u,
                old_cost,
                new_cost: if improves { br.cost } else { old_cost },
                old_size: old.len(),
                new_size: new.len(),
                added: new.difference(&old).copied().collect(),
                removed: old.difference(new).copied().collect(),
                fingerprint: profile.fingerprint(),
            };
            let changed = event.moved();
            let fp = event.fingerprint;
            events.push(event);
            if !changed {
                continue;
            }
            moved = true;
            moves += 1;
            let canon = profile.canonicalize().0;
            let bucket = seen.entry(fp).or_default();
            if let Some((first, _)) = bucket.iter().find(|(_, p)| *p == canon) {
                return Ok(DynamicsTrace {
                    variant: profile.variant(),
                    schedule: schedule.to_string(),
                    events,
                    status: DynamicsStatus::CycleDetected {
                        first_move: *first,
                        repeat_move: moves,
                    },
                    certified,
                    final_profile: Some(profile),
                });
            }
            bucket.push((moves, canon));
        }
        if !moved {
            return Ok(DynamicsTrace {
                variant: profile.variant(),
                schedule: schedule.to_string(),
                events,
                status: DynamicsStatus::Converged,
                certified,
                final_profile: Some(profile),
            });
        }
    }
    Ok(DynamicsTrace {
        variant: profile.variant(),
        schedule: schedule.to_string(),
        events,
        status: DynamicsStatus::BudgetExhausted,
        certified,
        final_profile: Some(profile),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_navigable, social_cost};

    #[test]
    fn line_optimum() {
        let s = MetricSpace::line(&[0, 1, 3]).unwrap();
        let opt = construct_directed_optimum(&s, SearchBudget::default()).unwrap();
        let sizes: Vec<usize> = (0..3).map(|u| opt.profile.strategy(u).len()).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
        assert_eq!(opt.profile.strategy(1), &BTreeSet::from([0, 2]));
        assert_eq!(opt.social_cost, 4);
        assert!(opt.certified);
    }

    #[test]
    fn two_agents_buy_each_other() {
        let s = MetricSpace::line(&[5, 9]).unwrap();
        let opt = construct_directed_optimum(&s, SearchBudget::default()).unwrap();
        assert_eq!(opt.social_cost, 2);
        assert!(is_navigable(&induce_network(&opt.profile), &s));
    }

    #[test]
    fn optimum_is_idle_under_dynamics() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![5, 2], vec![1, 8], vec![9, 9], vec![4, 4]]).unwrap();
        let opt = construct_directed_optimum(&s, SearchBudget::default()).unwrap();
        let t = run_dynamics(&s, &opt.profile, &Schedule::RoundRobin, 10, SearchBudget::default()).unwrap();
        assert_eq!(t.status, DynamicsStatus::Converged);
        assert_eq!(t.moves().count(), 0);
        assert_eq!(t.events.len(), 5);
    }

    #[test]
    fn empty_start_converges() {
        let s = MetricSpace::euclidean(2, vec![vec![0, 0], vec![5, 2], vec![1, 8], vec![9, 9], vec![4, 4]]).unwrap();
        let p = StrategyProfile::empty(Variant::Directed, 5);
        for sched in [Schedule::RoundRobin, Schedule::RandomSeeded(3)] {
            let t = run_dynamics(&s, &p, &sched, 50, SearchBudget::default()).unwrap();
            assert_eq!(t.status, DynamicsStatus::Converged);
            let fin = t.final_profile.unwrap();
            assert_eq!(social_cost(&fin, &s).unwrap().social, Cost::Finite(
                construct_directed_optimum(&s, SearchBudget::default()).unwrap().social_cost
            ));
        }
    }

    #[test]
    fn bad_script_rejected() {
        let s = MetricSpace::line(&[0, 1]).unwrap();
        let p = StrategyProfile::empty(Variant::Directed, 2);
        assert!(run_dynamics(&s, &p, &Schedule::Scripted(vec![2]), 1, SearchBudget::default()).is_err());
    }
}
