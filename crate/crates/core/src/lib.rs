//! Greedy-routing network creation games.
//!
//! Agents are points of a metric space; each buys edges so that it can reach
//! every other point by greedy routing. The crate builds navigable networks,
//! computes minimum greedy routing sets and best responses, runs the directed
//! and undirected games, and checks equilibria against exhaustive oracles.

pub mod bitset;
pub mod cover;
pub mod directed;
pub mod equilibrium;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod routing;
pub mod undirected;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use graph::{
    agent_cost, edge, extract_greedy_path, greedy_reachable_to, induce_network, is_greedy_connected,
    is_navigable, social_cost, Cost, CostReport, DuplicateEdge, Edge, GreedyPath, Network,
    ReachTable, StrategyProfile, Variant,
};
pub use metric::{EuclideanSpace, GeneralMetric, MetricSpace, SpaceKind, ValidationReport};
