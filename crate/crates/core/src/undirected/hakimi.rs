//! Orientation of an undirected graph under in-degree bounds by max-flow.
//!
//! Owning an edge counts toward the owner's in-degree. Flow goes source →
//! edge node (capacity 1) → either endpoint → sink (capacity `δ(u)`). The
//! middle arcs get a capacity of `|E| + 1` instead of 1; this does not change
//! the flow value, and it makes the source side of a minimum cut a set of
//! vertices whose bounds cannot absorb their internal edges.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub owner: BTreeMap<Edge, usize>,
    pub indegree: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum HakimiOutcome {
    Feasible(Orientation),
    /// `violating` is a vertex set whose bounds sum to less than the number
    /// of edges it spans.
    Infeasible { max_flow: usize, violating: Vec<usize> },
}

/// Assigns each edge to one endpoint so that vertex `u` owns at most
/// `delta[u]` edges, or reports a violating vertex set.
pub fn hakimi_orient(n: usize, edges: &[Edge], delta: &[usize]) -> Result<HakimiOutcome> {
    if delta.len() != n {
        return Err(Error::InvalidParameter(format!("{} bounds for {n} vertices", delta.len())));
    }
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::InvalidParameter(format!("bad edge ({a}, {b})")));
        }
    }
    let m = edges.len();
    let source = 0;
    let sink = m + n + 1;
    let mut flow = Dinic::new(m + n + 2);
    let big = m as i64 + 1;
    let mut middle = Vec::with_capacity(m);
    for (i, &(a, b)) in edges.iter().enumerate() {
        flow.add(source, 1 + i, 1);
        let to_a = flow.add(1 + i, 1 + m + a, big);
        let to_b = flow.add(1 + i, 1 + m + b, big);
        middle.push((to_a, to_b));
    }
    for (u, &d) in delta.iter().enumerate() {
        flow.add(1 + m + u, sink, d as i64);
    }
    let value = flow.max_flow(source, sink) as usize;
    if value < m {
        let side = flow.source_side(source);
        let violating = (0..n).filter(|&u| side[1 + m + u]).collect();
        return Ok(HakimiOutcome::Infeasible {
            max_flow: value,
            violating,
        });
    }
    let mut owner = BTreeMap::new();
    let mut indegree = vec![0; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (to_a, _) = middle[i];
        let o = if flow.flow_on(to_a) > 0 { a } else { b };
        indegree[o] += 1;
        owner.insert(crate::graph::edge(a, b), o);
    }
    Ok(HakimiOutcome::Feasible(Orientation { owner, indegree }))
}

/// Dinic's algorithm with arcs explored in insertion order.
struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    original: Vec<i64>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[a].push(id);
        self.to.push(b);
        self.cap.push(c);
        self.original.push(c);
        self.head[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        self.original.push(0);
        id
    }

    fn flow_on(&self, arc: usize) -> i64 {
        self.original[arc] - self.cap[arc]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &id in &self.head[x] {
                let y = self.to[id];
                if self.cap[id] > 0 && self.level[y] < 0 {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, pushed: i64) -> i64 {
        if x == t {
            return pushed;
        }
        while self.next[x] < self.head[x].len() {
            let id = self.head[x][self.next[x]];
            let y = self.to[id];
            if self.cap[id] > 0 && self.level[y] == self.level[x] + 1 {
                let got = self.dfs(y, t, pushed.min(self.cap[id]));
                if got > 0 {
                    self.cap[id] -= got;
                    self.cap[id ^ 1] += got;
                    return got;
                }
            }
            self.next[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|p| *p = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &id in &self.head[x] {
                let y = self.to[id];
                if self.cap[id] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spanned(edges: &[Edge], set: &[usize]) -> usize {
        edges.iter().filter(|(a, b)| set.contains(a) && set.contains(b)).count()
    }

    #[test]
    fn triangle_cycle() {
        let edges = [(0, 1), (1, 2), (0, 2)];
        match hakimi_orient(3, &edges, &[1, 1, 1]).unwrap() {
            HakimiOutcome::Feasible(o) => assert_eq!(o.indegree, vec![1, 1, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangle_over_constrained() {
        let edges = [(0, 1), (1, 2), (0, 2)];
        match hakimi_orient(3, &edges, &[1, 1, 0]).unwrap() {
            HakimiOutcome::Infeasible { max_flow, violating } => {
                assert_eq!(max_flow, 2);
                let bound: usize = violating.iter().map(|&u| [1, 1, 0][u]).sum();
                assert!(bound < spanned(&edges, &violating));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_graph() {
        assert!(matches!(hakimi_orient(2, &[], &[0, 0]).unwrap(), HakimiOutcome::Feasible(_)));
        assert!(hakimi_orient(2, &[(0, 0)], &[0, 0]).is_err());
    }
}
