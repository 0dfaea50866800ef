//! Exact minimum set cover by branch and bound.
//!
//! Among all minimum covers the solver returns the one with the most
//! preferred sets, then the lexicographically smallest list of set indices.
//! Each node branches on the uncovered element with the fewest candidate
//! sets; sets tried in earlier sibling branches are excluded from later ones,
//! so no cover is visited twice.

use std::cmp::Ordering;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    /// Indices of the chosen sets, ascending.
    pub chosen: Vec<usize>,
    pub preferred: usize,
    /// False when the node limit stopped the search early.
    pub exact: bool,
    pub nodes: u64,
}

/// Minimum cover of `universe` by `sets`, or `None` if no cover exists.
/// `hint` is an optional known cover used as the initial incumbent.
pub fn min_cover(
    universe: &BitSet,
    sets: &[BitSet],
    preferred: &[bool],
    node_limit: u64,
    hint: Option<&[usize]>,
) -> Option<CoverSolution> {
    assert_eq!(sets.len(), preferred.len());
    let mut all = BitSet::new(universe.capacity());
    for s in sets {
        all.union_with(s);
    }
    if !universe.is_subset(&all) {
        return None;
    }
    let mut by_element = vec![Vec::new(); universe.capacity()];
    for (i, s) in sets.iter().enumerate() {
        for e in s.iter() {
            if universe.contains(e) {
                by_element[e].push(i);
            }
        }
    }
    let mut search = Search {
        sets,
        preferred,
        by_element,
        node_limit,
        nodes: 0,
        aborted: false,
        best: None,
    };
    search.offer(&greedy_cover(universe, sets, preferred));
    if let Some(h) = hint {
        let mut covered = BitSet::new(universe.capacity());
        for &i in h {
            covered.union_with(&sets[i]);
        }
        if universe.is_subset(&covered) {
            search.offer(h);
        }
    }
    let mut forbidden = BitSet::new(sets.len());
    search.dfs(universe.clone(), &mut Vec::new(), &mut forbidden);
    let (chosen, preferred) = search.best.expect("a cover exists");
    Some(CoverSolution {
        chosen,
        preferred,
        exact: !search.aborted,
        nodes: search.nodes,
    })
}

/// Repeatedly takes the set covering the most uncovered elements, ties to
/// preferred sets and then the lowest index.
pub fn greedy_cover(universe: &BitSet, sets: &[BitSet], preferred: &[bool]) -> Vec<usize> {
    let mut uncovered = universe.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection_count(&uncovered)))
            .max_by(|a, b| {
                a.1.cmp(&b.1)
                    .then(preferred[a.0].cmp(&preferred[b.0]))
                    .then(b.0.cmp(&a.0))
            })
            .expect("non-empty candidate list");
        assert!(gain > 0, "greedy cover called on an uncoverable universe");
        uncovered.difference_with(&sets[best]);
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}

struct Search<'a> {
    sets: &'a [BitSet],
    preferred: &'a [bool],
    by_element: Vec<Vec<usize>>,
    node_limit: u64,
    nodes: u64,
    aborted: bool,
    best: Option<(Vec<usize>, usize)>,
}

impl Search<'_> {
    fn offer(&mut self, chosen: &[usize]) {
        let mut c = chosen.to_vec();
        c.sort_unstable();
        let pref = c.iter().filter(|&&i| self.preferred[i]).count();
        let better = match &self.best {
            None => true,
            Some((b, bp)) => {
                c.len()
                    .cmp(&b.len())
                    .then(bp.cmp(&pref))
                    .then_with(|| c.cmp(b))
                    == Ordering::Less
            }
        };
        if better {
            self.best = Some((c, pref));
        }
    }

    fn dfs(&mut self, uncovered: BitSet, chosen: &mut Vec<usize>, forbidden: &mut BitSet) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            self.offer(chosen);
            return;
        }
        let limit = self.best.as_ref().map_or(usize::MAX, |b| b.0.len());
        if chosen.len() + 1 > limit {
            return;
        }
        let mut rarest: Option<(usize, usize)> = None;
        for e in uncovered.iter() {
            let k = self.by_element[e].iter().filter(|&&c| !forbidden.contains(c)).count();
            if rarest.is_none_or(|(_, best)| k < best) {
                rarest = Some((e, k));
            }
        }
        let (element, options) = rarest.unwrap();
        if options == 0 {
            return;
        }
        let max_gain = (0..self.sets.len())
            .filter(|&c| !forbidden.contains(c))
            .map(|c| self.sets[c].intersection_count(&uncovered))
            .max()
            .unwrap_or(0);
        let lower = uncovered.count().div_ceil(max_gain.max(1));
        if chosen.len() + lower > limit {
            return;
        }
        let mut branch: Vec<(usize, usize)> = self.by_element[element]
            .iter()
            .filter(|&&c| !forbidden.contains(c))
            .map(|&c| (c, self.sets[c].intersection_count(&uncovered)))
            .collect();
        branch.sort_by(|a, b| {
            b.1.cmp(&a.1)
                .then(self.preferred[b.0].cmp(&self.preferred[a.0]))
                .then(a.0.cmp(&b.0))
        });
        let mut excluded = Vec::new();
        for (c, _) in branch {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.sets[c]);
            chosen.push(c);
            self.dfs(rest, chosen, forbidden);
            chosen.pop();
            if self.aborted {
                break;
            }
            forbidden.insert(c);
            excluded.push(c);
        }
        for c in excluded {
            forbidden.remove(c);
        }
    }
}
