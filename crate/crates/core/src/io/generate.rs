//! Seeded instance generators. The same spec always yields the same instance.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{StrategyProfile, Variant};
use crate::metric::{GeneralMetric, MetricSpace};

fn two() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSpec {
    /// Distinct integer points drawn uniformly from `[0, side)^dimension`.
    UniformSquare {
        n: usize,
        side: i64,
        #[serde(default = "two")]
        dimension: usize,
        seed: u64,
    },
    /// Points scattered within `spread` of uniformly placed centers.
    Clustered {
        n: usize,
        clusters: usize,
        spread: i64,
        side: i64,
        #[serde(default = "two")]
        dimension: usize,
        seed: u64,
    },
    Line { positions: Vec<i64> },
    Grid { rows: usize, cols: usize, spacing: i64 },
    /// Best-response hardness gadget for the set system `sets` over
    /// elements `0..elements`.
    SetCoverGadget {
        elements: usize,
        sets: Vec<Vec<usize>>,
        variant: Variant,
    },
    /// A gadget over a random covering set system.
    RandomSetCoverGadget {
        elements: usize,
        sets: usize,
        variant: Variant,
        seed: u64,
    },
    /// Close point pairs on a triangular lattice; every pair is its own
    /// NNG component with six lattice neighbours.
    PoaLowerBoundFamily {
        replicas: usize,
        #[serde(default = "default_spacing")]
        spacing: i64,
        #[serde(default = "default_gap")]
        gap: i64,
    },
    /// Integer distances drawn uniformly from `[low, high]`; `high ≤ 2·low`
    /// makes every such matrix a metric.
    RandomMetric { n: usize, low: i64, high: i64, seed: u64 },
}

fn default_spacing() -> i64 {
    100
}

fn default_gap() -> i64 {
    10
}

/// Node indices of a set-cover gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetLayout {
    pub agent: usize,
    pub sets: Vec<usize>,
    pub primes: Vec<usize>,
    pub elements: Vec<usize>,
    pub set_members: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub space: MetricSpace,
    /// Fixed strategies of the other agents, for gadget kinds.
    pub profile: Option<StrategyProfile>,
    pub gadget: Option<GadgetLayout>,
}

impl Instance {
    fn plain(space: MetricSpace) -> Self {
        Instance {
            space,
            profile: None,
            gadget: None,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn distinct_points(
    n: usize,
    dimension: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Vec<i64>,
) -> Result<Vec<Vec<i64>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 1000 * n + 1000 {
            return Err(invalid("could not draw enough distinct points"));
        }
        let p = draw(rng);
        debug_assert_eq!(p.len(), dimension);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn generate_instance(spec: &InstanceSpec) -> Result<Instance> {
    match spec {
        &InstanceSpec::UniformSquare { n, side, dimension, seed } => {
            if side <= 0 || dimension == 0 {
                return Err(invalid("side and dimension must be positive"));
            }
            let capacity = (side as f64).powi(dimension as i32);
            if (n as f64) > capacity {
                return Err(invalid(format!("{n} distinct points do not fit in side {side}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = distinct_points(n, dimension, &mut rng, |r| {
                (0..dimension).map(|_| r.random_range(0..side)).collect()
            })?;
            Ok(Instance::plain(MetricSpace::euclidean(dimension, pts)?))
        }
        &InstanceSpec::Clustered {
            n,
            clusters,
            spread,
            side,
            dimension,
            seed,
        } => {
            if clusters == 0 || spread < 0 || side <= 0 || dimension == 0 {
                return Err(invalid("clusters, side and dimension must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let centers: Vec<Vec<i64>> = (0..clusters)
                .map(|_| (0..dimension).map(|_| rng.random_range(0..side)).collect())
                .collect();
            let mut next = 0usize;
            let pts = distinct_points(n, dimension, &mut rng, |r| {
                let c = &centers[next % clusters];
                next += 1;
                c.iter().map(|&x| x + r.random_range(-spread..=spread)).collect()
            })?;
            Ok(Instance::plain(MetricSpace::euclidean(dimension, pts)?))
        }
        InstanceSpec::Line { positions } => Ok(Instance::plain(MetricSpace::line(positions)?)),
        &InstanceSpec::Grid { rows, cols, spacing } => {
            if spacing <= 0 {
                return Err(invalid("spacing must be positive"));
            }
            let pts = (0..rows)
                .flat_map(|r| (0..cols).map(move |c| vec![c as i64 * spacing, r as i64 * spacing]))
                .collect();
            Ok(Instance::plain(MetricSpace::euclidean(2, pts)?))
        }
        InstanceSpec::SetCoverGadget { elements, sets, variant } => set_cover_gadget(*elements, sets, *variant),
        &InstanceSpec::RandomSetCoverGadget {
            elements,
            sets,
            variant,
            seed,
        } => {
            let system = random_set_system(elements, sets, seed)?;
            set_cover_gadget(elements, &system, variant)
        }
        &InstanceSpec::PoaLowerBoundFamily { replicas, spacing, gap } => {
            if replicas == 0 || gap <= 0 || 4 * gap >= spacing {
                return Err(invalid("need replicas > 0 and 0 < 4·gap < spacing"));
            }
            let cols = (replicas as f64).sqrt().ceil() as usize;
            // Row height spacing·√3/2, rounded.
            let height = (spacing as f64 * 3f64.sqrt() / 2.0).round() as i64;
            let mut pts = Vec::with_capacity(2 * replicas);
            for k in 0..replicas {
                let (row, col) = ((k / cols) as i64, (k % cols) as i64);
                let x = col * spacing + (row % 2) * spacing / 2;
                let y = row * height;
                pts.push(vec![x, y]);
                pts.push(vec![x + gap, y]);
            }
            Ok(Instance::plain(MetricSpace::euclidean(2, pts)?))
        }
        &InstanceSpec::RandomMetric { n, low, high, seed } => {
            if low <= 0 || high < low || high > 2 * low {
                return Err(invalid("need 0 < low ≤ high ≤ 2·low"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut d = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let x = rng.random_range(low..=high);
                    d[i][j] = x;
                    d[j][i] = x;
                }
            }
            Ok(Instance::plain(GeneralMetric::from_integers(d)?.into()))
        }
    }
}

/// `sets` random subsets of `0..elements` whose union is everything: each
/// element joins every set with probability 1/2 and at least one set.
pub fn random_set_system(elements: usize, sets: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if sets == 0 || elements == 0 {
        return Err(invalid("need at least one set and one element"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut system = vec![Vec::new(); sets];
    for x in 0..elements {
        let mut placed = false;
        for s in system.iter_mut() {
            if rng.random_bool(0.5) {
                s.push(x);
                placed = true;
            }
        }
        if !placed {
            system[rng.random_range(0..sets)].push(x);
        }
    }
    Ok(system)
}

/// Agent `u` at 0, set node `Q_i` at `2m+i`, its auxiliary node at `3m+i`,
/// element `x_j` at `4m+j` (0-based `i`, `j`). Each set node owns edges to
/// its elements, each auxiliary node to its set node; in the undirected
/// game the auxiliary nodes also own an edge to `u`.
fn set_cover_gadget(elements: usize, sets: &[Vec<usize>], variant: Variant) -> Result<Instance> {
    let m = sets.len();
    if m == 0 || elements == 0 {
        return Err(invalid("need at least one set and one element"));
    }
    let mut covered = BTreeSet::new();
    for s in sets {
        for &x in s {
            if x >= elements {
                return Err(Error::IndexOutOfRange { index: x, n: elements });
            }
            covered.insert(x);
        }
    }
    if covered.len() != elements {
        return Err(invalid("the sets do not cover every element"));
    }
    let layout = GadgetLayout {
        agent: 0,
        sets: (0..m).map(|i| 1 + i).collect(),
        primes: (0..m).map(|i| 1 + m + i).collect(),
        elements: (0..elements).map(|j| 1 + 2 * m + j).collect(),
        set_members: sets.iter().map(|s| s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()).collect(),
    };
    let m64 = m as i64;
    let mut positions = vec![0i64];
    positions.extend((0..m64).map(|i| 2 * m64 + i));
    positions.extend((0..m64).map(|i| 3 * m64 + i));
    positions.extend((0..elements as i64).map(|j| 4 * m64 + j));
    let n = positions.len();
    let mut strategies = vec![Vec::new(); n];
    for i in 0..m {
        strategies[layout.sets[i]] = layout.set_members[i].iter().map(|&x| layout.elements[x]).collect();
        strategies[layout.primes[i]].push(layout.sets[i]);
        if variant == Variant::Undirected {
            strategies[layout.primes[i]].push(layout.agent);
        }
    }
    Ok(Instance {
        space: MetricSpace::line(&positions)?,
        profile: Some(StrategyProfile::new(variant, strategies)?),
        gadget: Some(layout),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::formats::space_to_json;

    #[test]
    fn gadget_positions() {
        let spec = InstanceSpec::SetCoverGadget {
            elements: 3,
            sets: vec![vec![0, 1], vec![1, 2]],
            variant: Variant::Directed,
        };
        let inst = generate_instance(&spec).unwrap();
        assert_eq!(inst.space.len(), 8);
        let e = inst.space.as_euclidean().unwrap();
        let xs: Vec<i64> = e.points().map(|p| p[0]).collect();
        assert_eq!(xs, vec![0, 4, 5, 6, 7, 8, 9, 10]);
        let p = inst.profile.unwrap();
        assert_eq!(p.strategy(1).iter().copied().collect::<Vec<_>>(), vec![5, 6]);
        assert_eq!(p.strategy(3).iter().copied().collect::<Vec<_>>(), vec![1]);
        assert!(p.strategy(0).is_empty());
    }

    #[test]
    fn gadget_rejects_uncovered() {
        let spec = InstanceSpec::SetCoverGadget {
            elements: 3,
            sets: vec![vec![0]],
            variant: Variant::Directed,
        };
        assert!(generate_instance(&spec).is_err());
    }

    #[test]
    fn seeded_generation_is_stable() {
        let spec = InstanceSpec::UniformSquare {
            n: 50,
            side: 1000,
            dimension: 2,
            seed: 7,
        };
        let a = space_to_json(&generate_instance(&spec).unwrap().space).unwrap();
        let b = space_to_json(&generate_instance(&spec).unwrap().space).unwrap();
        assert_eq!(a, b);
        let other = InstanceSpec::UniformSquare {
            n: 50,
            side: 1000,
            dimension: 2,
            seed: 8,
        };
        assert_ne!(a, space_to_json(&generate_instance(&other).unwrap().space).unwrap());
    }

    #[test]
    fn spec_json_defaults() {
        let spec: InstanceSpec = serde_json::from_str(r#"{"kind":"uniform_square","n":5,"side":10,"seed":1}"#).unwrap();
        assert!(matches!(spec, InstanceSpec::UniformSquare { dimension: 2, .. }));
        let line: InstanceSpec = serde_json::from_str(r#"{"kind":"line","positions":[0,1,3]}"#).unwrap();
        assert_eq!(generate_instance(&line).unwrap().space, MetricSpace::line(&[0, 1, 3]).unwrap());
    }

    #[test]
    fn lattice_pairs_form_nng_components() {
        let inst = generate_instance(&InstanceSpec::PoaLowerBoundFamily {
            replicas: 7,
            spacing: 100,
            gap: 10,
        })
        .unwrap();
        let nng = crate::geometry::build_nng(&inst.space, false).unwrap();
        assert_eq!(nng.components().len(), 7);
    }

    #[test]
    fn random_metric_is_valid() {
        let inst = generate_instance(&InstanceSpec::RandomMetric {
            n: 8,
            low: 5,
            high: 10,
            seed: 3,
        })
        .unwrap();
        assert!(inst.space.validated());
        assert!(generate_instance(&InstanceSpec::RandomMetric {
            n: 3,
            low: 2,
            high: 5,
            seed: 0
        })
        .is_err());
    }
}
