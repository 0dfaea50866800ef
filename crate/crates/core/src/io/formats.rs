//! JSON and CSV encodings of spaces, profiles, networks and traces.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::directed::{DynamicsEvent, DynamicsStatus, DynamicsTrace};
use crate::error::{Error, Result};
use crate::graph::{induce_network, Edge, Network, StrategyProfile, Variant};
use crate::metric::{format_rational, parse_rational, EuclideanSpace, GeneralMetric, MetricSpace, SpaceKind};
use crate::undirected::{AlgorithmTrace, IterationRecord, Mode, Outcome, SetupStep};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointFile {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<u32>,
    points: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MetricFile {
    n: usize,
    dist: Vec<Vec<Value>>,
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

fn number(text: &str) -> Value {
    // Decimal strings are valid JSON numbers; `arbitrary_precision` keeps
    // them verbatim.
    match serde_json::from_str::<Number>(text) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(text.to_string()),
    }
}

/// Serializes a space as a point file (Euclidean) or a metric file.
pub fn space_to_json(space: &MetricSpace) -> Result<String> {
    let value = match space.kind() {
        SpaceKind::Euclidean(e) => serde_json::to_value(PointFile {
            dimension: e.dimension(),
            scale: Some(e.scale()),
            points: (0..e.len())
                .map(|i| (0..e.dimension()).map(|a| number(&e.coordinate_decimal(i, a))).collect())
                .collect(),
            labels: e.labels().map(<[String]>::to_vec),
        })?,
        SpaceKind::General(g) => serde_json::to_value(MetricFile {
            n: g.len(),
            dist: g
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| Value::String(format_rational(x))).collect())
                .collect(),
        })?,
    };
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

/// Reads either file kind. Metric files are validated unless `validate` is
/// false.
pub fn space_from_json(text: &str, validate: bool) -> Result<MetricSpace> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("points").is_some() {
        let file: PointFile = serde_json::from_value(value)?;
        let points = file
            .points
            .iter()
            .map(|p| p.iter().map(scalar_text).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = points.iter().position(|p| p.len() != file.dimension) {
            return Err(Error::DimensionMismatch {
                point: bad,
                expected: file.dimension,
                found: points[bad].len(),
            });
        }
        Ok(EuclideanSpace::from_decimals(file.dimension, file.scale, &points, file.labels)?.into())
    } else if value.get("dist").is_some() {
        let file: MetricFile = serde_json::from_value(value)?;
        if file.dist.len() != file.n {
            return Err(Error::Parse(format!("n = {} but {} rows", file.n, file.dist.len())));
        }
        let rows = file
            .dist
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(&scalar_text(x)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let g = if validate {
            GeneralMetric::new(rows)?
        } else {
            GeneralMetric::new_unchecked(rows)?
        };
        Ok(g.into())
    } else {
        Err(Error::Parse("expected a \"points\" or \"dist\" field".into()))
    }
}

/// One point per row. A first row that does not parse as numbers is taken
/// as a header.
pub fn points_from_csv(text: &str, scale: Option<u32>) -> Result<EuclideanSpace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let row: Vec<String> = rec.iter().map(str::to_string).collect();
        if i == 0 && row.iter().any(|c| crate::metric::Decimal::parse(c).is_err()) {
            continue;
        }
        rows.push(row);
    }
    let dimension = rows.first().map(Vec::len).ok_or_else(|| Error::Parse("no points".into()))?;
    if let Some(bad) = rows.iter().position(|r| r.len() != dimension) {
        return Err(Error::DimensionMismatch {
            point: bad,
            expected: dimension,
            found: rows[bad].len(),
        });
    }
    EuclideanSpace::from_decimals(dimension, scale, &rows, None)
}

pub fn points_to_csv(space: &EuclideanSpace) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record((0..space.dimension()).map(|a| format!("x{a}")))?;
    for i in 0..space.len() {
        w.write_record((0..space.dimension()).map(|a| space.coordinate_decimal(i, a)))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Profile file: every agent's owned endpoints keyed by agent index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub variant: Variant,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategies: Option<BTreeMap<usize, Vec<usize>>>,
    /// Used for networks without ownership.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Edge>>,
}

pub fn profile_to_json(profile: &StrategyProfile) -> Result<String> {
    let file = GraphFile {
        variant: profile.variant(),
        n: profile.len(),
        strategies: Some(
            (0..profile.len())
                .map(|u| (u, profile.strategy(u).iter().copied().collect()))
                .collect(),
        ),
        edges: None,
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

fn profile_of(file: &GraphFile) -> Result<Option<StrategyProfile>> {
    let Some(map) = &file.strategies else {
        return Ok(None);
    };
    if let Some((&bad, _)) = map.range(file.n..).next() {
        return Err(Error::IndexOutOfRange { index: bad, n: file.n });
    }
    let mut strategies = vec![Vec::new(); file.n];
    for (&u, s) in map {
        strategies[u] = s.clone();
    }
    StrategyProfile::new(file.variant, strategies).map(Some)
}

pub fn profile_from_json(text: &str) -> Result<StrategyProfile> {
    let file: GraphFile = serde_json::from_str(text)?;
    profile_of(&file)?.ok_or_else(|| Error::Parse("graph file has no strategies".into()))
}

/// Networks with ownership are written as their profile, others as an edge
/// list.
pub fn network_to_json(network: &Network) -> Result<String> {
    if network.owners().is_some() {
        return profile_to_json(&network.to_profile()?);
    }
    let file = GraphFile {
        variant: network.variant(),
        n: network.len(),
        strategies: None,
        edges: Some(network.edges()),
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

pub fn network_from_json(text: &str) -> Result<Network> {
    let file: GraphFile = serde_json::from_str(text)?;
    if let Some(p) = profile_of(&file)? {
        return Ok(induce_network(&p));
    }
    let edges = file.edges.ok_or_else(|| Error::Parse("graph file has neither strategies nor edges".into()))?;
    Network::from_edges(file.variant, file.n, edges)
}

/// One JSON document per line.
pub fn to_jsonl<T: Serialize>(records: impl IntoIterator<Item = T>) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&r)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn from_jsonl<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum DynamicsRecord {
    Start { variant: Variant, schedule: String },
    Activation(DynamicsEvent),
    End {
        #[serde(flatten)]
        status: DynamicsStatus,
        certified: bool,
    },
}

pub fn dynamics_trace_to_jsonl(trace: &DynamicsTrace) -> Result<String> {
    let records = std::iter::once(DynamicsRecord::Start {
        variant: trace.variant,
        schedule: trace.schedule.clone(),
    })
    .chain(trace.events.iter().cloned().map(DynamicsRecord::Activation))
    .chain(std::iter::once(DynamicsRecord::End {
        status: trace.status.clone(),
        certified: trace.certified,
    }));
    to_jsonl(records)
}

/// The final profile is not part of the file.
pub fn dynamics_trace_from_jsonl(text: &str) -> Result<DynamicsTrace> {
    let records: Vec<DynamicsRecord> = from_jsonl(text)?;
    let malformed = || Error::Parse("dynamics trace must run start, activations, end".into());
    let (Some(DynamicsRecord::Start { variant, schedule }), Some(DynamicsRecord::End { status, certified })) =
        (records.first().cloned(), records.last().cloned())
    else {
        return Err(malformed());
    };
    let events = records[1..records.len() - 1]
        .iter()
        .map(|r| match r {
            DynamicsRecord::Activation(e) => Ok(e.clone()),
            _ => Err(malformed()),
        })
        .collect::<Result<_>>()?;
    Ok(DynamicsTrace {
        variant,
        schedule,
        events,
        status,
        certified,
        final_profile: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum AlgorithmRecord {
    Start {
        mode: Mode,
        delta_rule: String,
        iteration_bound: usize,
        setup: Vec<SetupStep>,
    },
    Iteration(IterationRecord),
    End { outcome: Outcome },
}

pub fn algorithm_trace_to_jsonl(trace: &AlgorithmTrace) -> Result<String> {
    let records = std::iter::once(AlgorithmRecord::Start {
        mode: trace.mode,
        delta_rule: trace.delta_rule.clone(),
        iteration_bound: trace.iteration_bound,
        setup: trace.setup.clone(),
    })
    .chain(trace.iterations.iter().cloned().map(AlgorithmRecord::Iteration))
    .chain(std::iter::once(AlgorithmRecord::End {
        outcome: trace.outcome.clone(),
    }));
    to_jsonl(records)
}

pub fn algorithm_trace_from_jsonl(text: &str) -> Result<AlgorithmTrace> {
    let records: Vec<AlgorithmRecord> = from_jsonl(text)?;
    let malformed = || Error::Parse("algorithm trace must run start, iterations, end".into());
    let (
        Some(AlgorithmRecord::Start {
            mode,
            delta_rule,
            iteration_bound,
            setup,
        }),
        Some(AlgorithmRecord::End { outcome }),
    ) = (records.first().cloned(), records.last().cloned())
    else {
        return Err(malformed());
    };
    let iterations = records[1..records.len() - 1]
        .iter()
        .map(|r| match r {
            AlgorithmRecord::Iteration(i) => Ok(i.clone()),
            _ => Err(malformed()),
        })
        .collect::<Result<_>>()?;
    Ok(AlgorithmTrace {
        mode,
        delta_rule,
        iteration_bound,
        setup,
        iterations,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let e = EuclideanSpace::from_decimals(
            2,
            None,
            &[vec!["0.5".into(), "-1".into()], vec!["2.25".into(), "1e1".into()]],
            Some(vec!["a".into(), "b".into()]),
        )
        .unwrap();
        assert_eq!(e.scale(), 2);
        let s: MetricSpace = e.into();
        let text = space_to_json(&s).unwrap();
        assert!(text.contains("2.25"));
        let back = space_from_json(&text, true).unwrap();
        assert_eq!(back.as_euclidean(), s.as_euclidean());
        assert_eq!(space_to_json(&back).unwrap(), text);
    }

    #[test]
    fn numbers_or_strings() {
        let s = space_from_json(r#"{"dimension":1,"points":[["0.1"],[0.25],[3]]}"#, true).unwrap();
        let e = s.as_euclidean().unwrap();
        assert_eq!(e.scale(), 2);
        assert_eq!(e.point(0), &[10]);
        assert!(matches!(
            space_from_json(r#"{"dimension":2,"points":[[1,2],[3]]}"#, true),
            Err(Error::DimensionMismatch { point: 1, .. })
        ));
    }

    #[test]
    fn metric_round_trip() {
        let text = r#"{"n":3,"dist":[[0,"1/2",1],["1/2",0,"0.75"],[1,"3/4",0]]}"#;
        let s = space_from_json(text, true).unwrap();
        let out = space_to_json(&s).unwrap();
        assert!(out.contains("\"3/4\""));
        let back = space_from_json(&out, true).unwrap();
        assert_eq!(space_to_json(&back).unwrap(), out);
        let bad = r#"{"n":3,"dist":[[0,1,5],[1,0,1],[5,1,0]]}"#;
        assert!(matches!(space_from_json(bad, true), Err(Error::InvalidMetric(_))));
        assert!(!space_from_json(bad, false).unwrap().validated());
    }

    #[test]
    fn csv_round_trip() {
        let e = points_from_csv("x,y\n0,0\n1.5,2\n-3,4\n", None).unwrap();
        assert_eq!(e.scale(), 1);
        assert_eq!(e.point(1), &[15, 20]);
        let text = points_to_csv(&e).unwrap();
        assert_eq!(points_from_csv(&text, Some(e.scale())).unwrap(), e);
        assert_eq!(points_from_csv("1,2\n3,4\n", None).unwrap().len(), 2);
        assert!(points_from_csv("1,2\n3\n", None).is_err());
    }

    #[test]
    fn profile_and_network_round_trip() {
        let p = StrategyProfile::new(Variant::Undirected, vec![vec![1], vec![2], vec![]]).unwrap();
        let text = profile_to_json(&p).unwrap();
        assert!(text.contains("\"strategies\""));
        assert_eq!(profile_from_json(&text).unwrap(), p);
        let g = induce_network(&p);
        assert_eq!(network_from_json(&network_to_json(&g).unwrap()).unwrap(), g);
        let plain = Network::from_edges(Variant::Undirected, 3, [(0, 2)]).unwrap();
        let text = network_to_json(&plain).unwrap();
        assert!(text.contains("\"edges\""));
        assert_eq!(network_from_json(&text).unwrap(), plain);
        assert!(profile_from_json(r#"{"variant":"directed","n":2,"strategies":{"5":[0]}}"#).is_err());
    }
}
