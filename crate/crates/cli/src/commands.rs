use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use navnet::directed::{construct_directed_optimum, run_dynamics, Schedule};
use navnet::equilibrium::{
    brute_force_social_optimum, poa_report, verify_equilibrium, Criterion, Fraction, Verdict,
};
use navnet::geometry::{build_nng, delaunay_2d};
use navnet::io::{
    algorithm_trace_to_jsonl, dynamics_trace_to_jsonl, generate_instance, network_from_json, network_to_json,
    points_to_csv, profile_from_json, profile_to_json, render_dot, render_svg, space_to_json, InstanceSpec,
    SvgStyle,
};
use navnet::metric::parse_rational;
use navnet::oracle::brute_reach_matrix;
use navnet::routing::SearchBudget;
use navnet::undirected::{compute_approximate_ne, Mode};
use navnet::{StrategyProfile, Variant};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{emit, load_space, read_text};
use crate::{
    AlgoMode, Command, ConstructArgs, DynamicsArgs, ExportArgs, ExportFormat, GenerateArgs, Method, OracleArgs,
    OracleKind, PoaArgs, PointFormat, VerifyArgs,
};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => return verify(a),
        Command::Dynamics(a) => dynamics(a),
        Command::Poa(a) => poa(a),
        Command::Export(a) => export(a),
        Command::Oracle(a) => oracle(a),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn budget(nodes: u64) -> SearchBudget {
    SearchBudget { max_nodes: nodes }
}

fn json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn with_seed(spec: InstanceSpec, new: u64) -> InstanceSpec {
    match spec {
        InstanceSpec::UniformSquare { n, side, dimension, .. } => InstanceSpec::UniformSquare {
            n,
            side,
            dimension,
            seed: new,
        },
        InstanceSpec::Clustered {
            n,
            clusters,
            spread,
            side,
            dimension,
            ..
        } => InstanceSpec::Clustered {
            n,
            clusters,
            spread,
            side,
            dimension,
            seed: new,
        },
        InstanceSpec::RandomSetCoverGadget {
            elements, sets, variant, ..
        } => InstanceSpec::RandomSetCoverGadget {
            elements,
            sets,
            variant,
            seed: new,
        },
        InstanceSpec::RandomMetric { n, low, high, .. } => InstanceSpec::RandomMetric { n, low, high, seed: new },
        other => other,
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let text = if a.spec.trim_start().starts_with('{') {
        a.spec.clone()
    } else {
        read_text(a.spec.as_ref())?
    };
    let mut spec: InstanceSpec = serde_json::from_str(&text).context("parsing instance spec")?;
    if let Some(seed) = a.seed {
        spec = with_seed(spec, seed);
    }
    let inst = generate_instance(&spec)?;
    let body = match a.format {
        PointFormat::Json => space_to_json(&inst.space)?,
        PointFormat::Csv => points_to_csv(
            inst.space
                .as_euclidean()
                .ok_or_else(|| anyhow!("CSV output needs a point set"))?,
        )?,
    };
    emit(&a.output, &body)?;
    match (&a.profile_output, &inst.profile) {
        (Some(path), Some(p)) => emit(&Some(path.clone()), &profile_to_json(p)?)?,
        (Some(_), None) => bail!("this instance kind has no background profile"),
        _ => {}
    }
    Ok(())
}

fn construct(a: ConstructArgs) -> Result<()> {
    let space = load_space(&a.space)?;
    let b = budget(a.budget.budget);
    if a.trace.is_some() && a.method != Method::ApproxNe {
        bail!("--trace is only produced by approx-ne");
    }
    let body = match a.method {
        Method::DirectedOptimum => {
            let opt = construct_directed_optimum(&space, b)?;
            if !opt.certified {
                eprintln!("warning: routing sets came from a budget-limited search");
            }
            profile_to_json(&opt.profile)?
        }
        Method::ApproxNe => {
            let mode = match a.mode {
                AlgoMode::Auto => Mode::for_space(&space),
                AlgoMode::General => Mode::GeneralMetric,
                AlgoMode::Euclidean => Mode::Euclidean,
                AlgoMode::Planar2d => Mode::Planar2D,
            };
            let ne = compute_approximate_ne(&space, mode, b)?;
            if !ne.certified {
                eprintln!("warning: result is not certified");
            }
            if let Some(path) = &a.trace {
                emit(&Some(path.clone()), &algorithm_trace_to_jsonl(&ne.trace)?)?;
            }
            profile_to_json(&ne.profile)?
        }
        Method::Delaunay => network_to_json(&delaunay_2d(&space)?.to_network())?,
        Method::Nng => network_to_json(&build_nng(&space, a.variant == crate::VariantArg::Directed)?.to_network())?,
    };
    emit(&a.output, &body)
}

pub fn parse_criterion(s: &str) -> Result<Criterion> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("ne") {
        return Ok(Criterion::Exact);
    }
    if let Some(x) = s.strip_prefix("beta:") {
        let r = parse_rational(x)?;
        let (numer, denom) = (r.numer().to_u64(), r.denom().to_u64());
        let (Some(numer), Some(denom)) = (numer, denom) else {
            bail!("beta must be a non-negative fraction of 64-bit integers");
        };
        if numer < denom {
            bail!("beta must be at least 1");
        }
        return Ok(Criterion::Beta {
            beta: Fraction::new(numer, denom),
        });
    }
    if let Some(k) = s.strip_prefix("additive:") {
        let gamma = k.trim().parse::<u64>().context("additive slack must be a non-negative integer")?;
        return Ok(Criterion::Additive { gamma });
    }
    bail!("unknown criterion {s:?}; expected ne, beta:<x> or additive:<k>")
}

fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::Ne => "NE".into(),
        Verdict::BetaNe { beta } => format!("BetaNE({beta})"),
        Verdict::AdditiveNe { gamma } => format!("AdditiveNE({gamma})"),
        Verdict::NotStable => "NotStable".into(),
    }
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let space = load_space(&a.space)?;
    let profile = profile_from_json(&read_text(&a.graph)?)?;
    let criterion = parse_criterion(&a.criterion)?;
    let report = verify_equilibrium(&space, &profile, criterion, budget(a.budget.budget))?;
    let mut table = String::new();
    writeln!(table, "verdict: {}", verdict_name(&report.verdict))?;
    writeln!(table, "certified: {}", report.certified)?;
    writeln!(table, "{:>6} {:>8} {:>8} {:>7}  deviation", "agent", "current", "best", "stable")?;
    for w in &report.agents {
        let dev = w
            .deviation
            .as_ref()
            .map(|d| format!("{d:?}"))
            .unwrap_or_default();
        writeln!(
            table,
            "{:>6} {:>8} {:>8} {:>7}  {dev}",
            w.agent,
            w.current.to_string(),
            w.best.to_string(),
            if w.stable { "yes" } else { "no" }
        )?;
    }
    print!("{table}");
    if let Some(path) = &a.output {
        emit(&Some(path.clone()), &json_pretty(&report)?)?;
    }
    if a.expect_stable && report.verdict == Verdict::NotStable {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_schedule(s: &str) -> Result<Schedule> {
    let s = s.trim();
    if s == "round-robin" {
        return Ok(Schedule::RoundRobin);
    }
    if let Some(seed) = s.strip_prefix("random:") {
        return Ok(Schedule::RandomSeeded(seed.parse().context("random schedule seed")?));
    }
    if let Some(list) = s.strip_prefix("scripted:") {
        let order = list
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .context("scripted schedule must list agent indices")?;
        return Ok(Schedule::Scripted(order));
    }
    bail!("unknown schedule {s:?}; expected round-robin, random:<seed> or scripted:<a,b,...>")
}

fn start_profile(start: &str, variant: Variant, n: usize, seed: u64) -> Result<StrategyProfile> {
    let sets: Vec<BTreeSet<usize>> = match start.trim() {
        "empty" => vec![BTreeSet::new(); n],
        "complete" => (0..n)
            .map(|u| match variant {
                Variant::Directed => (0..n).filter(|&v| v != u).collect(),
                Variant::Undirected => (u + 1..n).collect(),
            })
            .collect(),
        other => {
            let p: f64 = other
                .strip_prefix("random:")
                .ok_or_else(|| anyhow!("unknown start {other:?}; expected empty, complete or random:<p>"))?
                .parse()
                .context("random start probability")?;
            if !(0.0..=1.0).contains(&p) {
                bail!("random start probability must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sets = vec![BTreeSet::new(); n];
            for u in 0..n {
                for v in 0..n {
                    let pair = match variant {
                        Variant::Directed => u != v,
                        Variant::Undirected => u < v,
                    };
                    if pair && rng.random_bool(p) {
                        if variant == Variant::Undirected && rng.random_bool(0.5) {
                            sets[v].insert(u);
                        } else {
                            sets[u].insert(v);
                        }
                    }
                }
            }
            sets
        }
    };
    Ok(StrategyProfile::from_sets(variant, sets)?)
}

fn dynamics(a: DynamicsArgs) -> Result<()> {
    let space = load_space(&a.space)?;
    let initial = match &a.initial {
        Some(path) => profile_from_json(&read_text(path)?)?,
        None => start_profile(&a.start, a.variant.into(), space.len(), a.seed)?,
    };
    let schedule = parse_schedule(&a.schedule)?;
    let trace = run_dynamics(&space, &initial, &schedule, a.max_rounds, budget(a.budget.budget))?;
    emit(&a.output, &dynamics_trace_to_jsonl(&trace)?)?;
    if let (Some(path), Some(p)) = (&a.final_profile, &trace.final_profile) {
        emit(&Some(path.clone()), &profile_to_json(p)?)?;
    }
    eprintln!(
        "{:?} after {} activations, {} moves",
        trace.status,
        trace.events.len(),
        trace.moves().count()
    );
    Ok(())
}

fn poa(a: PoaArgs) -> Result<()> {
    let space = load_space(&a.space)?;
    let profile = profile_from_json(&read_text(&a.graph)?)?;
    let report = poa_report(&space, &profile, a.max_exact_n, budget(a.budget.budget))?;
    match &a.output {
        Some(_) => emit(&a.output, &json_pretty(&report)?)?,
        None => {
            let mut s = String::new();
            writeln!(s, "equilibrium cost: {}", report.equilibrium_cost)?;
            match (report.so_exact, report.ratio_exact) {
                (Some(so), Some(r)) => writeln!(s, "optimum: {so}\nratio: {r} ({:.4})", r.to_f64())?,
                _ => writeln!(s, "optimum: not computed")?,
            }
            writeln!(
                s,
                "lower bound: {}\nratio vs lower bound: {} ({:.4})",
                report.so_lower_bound,
                report.ratio_lower,
                report.ratio_lower.to_f64()
            )?;
            writeln!(
                s,
                "bound: {} {} ({})",
                if report.bound.strict { "<" } else { "<=" },
                report.bound.value,
                report.bound.name
            )?;
            if let Some(ok) = report.within_bound {
                writeln!(s, "within bound: {ok}")?;
            }
            writeln!(s, "certified: {}", report.certified)?;
            print!("{s}");
        }
    }
    Ok(())
}

fn export(a: ExportArgs) -> Result<()> {
    let space = load_space(&a.space)?;
    let network = network_from_json(&read_text(&a.graph)?)?;
    let body = match a.format {
        ExportFormat::Dot => render_dot(&network, &space)?,
        ExportFormat::Json => network_to_json(&network)?,
        ExportFormat::Svg => {
            let style = SvgStyle {
                width: a.width,
                ..SvgStyle::default()
            };
            let r = render_svg(&network, &space, &style)?;
            if let Some(w) = &r.warning {
                eprintln!("warning: {w}");
            }
            r.document
        }
    };
    emit(&a.output, &body)
}

#[derive(serde::Serialize)]
struct ReachOutput {
    navigable: bool,
    reach: Vec<Vec<bool>>,
}

fn oracle(a: OracleArgs) -> Result<()> {
    let space = load_space(&a.space)?;
    let body = match a.kind {
        OracleKind::BruteSo => {
            let so = brute_force_social_optimum(&space, a.variant.into(), None)?;
            profile_to_json(&so.profile)?
        }
        OracleKind::BruteReach => {
            let path = a.graph.as_ref().ok_or_else(|| anyhow!("brute-reach needs --graph"))?;
            let network = network_from_json(&read_text(path)?)?;
            let reach = brute_reach_matrix(&network, &space)?;
            let navigable = reach
                .iter()
                .enumerate()
                .all(|(s, row)| row.iter().enumerate().all(|(t, &r)| r || s == t));
            json_pretty(&ReachOutput { navigable, reach })?
        }
    };
    emit(&a.output, &body)
}
