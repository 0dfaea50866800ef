use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn navnet(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_navnet"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = navnet(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn directed_optimum_on_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["generate", "--spec", r#"{"kind":"line","positions":[0,1,3]}"#, "-o", "line.json"]);
    ok(d, &["construct", "--points", "line.json", "--method", "directed-optimum", "-o", "opt.json"]);
    let p = read_json(&d.join("opt.json"));
    let sizes: Vec<usize> = (0..3)
        .map(|i| p["strategies"][i.to_string()].as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, [1, 2, 1]);
    let report = ok(d, &["poa", "--points", "line.json", "--graph", "opt.json"]);
    assert!(report.contains("ratio: 1 "), "{report}");
    let out = navnet(d, &["verify", "--points", "line.json", "--graph", "opt.json", "--expect-stable"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict: NE"));
}

#[test]
fn approx_ne_in_plane_is_additive_two_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "generate",
            "--spec",
            r#"{"kind":"uniform_square","n":10,"side":50,"seed":1}"#,
            "--seed",
            "7",
            "-o",
            "pts.json",
        ],
    );
    ok(
        d,
        &[
            "construct", "--points", "pts.json", "--method", "approx-ne", "--mode", "planar2d", "-o", "ne.json",
            "--trace", "trace.jsonl",
        ],
    );
    let trace = std::fs::read_to_string(d.join("trace.jsonl")).unwrap();
    assert!(trace.lines().next().unwrap().contains(r#""record":"start""#));
    let out = navnet(
        d,
        &[
            "verify", "--points", "pts.json", "--graph", "ne.json", "--criterion", "additive:2", "--expect-stable",
            "-o", "report.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(read_json(&d.join("report.json"))["verdict"]["verdict"], "additive_ne");
}

#[test]
fn unstable_profile_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["generate", "--spec", r#"{"kind":"line","positions":[0,1,3]}"#, "-o", "line.json"]);
    // Agent 0 buys both edges although one suffices.
    std::fs::write(
        d.join("bad.json"),
        r#"{"variant":"directed","n":3,"strategies":{"0":[1,2],"1":[0,2],"2":[1]}}"#,
    )
    .unwrap();
    let out = navnet(d, &["verify", "--points", "line.json", "--graph", "bad.json", "--expect-stable"]);
    assert_eq!(out.status.code(), Some(2));
    let out = navnet(d, &["verify", "--points", "line.json", "--graph", "bad.json", "--criterion", "beta:3/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict: NotStable"));
    let out = navnet(d, &["verify", "--points", "line.json", "--graph", "bad.json", "--criterion", "beta:2.0"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict: BetaNE(2)"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = navnet(d, &["verify", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = navnet(d, &["--error-json", "construct", "--points", "missing.json", "--method", "nng"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(err["message"].as_str().unwrap().contains("missing.json"));
}

#[test]
fn invalid_metric_reports_kind() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("m.json"), r#"{"n":3,"dist":[[0,1,5],[1,0,1],[5,1,0]]}"#).unwrap();
    let out = navnet(d, &["--error-json", "construct", "--points", "m.json", "--method", "directed-optimum"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_ne!(err["error"], "usage");
    assert_ne!(err["error"], "error");
    ok(d, &["construct", "--points", "m.json", "--no-validate", "--method", "directed-optimum"]);
}

#[test]
fn dynamics_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &["generate", "--spec", r#"{"kind":"uniform_square","n":8,"side":40,"seed":2}"#, "--format", "csv", "-o", "p.csv"],
    );
    ok(
        d,
        &[
            "dynamics", "--points", "p.csv", "--start", "random:0.4", "--seed", "3", "--schedule", "random:9", "-o",
            "dyn.jsonl", "--final-profile", "final.json",
        ],
    );
    let last = std::fs::read_to_string(d.join("dyn.jsonl")).unwrap();
    assert!(last.lines().last().unwrap().contains(r#""status":"converged""#));
    ok(d, &["verify", "--points", "p.csv", "--graph", "final.json", "--expect-stable"]);
    let dot = ok(d, &["export", "--points", "p.csv", "--graph", "final.json", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    let svg = ok(d, &["export", "--points", "p.csv", "--graph", "final.json", "--format", "svg"]);
    assert_eq!(svg.matches("<circle id=\"p").count(), 8);
    ok(d, &["construct", "--points", "p.csv", "--method", "delaunay", "-o", "dt.json"]);
    let reach: Value = serde_json::from_str(&ok(
        d,
        &["oracle", "brute-reach", "--points", "p.csv", "--graph", "dt.json"],
    ))
    .unwrap();
    assert_eq!(reach["navigable"], true);
}

#[test]
fn gadget_profile_and_brute_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "generate",
            "--spec",
            r#"{"kind":"set_cover_gadget","elements":3,"sets":[[0,1],[1,2]],"variant":"undirected"}"#,
            "-o",
            "g.json",
            "--profile-output",
            "bg.json",
        ],
    );
    assert_eq!(read_json(&d.join("bg.json"))["n"], 8);
    ok(d, &["generate", "--spec", r#"{"kind":"grid","rows":2,"cols":2,"spacing":1}"#, "-o", "sq.json"]);
    let so = ok(d, &["oracle", "brute-so", "--points", "sq.json"]);
    let so: Value = serde_json::from_str(&so).unwrap();
    let edges: usize = so["strategies"]
        .as_object()
        .unwrap()
        .values()
        .map(|s| s.as_array().unwrap().len())
        .sum();
    assert_eq!(edges, 4);
}
