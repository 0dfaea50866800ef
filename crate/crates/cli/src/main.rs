//! `navnet` command-line interface.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "navnet", version, about = "Greedy-routing network creation games")]
struct Cli {
    /// On failure, print a JSON error object on stderr.
    #[arg(long, global = true)]
    error_json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance from a spec.
    Generate(GenerateArgs),
    /// Build a network on a point set.
    Construct(ConstructArgs),
    /// Check a profile against an equilibrium criterion.
    Verify(VerifyArgs),
    /// Run best-response dynamics.
    Dynamics(DynamicsArgs),
    /// Compare a profile's cost with the social optimum.
    Poa(PoaArgs),
    /// Convert a graph to DOT, JSON or SVG.
    Export(ExportArgs),
    /// Exhaustive reference computations for small instances.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct SpaceArgs {
    /// Point file (JSON or CSV) or metric file (JSON).
    #[arg(long)]
    points: PathBuf,
    /// Fixed-point scale for CSV input; inferred when absent.
    #[arg(long)]
    scale: Option<u32>,
    /// Accept metric files without checking the metric axioms.
    #[arg(long)]
    no_validate: bool,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Node limit of each exact set-cover search.
    #[arg(long, default_value_t = navnet::routing::SearchBudget::default().max_nodes)]
    budget: u64,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Instance spec: a JSON file or an inline JSON object.
    #[arg(long)]
    spec: String,
    /// Replaces the seed of seeded kinds.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = PointFormat::Json)]
    format: PointFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write the background profile of gadget kinds.
    #[arg(long)]
    profile_output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PointFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    DirectedOptimum,
    ApproxNe,
    Delaunay,
    Nng,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AlgoMode {
    Auto,
    General,
    Euclidean,
    Planar2d,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Directed,
    Undirected,
}

impl From<VariantArg> for navnet::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Directed => navnet::Variant::Directed,
            VariantArg::Undirected => navnet::Variant::Undirected,
        }
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, value_enum)]
    method: Method,
    /// Algorithm mode for `approx-ne`.
    #[arg(long, value_enum, default_value_t = AlgoMode::Auto)]
    mode: AlgoMode,
    /// Edge direction for `nng`.
    #[arg(long, value_enum, default_value_t = VariantArg::Undirected)]
    variant: VariantArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// JSON-lines trace of `approx-ne`.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Profile file with strategies.
    #[arg(long)]
    graph: PathBuf,
    /// `ne`, `beta:<x>` (x a fraction or decimal ≥ 1) or `additive:<k>`.
    #[arg(long, default_value = "ne")]
    criterion: String,
    /// Exit with code 2 unless the verdict is stable.
    #[arg(long)]
    expect_stable: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Full report as JSON.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DynamicsArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Initial profile; overrides `--start`.
    #[arg(long)]
    initial: Option<PathBuf>,
    /// `empty`, `complete` or `random:<p>` with `p` in [0, 1].
    #[arg(long, default_value = "empty")]
    start: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Directed)]
    variant: VariantArg,
    /// `round-robin`, `random:<seed>` or `scripted:<a,b,...>`.
    #[arg(long, default_value = "round-robin")]
    schedule: String,
    #[arg(long, default_value_t = 100)]
    max_rounds: usize,
    /// Seed of a random start.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    /// JSON-lines trace.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Final profile.
    #[arg(long)]
    final_profile: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PoaArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    graph: PathBuf,
    /// Largest undirected instance solved exhaustively.
    #[arg(long, default_value_t = navnet::equilibrium::MAX_BRUTE_UNDIRECTED)]
    max_exact_n: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ExportFormat {
    Dot,
    Json,
    Svg,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    format: ExportFormat,
    #[arg(long, default_value_t = 600.0)]
    width: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OracleKind {
    BruteSo,
    BruteReach,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[command(flatten)]
    space: SpaceArgs,
    /// Network for `brute-reach`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Game variant for `brute-so`.
    #[arg(long, value_enum, default_value_t = VariantArg::Undirected)]
    variant: VariantArg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let error_json = std::env::args().any(|a| a == "--error-json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                // A closed pipe (`navnet --help | head`) is not an error.
                let _ = write!(std::io::stdout(), "{e}");
                return ExitCode::SUCCESS;
            }
            if error_json {
                eprintln!("{}", serde_json::json!({"error": "usage", "message": e.to_string().trim()}));
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            if cli.error_json {
                let kind = e
                    .downcast_ref::<navnet::Error>()
                    .map(navnet::Error::kind)
                    .unwrap_or("error");
                eprintln!("{}", serde_json::json!({"error": kind, "message": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}
