//! `spectral-kcenter`: exhaustive k-center selection and the accompanying
//! numerical studies.
//!
//! Exit codes: 0 success, 1 failed checks or violated invariants,
//! 2 invalid parameters, 3 numerical failures.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kcenter_core::experiments::{
    conjecture_probe, convexity_table, lambda_profile, run_comparison, run_path_checks, CompareConfig, GraphSource,
};
use kcenter_core::{select_best, Error, Metric, MetricParams};

const CSV_HEADER: &str = "# spectral-kcenter v1\n";

#[derive(Parser)]
#[command(name = "spectral-kcenter", version, about = "Spectral k-center selection on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best k ports of one graph under one or more metrics
    Select(SelectArgs),
    /// Agreement of every metric with the perturbed-Laplacian choice
    Compare(CompareArgs),
    /// Closed-form checks on a path graph
    PathTheory(PathArgs),
    /// Smallest eigenvalue against the position of a single port
    LambdaProfile(ProfileArgs),
    /// Optimal k-port shift against k times the one-port shift
    Convexity(ConvexityArgs),
    /// Edge insertion between two optimally perturbed paths
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Perturbation size added at each port
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Stochastic step; defaults to 1/(max degree + 1)
    #[arg(long)]
    tau: Option<f64>,
    /// Charging-energy regulariser
    #[arg(long, default_value_t = 1e-6)]
    rho: f64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn params(&self) -> MetricParams<f64> {
        MetricParams { epsilon: self.epsilon, tau: self.tau, rho: self.rho }
    }
}

#[derive(Args)]
struct SelectArgs {
    /// path:n | fig1 | random-tree:n | random-graph:n,p | edge-list file
    #[arg(long)]
    graph: String,
    #[arg(long)]
    k: usize,
    /// Metric (repeatable): mplse, msub, msup, eigvec, are, gramian
    #[arg(long = "metric", default_value = "mplse")]
    metrics: Vec<String>,
    /// Seed for random graph sources
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include the score of every subset
    #[arg(long)]
    table: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Subset sizes pooled in each row (repeatable)
    #[arg(long = "k", default_values_t = [1usize, 2, 3])]
    k_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PathSize {
    /// Path order
    #[arg(long, conflicts_with = "graph")]
    n: Option<usize>,
    /// Alternative spelling: path:n
    #[arg(long)]
    graph: Option<String>,
}

impl PathSize {
    fn resolve(&self, default: usize) -> Result<usize, Error> {
        match (&self.n, &self.graph) {
            (Some(n), _) => Ok(*n),
            (None, Some(g)) => match g.parse::<GraphSource>()? {
                GraphSource::Path(n) => Ok(n),
                other => Err(Error::InvalidParameter { name: "graph", reason: format!("'{other}' is not a path") }),
            },
            (None, None) => Ok(default),
        }
    }
}

#[derive(Args)]
struct PathArgs {
    #[command(flatten)]
    size: PathSize,
    /// Number of ports for the k-segment checks
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    size: PathSize,
    /// Spacing of a real-valued position grid (integer positions when omitted)
    #[arg(long)]
    step: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ConvexityArgs {
    #[command(flatten)]
    size: PathSize,
    #[arg(long = "k", default_values_t = [1usize, 2, 3])]
    k_list: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Odd path orders (repeatable)
    #[arg(long = "n", default_values_t = [5usize, 7, 9])]
    orders: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Checks(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// CSV with the versioned header comment and optional `# key=value` lines.
fn csv_text(meta: &[(&str, String)], header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut text = String::from(CSV_HEADER);
    for (k, v) in meta {
        text.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    text.push_str(&String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))?);
    Ok(text)
}

fn join(ports: &[usize]) -> String {
    ports.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Shortest representation that round-trips, as in the JSON output.
fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn select(a: SelectArgs) -> Result<(), Failure> {
    let g = a.graph.parse::<GraphSource>()?.build(a.seed)?;
    let params = a.common.params();
    let metrics: Vec<Metric> = a.metrics.iter().map(|m| m.parse()).collect::<Result<_, _>>()?;
    let results = metrics.iter().map(|&m| select_best(&g, a.k, m, &params, a.table)).collect::<Result<Vec<_>, _>>()?;
    let text = match a.format {
        Format::Json if results.len() == 1 => json(&results[0])?,
        Format::Json => json(&results)?,
        Format::Csv => csv_text(
            &[("graph", a.graph.clone()), ("seed", a.seed.to_string())],
            &["metric", "k", "epsilon", "tau", "rho", "best", "score", "ties"],
            results
                .iter()
                .map(|r| {
                    vec![
                        r.metric.to_string(),
                        r.k.to_string(),
                        num(r.epsilon),
                        num(r.tau),
                        num(r.rho),
                        join(r.best.indices()),
                        num(r.score),
                        r.ties.iter().map(|t| join(t.indices())).collect::<Vec<_>>().join(";"),
                    ]
                })
                .collect(),
        )?,
    };
    emit(&a.common.out, &text)
}

fn compare(a: CompareArgs) -> Result<(), Failure> {
    let cfg = CompareConfig {
        trials: a.trials,
        seed: a.seed,
        params: a.common.params(),
        k_list: a.k_list.clone(),
        ..CompareConfig::default()
    };
    let report = run_comparison(&cfg)?;
    let text = match a.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let meta = [
                ("seed", cfg.seed.to_string()),
                ("trials", cfg.trials.to_string()),
                ("epsilon", cfg.params.epsilon.to_string()),
                ("tau", cfg.params.tau.map_or("1/(max degree + 1)".into(), |t| t.to_string())),
                ("rho", cfg.params.rho.to_string()),
                ("k_pooled", join(&cfg.k_list)),
                ("tree_law", "uniform labelled tree (Pruefer)".into()),
                ("graph_law", format!("G(n, {}) conditioned on connectivity", cfg.edge_prob)),
                ("reference", "mplse".into()),
            ];
            let mut rows = Vec::new();
            for r in &report.rows {
                for m in &r.metrics {
                    rows.push(vec![
                        r.class.name().to_string(),
                        r.n.to_string(),
                        m.metric.to_string(),
                        r.instances.to_string(),
                        m.pooled.matches.to_string(),
                        m.pooled.total.to_string(),
                        m.pooled.skipped.to_string(),
                        m.percent().map(|p| format!("{p:.2}")).unwrap_or_default(),
                    ]);
                }
            }
            csv_text(&meta, &["class", "n", "metric", "instances", "matches", "total", "skipped", "percent"], rows)?
        }
    };
    emit(&a.common.out, &text)
}

fn path_theory(a: PathArgs) -> Result<(), Failure> {
    let n = a.size.resolve(11)?;
    let checks = run_path_checks(n, a.k, a.common.epsilon)?;
    let text = match a.format {
        Format::Json => json(&checks)?,
        Format::Csv => csv_text(
            &[("n", n.to_string()), ("epsilon", a.common.epsilon.to_string())],
            &["check", "passed", "value", "tolerance"],
            checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), num(c.value), num(c.tolerance)]).collect(),
        )?,
    };
    emit(&a.common.out, &text)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(format!("failed checks: {}", failed.join(", "))))
    }
}

fn profile(a: ProfileArgs) -> Result<(), Failure> {
    let n = a.size.resolve(11)?;
    let rows = lambda_profile(n, a.common.epsilon, a.step)?;
    let text = csv_text(
        &[("n", n.to_string()), ("epsilon", a.common.epsilon.to_string())],
        &["p", "series_value", "exact_value"],
        rows.iter().map(|r| vec![num(r.p), num(r.series), opt(r.exact)]).collect(),
    )?;
    emit(&a.common.out, &text)
}

fn convexity(a: ConvexityArgs) -> Result<(), Failure> {
    let n = a.size.resolve(15)?;
    let (rows, skipped) = convexity_table(n, &a.k_list, a.common.epsilon)?;
    let text = csv_text(
        &[("n", n.to_string()), ("epsilon", a.common.epsilon.to_string()), ("skipped_k", join(&skipped))],
        &["k", "best", "lambda_star", "k_times_single", "ratio"],
        rows.iter()
            .map(|r| {
                vec![r.k.to_string(), join(r.best.indices()), num(r.lambda_star), num(r.k_times_single), num(r.ratio)]
            })
            .collect(),
    )?;
    emit(&a.common.out, &text)
}

fn conjecture(a: ConjectureArgs) -> Result<(), Failure> {
    let reports = a.orders.iter().map(|&n| conjecture_probe(n, a.common.epsilon)).collect::<Result<Vec<_>, _>>()?;
    let text = match a.format {
        Format::Json => json(&reports)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                rows.push(vec![
                    r.n.to_string(),
                    String::new(),
                    String::new(),
                    num(r.single + r.union_deviation),
                    num(r.union_deviation),
                ]);
                for b in &r.bridges {
                    rows.push(vec![
                        r.n.to_string(),
                        b.u.to_string(),
                        b.v.to_string(),
                        num(b.lambda_min),
                        num(b.deviation),
                    ]);
                }
            }
            csv_text(&[("epsilon", a.common.epsilon.to_string())], &["n", "u", "v", "lambda_min", "deviation"], rows)?
        }
    };
    emit(&a.common.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Select(a) => select(a),
        Command::Compare(a) => compare(a),
        Command::PathTheory(a) => path_theory(a),
        Command::LambdaProfile(a) => profile(a),
        Command::Convexity(a) => convexity(a),
        Command::Conjecture(a) => conjecture(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Checks(m) => (1, m),
                Failure::Core(e @ Error::InvariantViolation(_)) => (1, e.to_string()),
                Failure::Core(e) if e.is_parameter_error() => (2, e.to_string()),
                Failure::Core(e) => (3, e.to_string()),
                Failure::Io(m) => (2, m),
            };
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(code)
        }
    }
}
