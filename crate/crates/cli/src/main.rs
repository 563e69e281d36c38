//! `corebreak` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O or malformed input, 3 timeout.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corebreak::harness::{
    lambda_table, run_exact_gap, run_method, run_sweep_to_path, write_exact_gap_csv, write_lambda_csv,
    FORMAT_VERSION,
};
use corebreak::{
    exact_mvc, load_edge_list_file, write_edge_list, ApproxRule, Error, ExactGapConfig, Graph, MethodKind,
    MethodSpec, Model, StateChoice, SweepConfig,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "corebreak", version, about = "Leaf-removal core breaking and vertex-cover heuristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph as an edge list.
    Generate(GenerateArgs),
    /// Break the core of a graph and report one JSON record.
    Break(BreakArgs),
    /// Print a vertex cover of a graph as JSON.
    Cover(CoverArgs),
    /// Run every method over a grid of random graphs and write CSV.
    Sweep(SweepArgs),
    /// Compare the heuristic cover with the exact optimum on small ER graphs.
    ExactGap(ExactGapArgs),
    /// Print the power-method λ estimates of a graph as CSV.
    Lambda(LambdaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Er,
    Sf,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Er => Model::Er,
            ModelArg::Sf => Model::Sf,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    avg_degree: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Destination file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Options shared by every command that runs a deletion method.
#[derive(Args, Clone)]
struct MethodOpts {
    /// Walk length l for Core Influence.
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Ball radius for Collective Influence.
    #[arg(long, default_value_t = 2)]
    ci_radius: usize,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    /// Convergence tolerance for PageRank and eigenvector centrality.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Rerank static baselines on the residual graph after every deletion.
    #[arg(long)]
    recompute: bool,
    /// Approximate-update rule for hl-approx.
    #[arg(long, value_enum, default_value_t = RuleArg::ZeroBoth)]
    approx_rule: RuleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    ZeroBoth,
    Literal,
}

impl MethodOpts {
    fn spec(&self, kind: MethodKind) -> MethodSpec {
        MethodSpec {
            kind,
            order: self.order,
            ci_radius: self.ci_radius,
            damping: self.damping,
            tolerance: self.tolerance,
            recompute: self.recompute,
            approx_rule: match self.approx_rule {
                RuleArg::ZeroBoth => ApproxRule::ZeroBoth,
                RuleArg::Literal => ApproxRule::Literal,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UpdateArg {
    Exact,
    Approx,
    ApproxLiteral,
    Static,
    Adaptive,
}

#[derive(Args)]
struct BreakArgs {
    graph: PathBuf,
    /// hl, hl-approx, dc, kc, bc, cc, ci, hda, pr or ec.
    #[arg(long, default_value = "hl")]
    method: String,
    /// State update for hl (exact, approx, approx-literal) or ranking mode
    /// for baselines (static, adaptive).
    #[arg(long, value_enum)]
    update: Option<UpdateArg>,
    #[command(flatten)]
    opts: MethodOpts,
}

#[derive(Args)]
struct CoverArgs {
    #[command(flatten)]
    run: BreakArgs,
    /// Solve minimum vertex cover exactly instead.
    #[arg(long)]
    exact: bool,
    /// Time budget in seconds for --exact.
    #[arg(long, default_value_t = 60.0)]
    budget_secs: f64,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated models.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "er,sf")]
    models: Vec<ModelArg>,
    /// Comma-separated list or inclusive integer range `a..b`.
    #[arg(long, default_value = "3..10")]
    degrees: String,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    /// Comma-separated methods, or `all`.
    #[arg(long, default_value = "all")]
    methods: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
    /// Record wall-clock milliseconds per run (output no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[command(flatten)]
    opts: MethodOpts,
}

#[derive(Args)]
struct ExactGapArgs {
    #[arg(long, value_delimiter = ',', default_value = "80,100,120")]
    nodes: Vec<usize>,
    #[arg(long, default_value = "3..7")]
    degrees: String,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Per-graph time budget for the exact solver, in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget_secs: f64,
    /// Destination file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[command(flatten)]
    opts: MethodOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    /// Core flags from a full peel.
    Exact,
    /// Every node flagged as core.
    All,
}

#[derive(Args)]
struct LambdaArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Add the dense spectral radius of R (requires 2M ≤ 2000).
    #[arg(long)]
    dense: bool,
    #[arg(long, value_enum, default_value_t = StateArg::Exact)]
    state: StateArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Csv(_) | Error::Parse { .. } | Error::EmptyGraph => 2,
        Error::Timeout { .. } => 3,
        _ => 1,
    }
}

fn run(command: Command) -> corebreak::Result<()> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Break(a) => break_cmd(a),
        Command::Cover(a) => cover_cmd(a),
        Command::Sweep(a) => sweep(a),
        Command::ExactGap(a) => exact_gap(a),
        Command::Lambda(a) => lambda(a),
    }
}

fn open_output(path: Option<&Path>) -> corebreak::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn generate(a: GenerateArgs) -> corebreak::Result<()> {
    let model = Model::from(a.model);
    let g = model.generate(a.nodes, a.avg_degree, a.seed)?;
    let header = vec![
        FORMAT_VERSION.to_string(),
        format!("generate model={} nodes={} avg_degree={} seed={}", model, a.nodes, a.avg_degree, a.seed),
        "rng=ChaCha8 seeded from the u64 seed".to_string(),
    ];
    let out = open_output(a.output.as_deref())?;
    write_edge_list(&g, &header, out)
}

fn parse_method(name: &str, update: Option<UpdateArg>, opts: &MethodOpts) -> corebreak::Result<MethodSpec> {
    let mut spec = opts.spec(name.parse()?);
    match (spec.kind, update) {
        (_, None) => {}
        (MethodKind::Hl | MethodKind::HlApprox, Some(UpdateArg::Exact)) => spec.kind = MethodKind::Hl,
        (MethodKind::Hl | MethodKind::HlApprox, Some(UpdateArg::Approx)) => {
            spec.kind = MethodKind::HlApprox;
            spec.approx_rule = ApproxRule::ZeroBoth;
        }
        (MethodKind::Hl | MethodKind::HlApprox, Some(UpdateArg::ApproxLiteral)) => {
            spec.kind = MethodKind::HlApprox;
            spec.approx_rule = ApproxRule::Literal;
        }
        (k, Some(UpdateArg::Static | UpdateArg::Adaptive)) if !matches!(k, MethodKind::Hl | MethodKind::HlApprox) => {
            spec.recompute = matches!(update, Some(UpdateArg::Adaptive));
            if k.is_inherently_adaptive() && !spec.recompute {
                return Err(Error::InvalidParameter(format!("{k} is always adaptive")));
            }
        }
        (k, Some(_)) => {
            return Err(Error::InvalidParameter(format!("update mode does not apply to {k}")));
        }
    }
    Ok(spec)
}

fn load(path: &Path) -> corebreak::Result<Graph> {
    let loaded = load_edge_list_file(path)?;
    if loaded.dropped.self_loops + loaded.dropped.duplicates > 0 {
        eprintln!(
            "warning: dropped {} self-loops and {} duplicate edges",
            loaded.dropped.self_loops, loaded.dropped.duplicates
        );
    }
    Ok(loaded.graph)
}

fn emit_json(value: &serde_json::Value) -> corebreak::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(io::Error::other)?;
    writeln!(out)?;
    Ok(())
}

fn break_cmd(a: BreakArgs) -> corebreak::Result<()> {
    let spec = parse_method(&a.method, a.update, &a.opts)?;
    let g = load(&a.graph)?;
    let (record, _) = run_method(&g, &spec)?;
    emit_json(&serde_json::to_value(&record).map_err(io::Error::other)?)
}

fn cover_cmd(a: CoverArgs) -> corebreak::Result<()> {
    let spec = parse_method(&a.run.method, a.run.update, &a.run.opts)?;
    let g = load(&a.run.graph)?;
    let labels = |ids: &[usize]| -> Vec<u64> { ids.iter().map(|&v| g.label(v)).collect() };
    if a.exact {
        if !a.budget_secs.is_finite() || a.budget_secs < 0.0 {
            return Err(Error::InvalidParameter("budget must be a non-negative number of seconds".into()));
        }
        let exact = exact_mvc(&g, Duration::from_secs_f64(a.budget_secs))?;
        return emit_json(&json!({
            "n": g.node_count(),
            "m": g.edge_count(),
            "method": "exact",
            "cover_size": exact.size,
            "nodes_searched": exact.nodes_searched,
            "elapsed_ms": exact.elapsed.as_secs_f64() * 1e3,
            "cover": labels(&exact.cover),
        }));
    }
    let (record, cover) = run_method(&g, &spec)?;
    let matched: Vec<[u64; 2]> = cover.matching.iter().map(|&(u, v)| [g.label(u), g.label(v)]).collect();
    emit_json(&json!({
        "record": record,
        "deleted": labels(&cover.deleted),
        "matching": matched,
        "cover": labels(&cover.cover),
    }))
}

fn parse_degrees(s: &str) -> corebreak::Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("invalid degree list {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).map(f64::from).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().ok().filter(|d| d.is_finite() && *d >= 0.0).ok_or_else(bad))
        .collect()
}

fn parse_methods(s: &str, opts: &MethodOpts) -> corebreak::Result<Vec<MethodSpec>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(MethodKind::ALL.into_iter().map(|k| opts.spec(k)).collect());
    }
    s.split(',').map(|t| Ok(opts.spec(t.trim().parse()?))).collect()
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> corebreak::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn sweep(a: SweepArgs) -> corebreak::Result<()> {
    let config = SweepConfig {
        models: a.models.iter().map(|&m| m.into()).collect(),
        degrees: parse_degrees(&a.degrees)?,
        trials: a.trials,
        nodes: a.nodes,
        methods: parse_methods(&a.methods, &a.opts)?,
        base_seed: a.seed,
        timing: a.timing,
    };
    let rows = with_threads(a.threads, || run_sweep_to_path(&config, &a.output))??;
    eprintln!("wrote {} rows to {}", rows.len(), a.output.display());
    Ok(())
}

fn exact_gap(a: ExactGapArgs) -> corebreak::Result<()> {
    if !a.budget_secs.is_finite() || a.budget_secs < 0.0 {
        return Err(Error::InvalidParameter("budget must be a non-negative number of seconds".into()));
    }
    let config = ExactGapConfig {
        nodes: a.nodes,
        degrees: parse_degrees(&a.degrees)?,
        trials: a.trials,
        base_seed: a.seed,
        budget: Duration::from_secs_f64(a.budget_secs),
        method: a.opts.spec(MethodKind::Hl),
    };
    let (rows, cells) = with_threads(a.threads, || run_exact_gap(&config))??;
    let out = open_output(a.output.as_deref())?;
    write_exact_gap_csv(&config, &rows, &cells, out)
}

fn lambda(a: LambdaArgs) -> corebreak::Result<()> {
    if a.max_order == 0 {
        return Err(Error::InvalidParameter("max order must be at least 1".into()));
    }
    let g = load(&a.graph)?;
    let choice = match a.state {
        StateArg::Exact => StateChoice::Peeled,
        StateArg::All => StateChoice::AllCore,
    };
    let rows = lambda_table(&g, choice, a.max_order, a.dense)?;
    let preamble = vec![format!(
        "lambda graph={} n={} m={} state={}",
        a.graph.display(),
        g.node_count(),
        g.edge_count(),
        match choice {
            StateChoice::Peeled => "exact",
            StateChoice::AllCore => "all",
        }
    )];
    write_lambda_csv(&rows, &preamble, io::stdout().lock())
}
