//! Experiment drivers: per-run records, multi-method sweeps over random
//! graphs, heuristic-vs-exact gap tables, and λ tables.
//!
//! Trial seeds are `trial_seed(base, model, degree, trial)`, a fixed
//! SplitMix64 chain, so any single trial can be rerun in isolation. Sweep
//! output is ordered by (model, degree, trial, method) regardless of how many
//! worker threads ran.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::breaker::{break_core, MethodKind, MethodSpec};
use crate::cover::{cover_from_trace, exact_mvc};
use crate::error::{Error, Result};
use crate::generate::{generate_er, generate_sf};
use crate::graph::Graph;
use crate::spectral::{build_r_matrix, dense_spectral_radius, lambda_power_series, PathFamily};
use crate::state::NodeState;

pub const FORMAT_VERSION: &str = concat!("corebreak ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Er,
    Sf,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Er => "er",
            Model::Sf => "sf",
        }
    }

    pub fn generate(self, n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
        match self {
            Model::Er => generate_er(n, avg_degree, seed),
            Model::Sf => generate_sf(n, avg_degree, seed),
        }
    }

    fn tag(self) -> u64 {
        match self {
            Model::Er => 1,
            Model::Sf => 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Model::Er),
            "sf" => Ok(Model::Sf),
            _ => Err(Error::InvalidParameter(format!("unknown graph model {s:?}"))),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// `mix(mix(mix(base ^ model) ^ degree.to_bits()) ^ trial)` with `mix` the
/// SplitMix64 finalizer and model tags er = 1, sf = 2.
pub fn trial_seed(base_seed: u64, model: Model, avg_degree: f64, trial: usize) -> u64 {
    let h = splitmix64(base_seed ^ model.tag());
    let h = splitmix64(h ^ avg_degree.to_bits());
    splitmix64(h ^ trial as u64)
}

/// Outcome of one break-then-cover run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub model: String,
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub trial: Option<usize>,
    pub seed: Option<u64>,
    pub method: String,
    pub update: String,
    pub deleted: usize,
    pub matching: usize,
    pub cover: usize,
    pub elapsed_ms: Option<f64>,
}

/// Breaks the core of `g` with `spec` and covers the residual.
pub fn run_method(g: &Graph, spec: &MethodSpec) -> Result<(ResultRecord, crate::cover::CoverResult)> {
    let started = Instant::now();
    let trace = break_core(g, spec)?;
    let cover = cover_from_trace(g, &trace)?;
    let elapsed = started.elapsed();
    if cover.size() != trace.transition + cover.matching.len() {
        return Err(Error::InvalidCover("cover size differs from t + matching".into()));
    }
    let record = ResultRecord {
        model: "file".into(),
        n: g.node_count(),
        m: g.edge_count(),
        avg_degree: average_degree(g),
        trial: None,
        seed: None,
        method: spec.kind.to_string(),
        update: spec.update_label().to_string(),
        deleted: trace.transition,
        matching: cover.matching.len(),
        cover: cover.size(),
        elapsed_ms: Some(elapsed.as_secs_f64() * 1e3),
    };
    Ok((record, cover))
}

pub fn average_degree(g: &Graph) -> f64 {
    if g.node_count() == 0 {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / g.node_count() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub models: Vec<Model>,
    pub degrees: Vec<f64>,
    pub trials: usize,
    pub nodes: usize,
    pub methods: Vec<MethodSpec>,
    pub base_seed: u64,
    /// Fill the `elapsed_ms` column. Timings make output differ between runs.
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            models: vec![Model::Er, Model::Sf],
            degrees: (3..=10).map(f64::from).collect(),
            trials: 30,
            nodes: 1000,
            methods: MethodKind::ALL.into_iter().map(MethodSpec::new).collect(),
            base_seed: 1,
            timing: false,
        }
    }
}

impl SweepConfig {
    fn preamble(&self) -> Vec<String> {
        let join = |v: Vec<String>| v.join(",");
        vec![
            FORMAT_VERSION.to_string(),
            format!(
                "sweep models={} degrees={} trials={} nodes={} base_seed={} timing={}",
                join(self.models.iter().map(|m| m.to_string()).collect()),
                join(self.degrees.iter().map(|d| d.to_string()).collect()),
                self.trials,
                self.nodes,
                self.base_seed,
                self.timing
            ),
            format!("methods={}", join(self.methods.iter().map(method_label).collect())),
            "seed=splitmix64(splitmix64(splitmix64(base_seed^model)^degree_bits)^trial) er=1 sf=2".into(),
        ]
    }
}

fn method_label(spec: &MethodSpec) -> String {
    let mut label = format!("{}:{}", spec.kind, spec.update_label());
    match spec.kind {
        MethodKind::Hl | MethodKind::HlApprox => label += &format!(":l={}", spec.order),
        MethodKind::Ci => label += &format!(":radius={}", spec.ci_radius),
        MethodKind::Pr => label += &format!(":damping={}", spec.damping),
        _ => {}
    }
    label
}

pub const SWEEP_HEADER: [&str; 17] = [
    "kind",
    "model",
    "n",
    "avg_degree",
    "trial",
    "seed",
    "m",
    "method",
    "update",
    "deleted",
    "matching",
    "cover",
    "deleted_sd",
    "deleted_se",
    "cover_sd",
    "cover_se",
    "elapsed_ms",
];

type RowKey = (String, String, usize, String, String);

fn row_key(r: &ResultRecord) -> RowKey {
    (
        r.model.clone(),
        r.avg_degree.to_string(),
        r.trial.unwrap_or(0),
        r.method.clone(),
        r.update.clone(),
    )
}

fn trial_row(r: &ResultRecord) -> Vec<String> {
    vec![
        "trial".into(),
        r.model.clone(),
        r.n.to_string(),
        r.avg_degree.to_string(),
        r.trial.map(|t| t.to_string()).unwrap_or_default(),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.m.to_string(),
        r.method.clone(),
        r.update.clone(),
        r.deleted.to_string(),
        r.matching.to_string(),
        r.cover.to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        r.elapsed_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
    ]
}

fn parse_trial_row(row: &csv::StringRecord) -> Option<ResultRecord> {
    if row.get(0)? != "trial" {
        return None;
    }
    let field = |i: usize| row.get(i).unwrap_or("");
    Some(ResultRecord {
        model: field(1).to_string(),
        n: field(2).parse().ok()?,
        avg_degree: field(3).parse().ok()?,
        trial: field(4).parse().ok(),
        seed: field(5).parse().ok(),
        m: field(6).parse().ok()?,
        method: field(7).to_string(),
        update: field(8).to_string(),
        deleted: field(9).parse().ok()?,
        matching: field(10).parse().ok()?,
        cover: field(11).parse().ok()?,
        elapsed_ms: field(16).parse().ok(),
    })
}

/// Mean, sample standard deviation and standard error.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    (mean, sd, sd / n.sqrt())
}

/// Per-(model, degree, method) aggregates of trial rows, in row order.
pub fn aggregate_rows(rows: &[ResultRecord]) -> Vec<Vec<String>> {
    let mut groups: Vec<(RowKey, Vec<&ResultRecord>)> = Vec::new();
    let mut index: HashMap<RowKey, usize> = HashMap::new();
    for r in rows {
        let mut key = row_key(r);
        key.2 = 0;
        let slot = *index.entry(key.clone()).or_insert_with(|| {
            groups.push((key, Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(r);
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let pick = |f: fn(&ResultRecord) -> usize| -> Vec<f64> {
                members.iter().map(|r| f(r) as f64).collect()
            };
            let (del, del_sd, del_se) = summarize(&pick(|r| r.deleted));
            let (mat, _, _) = summarize(&pick(|r| r.matching));
            let (cov, cov_sd, cov_se) = summarize(&pick(|r| r.cover));
            let (m, _, _) = summarize(&pick(|r| r.m));
            let first = members[0];
            let f4 = |x: f64| format!("{x:.4}");
            vec![
                "mean".into(),
                first.model.clone(),
                first.n.to_string(),
                first.avg_degree.to_string(),
                members.len().to_string(),
                String::new(),
                f4(m),
                first.method.clone(),
                first.update.clone(),
                f4(del),
                f4(mat),
                f4(cov),
                f4(del_sd),
                f4(del_se),
                f4(cov_sd),
                f4(cov_se),
                String::new(),
            ]
        })
        .collect()
}

fn read_completed(path: &Path) -> Result<Vec<ResultRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.records() {
        // a torn final line from an interrupted run is simply recomputed
        let Ok(row) = row else { continue };
        if let Some(r) = parse_trial_row(&row) {
            rows.push(r);
        }
    }
    Ok(rows)
}

fn partial_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

/// Computes every trial row of the sweep, in canonical order.
///
/// `done` supplies rows already computed by an earlier run; matching rows
/// are reused instead of recomputed. `sink` sees every row as soon as its
/// cell finishes.
pub fn sweep_rows(
    config: &SweepConfig,
    done: &[ResultRecord],
    mut sink: impl FnMut(&ResultRecord) -> Result<()>,
) -> Result<Vec<ResultRecord>> {
    if config.trials == 0 || config.methods.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one trial and one method".into()));
    }
    let known: HashMap<RowKey, &ResultRecord> = done
        .iter()
        .filter(|r| r.n == config.nodes && r.trial.is_some())
        .map(|r| (row_key(r), r))
        .collect();
    let mut all = Vec::new();
    for &model in &config.models {
        for &degree in &config.degrees {
            let cell: Vec<Vec<ResultRecord>> = (0..config.trials)
                .into_par_iter()
                .map(|trial| run_trial(config, model, degree, trial, &known))
                .collect::<Result<_>>()?;
            for r in cell.into_iter().flatten() {
                sink(&r)?;
                all.push(r);
            }
        }
    }
    Ok(all)
}

fn run_trial(
    config: &SweepConfig,
    model: Model,
    degree: f64,
    trial: usize,
    known: &HashMap<RowKey, &ResultRecord>,
) -> Result<Vec<ResultRecord>> {
    let seed = trial_seed(config.base_seed, model, degree, trial);
    let mut graph: Option<Graph> = None;
    let mut rows = Vec::with_capacity(config.methods.len());
    for spec in &config.methods {
        let key = (
            model.to_string(),
            degree.to_string(),
            trial,
            spec.kind.to_string(),
            spec.update_label().to_string(),
        );
        if let Some(&prev) = known.get(&key) {
            if prev.seed == Some(seed) {
                let mut r = prev.clone();
                if !config.timing {
                    r.elapsed_ms = None;
                }
                rows.push(r);
                continue;
            }
        }
        if graph.is_none() {
            graph = Some(model.generate(config.nodes, degree, seed)?);
        }
        let g = graph.as_ref().unwrap();
        let (mut r, _) = run_method(g, spec)?;
        r.model = model.to_string();
        r.avg_degree = degree;
        r.trial = Some(trial);
        r.seed = Some(seed);
        if !config.timing {
            r.elapsed_ms = None;
        }
        rows.push(r);
    }
    Ok(rows)
}

/// Writes the sweep CSV: `#` preamble, header, trial rows, then one `mean`
/// row per (model, degree, method).
pub fn write_sweep_csv<W: Write>(config: &SweepConfig, rows: &[ResultRecord], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for line in config.preamble() {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record(trial_row(r))?;
    }
    for agg in aggregate_rows(rows) {
        w.write_record(agg)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a sweep into `path`, resuming from completed rows found in `path`
/// or in its `.partial` sibling left by an interrupted run.
///
/// Rows are flushed to the `.partial` file as they complete; the final file
/// is written in canonical order and the partial file removed.
pub fn run_sweep_to_path(config: &SweepConfig, path: &Path) -> Result<Vec<ResultRecord>> {
    let partial = partial_path(path);
    let mut done = read_completed(path)?;
    done.extend(read_completed(&partial)?);

    let mut progress = csv::Writer::from_writer(File::create(&partial)?);
    progress.write_record(SWEEP_HEADER)?;
    let rows = sweep_rows(config, &done, |r| {
        progress.write_record(trial_row(r))?;
        progress.flush()?;
        Ok(())
    })?;
    drop(progress);

    write_sweep_csv(config, &rows, File::create(path)?)?;
    std::fs::remove_file(&partial)?;
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactGapConfig {
    pub nodes: Vec<usize>,
    pub degrees: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub budget: Duration,
    pub method: MethodSpec,
}

impl Default for ExactGapConfig {
    fn default() -> Self {
        ExactGapConfig {
            nodes: vec![80, 100, 120],
            degrees: (3..=7).map(f64::from).collect(),
            trials: 30,
            base_seed: 1,
            budget: Duration::from_secs(60),
            method: MethodSpec::new(MethodKind::Hl),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: usize,
    pub avg_degree: f64,
    pub trial: usize,
    pub seed: u64,
    pub m: usize,
    pub heuristic: usize,
    /// `None` when the exact solver ran out of budget.
    pub exact: Option<usize>,
}

impl GapRow {
    /// `(heuristic - exact) / N` in percent.
    pub fn gap_percent(&self) -> Option<f64> {
        self.exact
            .map(|e| (self.heuristic as f64 - e as f64) / self.n as f64 * 100.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapCell {
    pub n: usize,
    pub avg_degree: f64,
    pub mean_gap_percent: f64,
    pub solved: usize,
    pub timeouts: usize,
}

/// ER graphs only. An average degree of 0 means the edgeless graph.
pub fn run_exact_gap(config: &ExactGapConfig) -> Result<(Vec<GapRow>, Vec<GapCell>)> {
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for &n in &config.nodes {
        for &degree in &config.degrees {
            let cell_rows: Vec<GapRow> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = trial_seed(config.base_seed, Model::Er, degree, trial);
                    let g = if degree == 0.0 { Graph::empty(n) } else { generate_er(n, degree, seed)? };
                    let (record, _) = run_method(&g, &config.method)?;
                    let exact = match exact_mvc(&g, config.budget) {
                        Ok(e) => Some(e.size),
                        Err(Error::Timeout { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    Ok(GapRow {
                        n,
                        avg_degree: degree,
                        trial,
                        seed,
                        m: g.edge_count(),
                        heuristic: record.cover,
                        exact,
                    })
                })
                .collect::<Result<_>>()?;
            let gaps: Vec<f64> = cell_rows.iter().filter_map(GapRow::gap_percent).collect();
            cells.push(GapCell {
                n,
                avg_degree: degree,
                mean_gap_percent: summarize(&gaps).0,
                solved: gaps.len(),
                timeouts: cell_rows.len() - gaps.len(),
            });
            rows.extend(cell_rows);
        }
    }
    Ok((rows, cells))
}

pub fn write_exact_gap_csv<W: Write>(
    config: &ExactGapConfig,
    rows: &[GapRow],
    cells: &[GapCell],
    out: W,
) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "# {FORMAT_VERSION}")?;
    writeln!(
        out,
        "# exact-gap nodes={} degrees={} trials={} base_seed={} budget_s={} method={}",
        config.nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
        config.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        config.trials,
        config.base_seed,
        config.budget.as_secs_f64(),
        method_label(&config.method)
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "kind", "n", "avg_degree", "trial", "seed", "m", "heuristic_cover", "exact_cover", "gap_percent",
        "status",
    ])?;
    for r in rows {
        w.write_record([
            "trial".to_string(),
            r.n.to_string(),
            r.avg_degree.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.m.to_string(),
            r.heuristic.to_string(),
            r.exact.map(|e| e.to_string()).unwrap_or_default(),
            r.gap_percent().map(|g| format!("{g:.4}")).unwrap_or_default(),
            if r.exact.is_some() { "ok" } else { "timeout" }.to_string(),
        ])?;
    }
    for c in cells {
        w.write_record([
            "mean".to_string(),
            c.n.to_string(),
            c.avg_degree.to_string(),
            c.solved.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            format!("{:.4}", c.mean_gap_percent),
            format!("timeouts={}", c.timeouts),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Which core flags the λ table is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateChoice {
    /// Flags from a full leaf-removal peel.
    Peeled,
    /// Every node treated as core.
    AllCore,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaRow {
    pub order: usize,
    pub family: PathFamily,
    pub value: f64,
    pub dense: Option<f64>,
}

/// Largest `2M` for which the dense spectral radius column is computed.
pub const LAMBDA_DENSE_LIMIT: usize = 2000;

pub fn lambda_table(g: &Graph, choice: StateChoice, max_order: usize, dense: bool) -> Result<Vec<LambdaRow>> {
    let present = vec![true; g.node_count()];
    let state = match choice {
        StateChoice::Peeled => NodeState::initial(g),
        StateChoice::AllCore => NodeState::all_core(g, &present)?,
    };
    let radius = if dense {
        let dim = 2 * g.edge_count();
        if dim > LAMBDA_DENSE_LIMIT {
            return Err(Error::SizeGuard { dim, limit: LAMBDA_DENSE_LIMIT });
        }
        let (r, _) = build_r_matrix(g, &state)?;
        Some(dense_spectral_radius(&r)?)
    } else {
        None
    };
    let odd = lambda_power_series(g, &state, max_order, PathFamily::Odd)?;
    let even = lambda_power_series(g, &state, max_order, PathFamily::Even)?;
    let mut rows = Vec::with_capacity(2 * max_order);
    for (a, b) in odd.into_iter().zip(even) {
        for est in [a, b] {
            rows.push(LambdaRow { order: est.order, family: est.family, value: est.value, dense: radius });
        }
    }
    Ok(rows)
}

pub fn write_lambda_csv<W: Write>(rows: &[LambdaRow], preamble: &[String], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "# {FORMAT_VERSION}")?;
    for line in preamble {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["order", "family", "lambda", "dense_radius"])?;
    for r in rows {
        w.write_record([
            r.order.to_string(),
            r.family.as_str().to_string(),
            format!("{:.12}", r.value),
            r.dense.map(|d| format!("{d:.12}")).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// (model, degree, method, update).
pub type CellKey = (String, String, String, String);

/// Mean deleted count and mean cover size per cell.
pub fn cell_means(rows: &[ResultRecord]) -> BTreeMap<CellKey, (f64, f64)> {
    let mut acc: BTreeMap<CellKey, (f64, f64, usize)> = BTreeMap::new();
    for r in rows {
        let e = acc
            .entry((r.model.clone(), r.avg_degree.to_string(), r.method.clone(), r.update.clone()))
            .or_default();
        e.0 += r.deleted as f64;
        e.1 += r.cover as f64;
        e.2 += 1;
    }
    acc.into_iter()
        .map(|(k, (d, c, n))| (k, (d / n as f64, c / n as f64)))
        .collect()
}
