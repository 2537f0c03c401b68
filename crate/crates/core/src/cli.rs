//! Command-line front end: `build`, `scan`, `verify` and `compare`.
//!
//! Every output file starts with `#` metadata lines carrying the tool
//! version and the resolved configuration as JSON. The only line that
//! varies between identical runs is `# generated_unix:`, which
//! `--no-timestamp` drops.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::claims::{
    log_grid, run_claim, sieve_limit_for, sync_row_coprime, sync_row_random, ClaimConfig, ClaimId, LemmaBounds,
    SyncRecord,
};
use crate::error::{Error, Result};
use crate::generators::{match_parameters, Family, RNG_ALGORITHM};
use crate::metrics::{average_degree, average_local_clustering, diameter, link_density};
use crate::network::{CoprimeNetwork, DEFAULT_MAX_N};
use crate::numtheory::build_sieve;
use crate::pseudorandom::{codegree_deviation, wpr_lambda1_check, DEFAULT_MAX_PAIR_NODES};
use crate::spectral::{laplacian_extremes, Solver, SpectralOptions};
use crate::verify::VerificationReport;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "COPRIMENET_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "coprimenet", version, about = "Coprime networks of composite numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the network for one n and write its edge list and node table.
    Build(BuildArgs),
    /// Sweep n and write one row of metrics per n.
    Scan(ScanArgs),
    /// Run theorem and lemma checks and write a JSON report.
    Verify(VerifyArgs),
    /// Compare Laplacian synchronizability with matched ER and BA graphs.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Diameter,
    Clustering,
    Lambda1Ratio,
    Sync,
    Wpr,
}

#[derive(Debug, Args, Serialize)]
pub struct CommonArgs {
    /// Output directory [default: $COPRIMENET_OUT_DIR or "."]
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Omit the timestamp metadata line.
    #[arg(long)]
    #[serde(skip)]
    pub no_timestamp: bool,
    /// Refuse any n above this.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    /// Use a linear grid with this stride instead of the log grid.
    #[arg(long)]
    pub linear: Option<u64>,
    /// Points per decade of the log grid.
    #[arg(long, default_value_t = 10)]
    pub per_decade: u32,
    /// Extra metric groups; structural columns are always filled.
    #[arg(long = "metric", value_enum)]
    pub metrics: Vec<Metric>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    pub solver: SolverArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Largest node count given to the eigensolvers.
    #[arg(long, default_value_t = 6000)]
    pub max_spectral_nodes: usize,
    /// Largest node count for the codegree pair loop.
    #[arg(long, default_value_t = DEFAULT_MAX_PAIR_NODES)]
    pub max_pair_nodes: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverArg {
    Auto,
    Dense,
    Power,
    Lanczos,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Auto => Solver::Auto,
            SolverArg::Dense => Solver::Dense,
            SolverArg::Power => Solver::Power,
            SolverArg::Lanczos => Solver::Lanczos,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Claim ids (T1..T8, L1..L3, L5..L9, WPR, SYNC) or "all".
    #[arg(required = true)]
    pub claims: Vec<String>,
    /// Inclusive n (or x) range as LO..HI; defaults per claim.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(u64, u64)>,
    #[arg(long, default_value_t = 1)]
    pub stride: u64,
    /// Prime-index range for L6-L8 as LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub t: Option<(u64, u64)>,
    /// Comparator seeds for SYNC (also the T4 pair-sampling seed).
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 2000)]
    pub sync_n: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIR_NODES)]
    pub max_pair_nodes: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: u64,
    /// Comparator seeds; one ER and one BA graph per seed.
    #[arg(long, value_delimiter = ',', default_values_t = [7u64])]
    pub seed: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    pub retries: u32,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    pub solver: SolverArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo = a.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Parse arguments and run, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SizeCap { .. } => EXIT_CAP,
        Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_VERIFY_FAILED,
    }
}

fn dispatch(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Build(a) => cmd_build(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn out_dir(common: &CommonArgs) -> Result<PathBuf> {
    let dir = common
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

#[derive(Serialize)]
struct RunConfig<'a, A: Serialize> {
    command: &'a str,
    version: &'a str,
    args: &'a A,
}

struct Meta {
    lines: Vec<String>,
    config: serde_json::Value,
    timestamp: Option<u64>,
}

impl Meta {
    fn new<A: Serialize>(command: &str, args: &A, common: &CommonArgs) -> Result<Self> {
        let config = serde_json::to_value(RunConfig { command, version: VERSION, args })?;
        let timestamp = if common.no_timestamp {
            None
        } else {
            Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
        };
        Ok(Meta { lines: Vec::new(), config, timestamp })
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    fn write_header<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "# coprimenet {VERSION}")?;
        writeln!(w, "# config: {}", serde_json::to_string(&self.config)?)?;
        for l in &self.lines {
            writeln!(w, "# {l}")?;
        }
        if let Some(t) = self.timestamp {
            writeln!(w, "# generated_unix: {t}")?;
        }
        Ok(())
    }

    /// JSON document `{version, config, meta, generated_unix?, rows}`.
    fn json<T: Serialize>(&self, rows: &T) -> Result<serde_json::Value> {
        let mut doc = serde_json::json!({
            "version": VERSION,
            "config": self.config,
            "meta": self.lines,
            "rows": rows,
        });
        if let Some(t) = self.timestamp {
            doc["generated_unix"] = t.into();
        }
        Ok(doc)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Write rows as CSV (after the metadata header) or JSON.
fn write_table<R: Serialize>(path: &Path, meta: &Meta, format: Format, rows: &[R]) -> Result<()> {
    let mut w = create(path)?;
    match format {
        Format::Csv => {
            meta.write_header(&mut w)?;
            let mut c = csv::Writer::from_writer(&mut w);
            for r in rows {
                c.serialize(r)?;
            }
            c.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &meta.json(&rows)?)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

#[derive(Serialize)]
struct NodeRow {
    label: u64,
    degree: usize,
    radical: u64,
    omega: u32,
}

fn cmd_build(a: &BuildArgs) -> Result<i32> {
    if a.n > a.common.max_n {
        return Err(Error::SizeCap { what: "n", requested: a.n, cap: a.common.max_n });
    }
    let sieve = build_sieve(a.n.max(2))?;
    let net = CoprimeNetwork::build_capped(a.n, &sieve, a.common.max_n)?;
    let dir = out_dir(&a.common)?;
    let meta = Meta::new("build", a, &a.common)?
        .line(format!("n: {}", net.n()))
        .line(format!("nodes: {}", net.node_count()))
        .line(format!("edges: {}", net.edge_count()));
    let edges_path = dir.join(format!("edges_n{}.txt", a.n));
    let mut w = create(&edges_path)?;
    meta.write_header(&mut w)?;
    net.write_edge_list(&mut w)?;
    w.flush()?;
    let rows: Vec<NodeRow> = (0..net.node_count())
        .map(|u| {
            let s = net.signature(u);
            NodeRow { label: net.label(u), degree: net.degrees()[u], radical: s.radical, omega: s.omega }
        })
        .collect();
    let nodes_path = dir.join(format!("nodes_n{}.{}", a.n, ext(a.common.format)));
    write_table(&nodes_path, &meta, a.common.format, &rows)?;
    println!(
        "n={} nodes={} edges={} -> {}, {}",
        net.n(),
        net.node_count(),
        net.edge_count(),
        edges_path.display(),
        nodes_path.display()
    );
    Ok(EXIT_OK)
}

/// One scan row; unrequested or failed metrics stay empty.
#[derive(Debug, Default, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub node_count: usize,
    pub edge_count: u64,
    pub link_density: Option<f64>,
    pub avg_degree: Option<f64>,
    pub avg_degree_over_n: Option<f64>,
    pub max_degree: usize,
    pub diameter: Option<String>,
    pub avg_clustering: Option<f64>,
    pub lambda1_ratio: Option<f64>,
    pub lambda2: Option<f64>,
    pub lambda_n: Option<f64>,
    pub sync_ratio: Option<f64>,
    pub codeg_normalized: Option<f64>,
    pub r_threshold: Option<u32>,
    pub r_over_log_n: Option<f64>,
    pub error: Option<String>,
}

fn scan_row(net: &CoprimeNetwork, a: &ScanArgs, opts: &SpectralOptions) -> ScanRow {
    let g = net.graph();
    let mut row = ScanRow {
        n: net.n(),
        node_count: net.node_count(),
        edge_count: net.edge_count(),
        max_degree: g.max_degree(),
        ..Default::default()
    };
    let mut errors = Vec::new();
    let mut note = |what: &str, e: Error| errors.push(format!("{what}: {e}"));
    row.link_density = link_density(g).ok();
    row.avg_degree = average_degree(g).ok();
    row.avg_degree_over_n = row.avg_degree.map(|d| d / net.n() as f64);
    let spectral_ok = || {
        if net.node_count() > a.max_spectral_nodes {
            Err(Error::SizeCap {
                what: "spectral nodes",
                requested: net.node_count() as u64,
                cap: a.max_spectral_nodes as u64,
            })
        } else {
            Ok(())
        }
    };
    for m in &a.metrics {
        match m {
            Metric::Diameter => row.diameter = Some(diameter(g).to_string()),
            Metric::Clustering => match average_local_clustering(g) {
                Ok(c) => row.avg_clustering = Some(c),
                Err(e) => note("clustering", e),
            },
            Metric::Lambda1Ratio => match spectral_ok().and_then(|_| wpr_lambda1_check(g, opts)) {
                Ok(r) => row.lambda1_ratio = Some(r),
                Err(e) => note("lambda1_ratio", e),
            },
            Metric::Sync => match spectral_ok().and_then(|_| laplacian_extremes(g, opts)) {
                Ok(l) => {
                    row.lambda2 = Some(l.lambda2);
                    row.lambda_n = Some(l.lambda_n);
                    row.sync_ratio = Some(l.sync_ratio());
                }
                Err(e) => note("sync", e),
            },
            Metric::Wpr => match codegree_deviation(net, a.max_pair_nodes) {
                Ok(r) => {
                    row.codeg_normalized = Some(r.normalized);
                    row.r_threshold = Some(r.max_cycle_len_estimate);
                    row.r_over_log_n = Some(r.r_over_log_n);
                }
                Err(e) => note("wpr", e),
            },
        }
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    row
}

fn cmd_scan(a: &ScanArgs) -> Result<i32> {
    if a.from > a.to {
        return Err(Error::domain(format!("empty range {}..{}", a.from, a.to)));
    }
    if a.from < 4 {
        return Err(Error::domain("scan range must start at n >= 4"));
    }
    if a.to > a.common.max_n {
        return Err(Error::SizeCap { what: "n", requested: a.to, cap: a.common.max_n });
    }
    let grid: Vec<u64> = match a.linear {
        Some(0) => return Err(Error::domain("--linear stride must be positive")),
        Some(step) => (a.from..=a.to).step_by(step as usize).collect(),
        None => log_grid(a.from, a.to, a.per_decade.max(1)),
    };
    let opts = SpectralOptions {
        solver: a.solver.into(),
        tol: a.tol,
        max_iter: a.max_iter,
        seed: a.seed,
        ..Default::default()
    };
    let sieve = build_sieve(a.to)?;
    let mut net = CoprimeNetwork::with_capacity(a.to, &sieve, a.common.max_n)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &n in &grid {
        net.grow_to(n, &sieve)?;
        rows.push(scan_row(&net, a, &opts));
    }
    let dir = out_dir(&a.common)?;
    let meta = Meta::new("scan", a, &a.common)?.line(format!("grid_points: {}", grid.len()));
    let path = dir.join(format!("scan_n{}-{}.{}", a.from, a.to, ext(a.common.format)));
    write_table(&path, &meta, a.common.format, &rows)?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    println!("{} rows ({failed} with errors) -> {}", rows.len(), path.display());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    version: &'a str,
    config: &'a serde_json::Value,
    generated_unix: Option<u64>,
    all_passed: bool,
    reports: &'a [VerificationReport],
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let mut ids = Vec::new();
    for c in &a.claims {
        if c.eq_ignore_ascii_case("all") {
            ids.extend(ClaimId::ALL);
        } else {
            ids.push(c.parse::<ClaimId>()?);
        }
    }
    let mut lemma = LemmaBounds::default();
    if let Some((lo, hi)) = a.t {
        lemma.t = (lo as usize, hi as usize);
        lemma.s_max = lemma.s_max.max(hi as usize);
    }
    let cfg = ClaimConfig {
        range: a.range,
        stride: a.stride,
        lemma,
        seeds: a.seeds.clone(),
        sync_n: a.sync_n,
        max_n: a.common.max_n,
        max_pair_nodes: a.max_pair_nodes,
        ..Default::default()
    };
    let mut reports = Vec::new();
    let mut refused = false;
    for id in ids {
        let limit = sieve_limit_for(id, &cfg);
        let outcome = if limit > cfg.max_n.max(2000) {
            Err(Error::SizeCap { what: "n", requested: limit, cap: cfg.max_n })
        } else {
            build_sieve(limit).and_then(|s| run_claim(id, &cfg, &s))
        };
        let report = match outcome {
            Ok(r) => r,
            Err(e @ Error::SizeCap { .. }) => {
                refused = true;
                let (lo, hi) = cfg.range_for(id);
                VerificationReport::errored(id.as_str(), format!("{lo}..={hi}"), e)
            }
            Err(e) => return Err(e),
        };
        println!(
            "{} {} [{}] checked={} failures={} {:.0} ms",
            if report.passed { "PASS" } else { "FAIL" },
            report.claim,
            report.tested_range,
            report.checked,
            report.failures,
            report.elapsed_ms
        );
        for c in &report.counterexamples {
            println!("    {c}");
        }
        reports.push(report);
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let dir = out_dir(&a.common)?;
    let meta = Meta::new("verify", a, &a.common)?;
    let doc = VerifyDocument {
        version: VERSION,
        config: &meta.config,
        generated_unix: meta.timestamp,
        all_passed,
        reports: &reports,
    };
    let path = dir.join("verify.json");
    let mut w = create(&path)?;
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(if refused {
        EXIT_CAP
    } else if all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// Flattened compare row; columns follow the spectral table layout.
#[derive(Serialize)]
struct CompareRow {
    family: Family,
    n: u64,
    node_count: usize,
    target_edges: u64,
    edge_count: Option<u64>,
    lambda2: Option<f64>,
    lambda_n: Option<f64>,
    ratio: Option<f64>,
    solver: Option<String>,
    iterations: Option<usize>,
    residual: Option<f64>,
    seed: Option<u64>,
    attempts: Option<u32>,
    error: Option<String>,
}

impl CompareRow {
    fn from_result(
        family: Family,
        n: u64,
        node_count: usize,
        target_edges: u64,
        seed: Option<u64>,
        r: Result<SyncRecord>,
    ) -> Self {
        match r {
            Ok(s) => CompareRow {
                family,
                n,
                node_count: s.node_count,
                target_edges: s.target_edges,
                edge_count: Some(s.edge_count),
                lambda2: Some(s.lambda2),
                lambda_n: Some(s.lambda_n),
                ratio: Some(s.ratio),
                solver: Some(s.solver),
                iterations: Some(s.iterations),
                residual: Some(s.residual),
                seed: s.seed,
                attempts: Some(s.attempts),
                error: None,
            },
            Err(e) => CompareRow {
                family,
                n,
                node_count,
                target_edges,
                edge_count: None,
                lambda2: None,
                lambda_n: None,
                ratio: None,
                solver: None,
                iterations: None,
                residual: None,
                seed,
                attempts: None,
                error: Some(e.to_string()),
            },
        }
    }
}

fn cmd_compare(a: &CompareArgs) -> Result<i32> {
    if a.n > a.common.max_n {
        return Err(Error::SizeCap { what: "n", requested: a.n, cap: a.common.max_n });
    }
    let sieve = build_sieve(a.n.max(2))?;
    let net = CoprimeNetwork::build_capped(a.n, &sieve, a.common.max_n)?;
    let params = match_parameters(&net)?;
    let mut rows = Vec::new();
    for (i, &seed) in a.seed.iter().enumerate() {
        let opts = SpectralOptions {
            solver: a.solver.into(),
            tol: a.tol,
            max_iter: a.max_iter,
            seed,
            ..Default::default()
        };
        if i == 0 {
            rows.push(CompareRow::from_result(
                Family::Coprime,
                a.n,
                net.node_count(),
                net.edge_count(),
                None,
                sync_row_coprime(&net, &opts),
            ));
        }
        for family in [Family::Er, Family::Ba] {
            let r = sync_row_random(family, a.n, &params, seed, a.retries, &opts);
            rows.push(CompareRow::from_result(family, a.n, params.node_count, params.target_edges, Some(seed), r));
        }
    }
    let dir = out_dir(&a.common)?;
    let meta = Meta::new("compare", a, &a.common)?
        .line(format!("rng: {RNG_ALGORITHM}"))
        .line(format!("ba_m: {} ba_edges: {}", params.ba_m, params.ba_edges));
    let path = dir.join(format!("compare_n{}.{}", a.n, ext(a.common.format)));
    write_table(&path, &meta, a.common.format, &rows)?;
    for r in &rows {
        match (&r.ratio, &r.error) {
            (Some(x), _) => println!("{:<8} seed={:?} ratio={x:.4}", r.family.as_str(), r.seed),
            (_, Some(e)) => println!("{:<8} seed={:?} error: {e}", r.family.as_str(), r.seed),
            _ => {}
        }
    }
    println!("-> {}", path.display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("49..5000"), Ok((49, 5000)));
        assert_eq!(parse_range("4..=20"), Ok((4, 20)));
        assert!(parse_range("9..4").is_err());
        assert!(parse_range("9").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["coprimenet"]), EXIT_USAGE);
        assert_eq!(run(["coprimenet", "build"]), EXIT_USAGE);
        assert_eq!(run(["coprimenet", "verify", "T1", "--range", "9..4"]), EXIT_USAGE);
    }

    #[test]
    fn error_mapping() {
        assert_eq!(exit_code_for(&Error::SizeCap { what: "n", requested: 2, cap: 1 }), EXIT_CAP);
        assert_eq!(exit_code_for(&Error::domain("x")), EXIT_USAGE);
        assert_eq!(exit_code_for(&Error::Disconnected { components: 2 }), EXIT_VERIFY_FAILED);
    }
}
