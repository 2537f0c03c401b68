//! The theorem and lemma suite: each claim id maps to a sweep that
//! produces a [`VerificationReport`].

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{derived_seed, gen_matched, match_parameters, Family, MatchedParameters};
use crate::metrics::{
    average_degree, average_local_clustering, clustering_records, closed_walks, diameter, labeled_cycles_exact,
    link_density, loglog_slope, total_triangles, triangles_per_node, Diameter,
};
use crate::network::{
    edge_count_asymptotic, edge_count_partial_sums, edge_count_telescoping, expected_node_count, CoprimeNetwork,
    DEFAULT_MAX_N,
};
use crate::numtheory::{
    omega_sq_sum_residual, omega_sum_residual, verify_lemma, verify_pi_sum_identity, LemmaId, LemmaRange,
    SieveTable,
};
use crate::pseudorandom::{codegree_deviation, wpr_lambda1_check, DEFAULT_MAX_PAIR_NODES, PAIR_CONVENTION};
use crate::spectral::{laplacian_extremes, SpectralOptions};
use crate::verify::{ReportBuilder, VerificationReport};
use crate::COPRIME_DENSITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    L1,
    L2,
    L3,
    L5,
    L6,
    L7,
    L8,
    L9,
    WPR,
    SYNC,
}

impl ClaimId {
    pub const ALL: [ClaimId; 18] = [
        ClaimId::T1,
        ClaimId::T2,
        ClaimId::T3,
        ClaimId::T4,
        ClaimId::T5,
        ClaimId::T6,
        ClaimId::T7,
        ClaimId::T8,
        ClaimId::L1,
        ClaimId::L2,
        ClaimId::L3,
        ClaimId::L5,
        ClaimId::L6,
        ClaimId::L7,
        ClaimId::L8,
        ClaimId::L9,
        ClaimId::WPR,
        ClaimId::SYNC,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T1 => "T1",
            ClaimId::T2 => "T2",
            ClaimId::T3 => "T3",
            ClaimId::T4 => "T4",
            ClaimId::T5 => "T5",
            ClaimId::T6 => "T6",
            ClaimId::T7 => "T7",
            ClaimId::T8 => "T8",
            ClaimId::L1 => "L1",
            ClaimId::L2 => "L2",
            ClaimId::L3 => "L3",
            ClaimId::L5 => "L5",
            ClaimId::L6 => "L6",
            ClaimId::L7 => "L7",
            ClaimId::L8 => "L8",
            ClaimId::L9 => "L9",
            ClaimId::WPR => "WPR",
            ClaimId::SYNC => "SYNC",
        }
    }

    /// Default `n` (or `x`) range, inclusive.
    pub fn default_range(&self) -> (u64, u64) {
        match self {
            ClaimId::T1 => (49, 5000),
            ClaimId::T2 | ClaimId::T3 | ClaimId::T4 => (4, 1500),
            ClaimId::T5 => (100, 10_000),
            ClaimId::T6 => (49, 2000),
            ClaimId::T7 => (4, 300),
            ClaimId::T8 => (10_000, 10_000),
            ClaimId::L1 | ClaimId::L2 | ClaimId::L3 => (1000, 10_000),
            ClaimId::L5 => (3, 10_000),
            ClaimId::L6 | ClaimId::L7 | ClaimId::L8 | ClaimId::L9 => (0, 0),
            ClaimId::WPR => (500, 5000),
            ClaimId::SYNC => (500, 4000),
        }
    }
}

impl std::fmt::Display for ClaimId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == up)
            .ok_or_else(|| Error::domain(format!("unknown claim '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimConfig {
    /// Overrides [`ClaimId::default_range`].
    pub range: Option<(u64, u64)>,
    pub stride: u64,
    pub lemma: LemmaBounds,
    /// Absolute tolerance for the asymptotic claims (T5 density, T8 average).
    pub density_tol: f64,
    pub slope_tol: f64,
    pub clustering_avg_tol: f64,
    /// Relative tolerance on per-node clustering ratios (T8).
    pub clustering_ratio_tol: f64,
    pub lambda1_tol: f64,
    /// Allowed growth of a normalized residual between the range ends.
    pub residual_growth: f64,
    /// Codegree pairs sampled per `n` in T4.
    pub codegree_samples: usize,
    pub sync_n: u64,
    pub seeds: Vec<u64>,
    pub retries: u32,
    pub max_n: u64,
    pub max_pair_nodes: usize,
    pub spectral: SpectralOptions,
}

/// Serializable mirror of [`LemmaRange`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBounds {
    pub t: (usize, usize),
    pub s_max: usize,
    pub x_halves: (u64, u64),
    pub r: (u32, u32),
}

impl From<LemmaBounds> for LemmaRange {
    fn from(b: LemmaBounds) -> Self {
        LemmaRange {
            t: b.t,
            s_max: b.s_max,
            x_halves: b.x_halves,
            r: b.r,
        }
    }
}

impl Default for LemmaBounds {
    fn default() -> Self {
        let r = LemmaRange::default();
        LemmaBounds {
            t: r.t,
            s_max: r.s_max,
            x_halves: r.x_halves,
            r: r.r,
        }
    }
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig {
            range: None,
            stride: 1,
            lemma: LemmaBounds::default(),
            density_tol: 0.02,
            slope_tol: 0.02,
            clustering_avg_tol: 0.03,
            clustering_ratio_tol: 0.05,
            lambda1_tol: 0.05,
            residual_growth: 2.0,
            codegree_samples: 200,
            sync_n: 2000,
            seeds: vec![1, 2, 3],
            retries: 5,
            max_n: DEFAULT_MAX_N,
            max_pair_nodes: DEFAULT_MAX_PAIR_NODES,
            spectral: SpectralOptions::default(),
        }
    }
}

impl ClaimConfig {
    pub fn range_for(&self, id: ClaimId) -> (u64, u64) {
        self.range.unwrap_or_else(|| id.default_range())
    }
}

/// Largest `n` (or `x`) a claim will touch under `cfg`.
pub fn sieve_limit_for(id: ClaimId, cfg: &ClaimConfig) -> u64 {
    let (_, hi) = cfg.range_for(id);
    let hi = match id {
        ClaimId::SYNC => hi.max(cfg.sync_n),
        _ => hi,
    };
    hi.max(2000)
}

fn range_text(lo: u64, hi: u64, stride: u64) -> String {
    if stride > 1 {
        format!("{lo}..={hi} step {stride}")
    } else {
        format!("{lo}..={hi}")
    }
}

fn check_range(id: ClaimId, lo: u64, hi: u64, min_lo: u64, cfg: &ClaimConfig) -> Result<()> {
    if lo > hi {
        return Err(Error::domain(format!("{id}: empty range {lo}..={hi}")));
    }
    if lo < min_lo {
        return Err(Error::domain(format!("{id}: range must start at n >= {min_lo}, got {lo}")));
    }
    if hi > cfg.max_n {
        return Err(Error::SizeCap {
            what: "n",
            requested: hi,
            cap: cfg.max_n,
        });
    }
    if cfg.stride == 0 {
        return Err(Error::domain("stride must be positive"));
    }
    Ok(())
}

/// Visit the network at each `n` of a stride sweep, growing one instance.
fn sweep(
    lo: u64,
    hi: u64,
    stride: u64,
    sieve: &SieveTable,
    max_n: u64,
    mut f: impl FnMut(&CoprimeNetwork) -> Result<()>,
) -> Result<()> {
    let mut net = CoprimeNetwork::with_capacity(hi.max(4), sieve, max_n)?;
    let mut n = lo;
    while n <= hi {
        net.grow_to(n.max(4), sieve)?;
        if n >= 4 {
            f(&net)?;
        }
        n = match n.checked_add(stride) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(())
}

/// Doubling grid `lo, 2lo, 4lo, …` up to `hi`.
pub fn doubling_grid(lo: u64, hi: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut n = lo.max(1);
    while n <= hi {
        v.push(n);
        n *= 2;
    }
    v
}

/// Log-spaced integer grid with `per_decade` points per factor of ten,
/// deduplicated, always including both ends.
pub fn log_grid(lo: u64, hi: u64, per_decade: u32) -> Vec<u64> {
    if lo >= hi {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).log10(), (hi as f64).log10());
    let steps = (((b - a) * per_decade as f64).ceil() as u64).max(1);
    let mut v: Vec<u64> = (0..=steps)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / steps as f64).round() as u64)
        .collect();
    v[0] = lo;
    *v.last_mut().unwrap() = hi;
    v.dedup();
    v
}

/// Run one claim. Resource-cap refusals come back as `Err(SizeCap)`;
/// other evaluation errors are folded into a failed report.
pub fn run_claim(id: ClaimId, cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let start = Instant::now();
    let out = match id {
        ClaimId::T1 => t1(cfg, sieve),
        ClaimId::T2 => t2(cfg, sieve),
        ClaimId::T3 => t3(cfg, sieve),
        ClaimId::T4 => t4(cfg, sieve),
        ClaimId::T5 => t5(cfg, sieve),
        ClaimId::T6 => t6(cfg, sieve),
        ClaimId::T7 => t7(cfg, sieve),
        ClaimId::T8 => t8(cfg, sieve),
        ClaimId::L1 | ClaimId::L2 | ClaimId::L3 => residual_claim(id, cfg, sieve),
        ClaimId::L5 => {
            let (lo, hi) = cfg.range_for(id);
            verify_pi_sum_identity(lo, hi, sieve)
        }
        ClaimId::L6 => verify_lemma(LemmaId::L6, &cfg.lemma.into(), sieve),
        ClaimId::L7 => verify_lemma(LemmaId::L7, &cfg.lemma.into(), sieve),
        ClaimId::L8 => verify_lemma(LemmaId::L8, &cfg.lemma.into(), sieve),
        ClaimId::L9 => verify_lemma(LemmaId::L9, &cfg.lemma.into(), sieve),
        ClaimId::WPR => wpr(cfg, sieve),
        ClaimId::SYNC => sync(cfg, sieve),
    };
    match out {
        Ok(r) => Ok(r.with_elapsed(start.elapsed())),
        Err(e @ Error::SizeCap { .. }) => Err(e),
        Err(e) => {
            let (lo, hi) = cfg.range_for(id);
            Ok(VerificationReport::errored(id.as_str(), range_text(lo, hi, cfg.stride), e).with_elapsed(start.elapsed()))
        }
    }
}

fn t1(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T1);
    check_range(ClaimId::T1, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T1", range_text(lo, hi, cfg.stride));
    rb.note("asserted for n >= 49; smaller n only record their isolated nodes");
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let iso = net.isolated_nodes();
        if net.n() >= 49 {
            rb.check(iso.is_empty(), || format!("n={}: isolated {:?}", net.n(), iso));
        } else if !iso.is_empty() {
            rb.note(format!("n={}: isolated {:?}", net.n(), iso));
        }
        Ok(())
    })?;
    Ok(rb.finish())
}

fn t2(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T2);
    check_range(ClaimId::T2, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T2", range_text(lo, hi, cfg.stride));
    rb.note("N(n) = n - pi(n) - 1");
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let formula = expected_node_count(net.n(), sieve)?;
        rb.check(net.node_count() as u64 == formula, || {
            format!("n={}: N={} formula={formula}", net.n(), net.node_count())
        });
        Ok(())
    })?;
    Ok(rb.finish())
}

fn t3(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T3);
    check_range(ClaimId::T3, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T3", range_text(lo, hi, cfg.stride));
    rb.note("built E equals the telescoping sum and the partial-sum closed form (with the +m correction)");
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let n = net.n();
        let e = net.edge_count();
        let tele = edge_count_telescoping(n, sieve)?;
        let partial = edge_count_partial_sums(n, sieve)?;
        rb.check(e == tele && e as i128 == partial, || {
            format!("n={n}: E={e} telescoping={tele} partial_sums={partial}")
        });
        Ok(())
    })?;
    for n in [lo, hi] {
        let asym = edge_count_asymptotic(n, sieve)?;
        let e = edge_count_telescoping(n, sieve)? as f64;
        let nf = n as f64;
        rb.note(format!("n={n}: |E - E_asym|/(n ln n) = {:.6}", (e - asym).abs() / (nf * nf.ln())));
    }
    Ok(rb.finish())
}

fn t4(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T4);
    check_range(ClaimId::T4, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T4", range_text(lo, hi, cfg.stride));
    rb.note("i: every node degree; iii: max-degree label and value; iv: sampled codegrees");
    rb.note(format!(
        "codegree pairs: {} per n drawn with seed {}",
        cfg.codegree_samples,
        cfg.seeds.first().copied().unwrap_or(0)
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seeds.first().copied().unwrap_or(0));
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let n = net.n();
        for u in 0..net.node_count() {
            let c = net.degree_of(net.label(u))?;
            rb.check(c.holds(), || {
                format!("n={n} k={}: degree {} formula {}", net.label(u), c.observed, c.formula)
            });
        }
        let m = net.max_degree(sieve)?;
        rb.check(m.holds(), || format!("n={n}: max degree {m:?}"));
        let nodes = net.node_count();
        if nodes >= 2 {
            for _ in 0..cfg.codegree_samples {
                let u = rng.gen_range(0..nodes);
                let v = (u + rng.gen_range(1..nodes)) % nodes;
                let (k, l) = (net.label(u), net.label(v));
                let c = net.codegree(k, l)?;
                rb.check(c.holds(), || {
                    format!("n={n} ({k},{l}): codegree {} formula {}", c.observed, c.formula)
                });
            }
        }
        Ok(())
    })?;
    Ok(rb.finish())
}

fn t5(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T5);
    check_range(ClaimId::T5, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T5", format!("log grid {lo}..={hi}"));
    rb.note(format!(
        "at n={hi}: link density and avg_degree/n within {} of 6/pi^2; log-log slope of avg degree within 1 +/- {}",
        cfg.density_tol, cfg.slope_tol
    ));
    let grid = log_grid(lo, hi, 10);
    let mut points = Vec::new();
    let mut last = None;
    let mut net = CoprimeNetwork::with_capacity(hi, sieve, cfg.max_n)?;
    for &n in &grid {
        net.grow_to(n, sieve)?;
        let avg = average_degree(net.graph())?;
        points.push((n as f64, avg));
        last = Some((link_density(net.graph())?, avg / n as f64));
    }
    let (density, avg_over_n) = last.expect("grid is non-empty");
    rb.check((density - COPRIME_DENSITY).abs() <= cfg.density_tol, || {
        format!("n={hi}: link density {density:.6} vs {COPRIME_DENSITY:.6}")
    });
    rb.check((avg_over_n - COPRIME_DENSITY).abs() <= cfg.density_tol, || {
        format!("n={hi}: avg_degree/n {avg_over_n:.6} vs {COPRIME_DENSITY:.6}")
    });
    if points.len() >= 2 {
        let slope = loglog_slope(&points)?;
        rb.note(format!("fitted slope {slope:.6} over {} grid points", points.len()));
        rb.check((slope - 1.0).abs() <= cfg.slope_tol, || format!("slope {slope:.6}"));
    }
    Ok(rb.finish())
}

fn t6(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T6);
    check_range(ClaimId::T6, lo, hi, 49, cfg)?;
    let mut rb = ReportBuilder::new("T6", range_text(lo, hi, cfg.stride));
    rb.note("diameter <= 3 for 49 <= n < 289, <= 2 for n >= 289; BFS from one node per twin class");
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let n = net.n();
        let bound = if n >= 289 { 2 } else { 3 };
        match diameter(net.graph()) {
            Diameter::Finite(d) => rb.check(d <= bound, || format!("n={n}: diameter {d} > {bound}")),
            Diameter::Disconnected { components } => {
                rb.check(false, || format!("n={n}: disconnected ({components} components)"))
            }
        };
        Ok(())
    })?;
    Ok(rb.finish())
}

fn t7(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T7);
    check_range(ClaimId::T7, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T7", range_text(lo, hi, cfg.stride));
    rb.note("Tr(A^2) = 2E, Tr(A^3) = 6 triangles, sum codeg^2 = Tr(A^4), labeled 3-cycles = 6 triangles");
    rb.note(format!("codegree pairs: {PAIR_CONVENTION}"));
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let n = net.n();
        let g = net.graph();
        let tri = total_triangles(&triangles_per_node(g)) as u128;
        let tr2 = closed_walks(g, 2)?;
        let tr3 = closed_walks(g, 3)?;
        let tr4 = closed_walks(g, 4)?;
        let e = net.edge_count() as u128;
        rb.check(tr2 == 2 * e, || format!("n={n}: Tr(A^2)={tr2} 2E={}", 2 * e));
        rb.check(tr3 == 6 * tri, || format!("n={n}: Tr(A^3)={tr3} 6T={}", 6 * tri));
        let sq = codegree_deviation(net, cfg.max_pair_nodes)?.sum_codeg_sq;
        rb.check(sq == tr4, || format!("n={n}: sum codeg^2={sq} Tr(A^4)={tr4}"));
        if let Ok(c3) = labeled_cycles_exact(g, 3) {
            rb.check(c3 == 6 * tri, || format!("n={n}: labeled 3-cycles {c3} vs 6T={}", 6 * tri));
        }
        Ok(())
    })?;
    Ok(rb.finish())
}

fn t8(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::T8);
    check_range(ClaimId::T8, lo, hi, 4, cfg)?;
    let mut rb = ReportBuilder::new("T8", range_text(lo, hi, cfg.stride));
    rb.note(format!(
        "average local clustering within {} of 0.61; c(k)/asymptote within 1 +/- {} for omega(k) <= 2",
        cfg.clustering_avg_tol, cfg.clustering_ratio_tol
    ));
    rb.note("nodes with degree < 2 have c(k) = 0 and count in the average");
    sweep(lo, hi, cfg.stride, sieve, cfg.max_n, |net| {
        let n = net.n();
        let avg = average_local_clustering(net.graph())?;
        rb.check((avg - 0.61).abs() <= cfg.clustering_avg_tol, || {
            format!("n={n}: average clustering {avg:.6}")
        });
        let (mut lo_r, mut hi_r) = (f64::INFINITY, f64::NEG_INFINITY);
        for (u, rec) in clustering_records(net).iter().enumerate() {
            if net.signature(u).omega > 2 {
                continue;
            }
            let ratio = rec.local_cc / rec.asymptotic_cc;
            lo_r = lo_r.min(ratio);
            hi_r = hi_r.max(ratio);
            rb.check((ratio - 1.0).abs() <= cfg.clustering_ratio_tol, || {
                format!("n={n} k={}: c(k)/asymptote = {ratio:.4}", rec.label)
            });
        }
        rb.note(format!("n={n}: average {avg:.6}; ratio range [{lo_r:.4}, {hi_r:.4}]"));
        Ok(())
    })?;
    Ok(rb.finish())
}

fn residual_claim(id: ClaimId, cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(id);
    if lo < 3 || lo > hi {
        return Err(Error::domain(format!("{id}: need 3 <= lo <= hi, got {lo}..={hi}")));
    }
    type Residual = fn(u64, &SieveTable) -> Result<f64>;
    let (what, f): (&str, Residual) = match id {
        ClaimId::L1 => ("|sum phi - 3x^2/pi^2| / (x ln x)", |x, s| Ok(s.sum_phi(x)?.normalized_residual())),
        ClaimId::L2 => ("(sum omega - x ln ln x) / x", omega_sum_residual),
        _ => ("(sum omega^2 - x (ln ln x)^2) / (x ln ln x)", omega_sq_sum_residual),
    };
    let mut rb = ReportBuilder::new(id.as_str(), format!("x in {{{lo}, {hi}}}"));
    rb.note(format!(
        "residual {what}; |residual| at the larger x at most {}x the smaller",
        cfg.residual_growth
    ));
    let (a, b) = (f(lo, sieve)?, f(hi, sieve)?);
    rb.note(format!("x={lo}: {a:.6}; x={hi}: {b:.6}"));
    rb.check(b.is_finite() && b.abs() <= cfg.residual_growth * a.abs(), || {
        format!("residual grew from {a:.6} to {b:.6}")
    });
    Ok(rb.finish())
}

fn wpr(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::WPR);
    check_range(ClaimId::WPR, lo, hi, 4, cfg)?;
    let grid = doubling_grid(lo, hi);
    let mut rb = ReportBuilder::new("WPR", format!("deviation at {grid:?}; lambda1 at n={hi}"));
    rb.note(format!("codegree pairs: {PAIR_CONVENTION}"));
    rb.note(format!(
        "normalized deviation strictly decreasing; lambda1/(N 6/pi^2) within 1 +/- {}",
        cfg.lambda1_tol
    ));
    let mut net = CoprimeNetwork::with_capacity(hi, sieve, cfg.max_n)?;
    let mut prev: Option<(u64, f64)> = None;
    for &n in &grid {
        net.grow_to(n, sieve)?;
        let d = codegree_deviation(&net, cfg.max_pair_nodes)?.normalized;
        rb.note(format!("n={n}: normalized deviation {d:.6}"));
        if let Some((pn, pd)) = prev {
            rb.check(d < pd, || format!("deviation n={pn}: {pd:.6} -> n={n}: {d:.6}"));
        }
        prev = Some((n, d));
    }
    net.grow_to(hi, sieve)?;
    let ratio = wpr_lambda1_check(net.graph(), &cfg.spectral)?;
    rb.note(format!("n={hi}: lambda1 ratio {ratio:.6}"));
    rb.check((ratio - 1.0).abs() <= cfg.lambda1_tol, || format!("n={hi}: lambda1 ratio {ratio:.6}"));
    Ok(rb.finish())
}

/// One row of a synchronizability comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncRecord {
    pub family: Family,
    pub n: u64,
    pub node_count: usize,
    pub target_edges: u64,
    pub edge_count: u64,
    pub lambda2: f64,
    pub lambda_n: f64,
    pub ratio: f64,
    pub solver: String,
    pub iterations: usize,
    pub residual: f64,
    pub seed: Option<u64>,
    pub attempts: u32,
}

/// Laplacian extremes of the coprime network itself.
pub fn sync_row_coprime(net: &CoprimeNetwork, opts: &SpectralOptions) -> Result<SyncRecord> {
    let lap = laplacian_extremes(net.graph(), opts)?;
    Ok(SyncRecord {
        family: Family::Coprime,
        n: net.n(),
        node_count: net.node_count(),
        target_edges: net.edge_count(),
        edge_count: net.edge_count(),
        lambda2: lap.lambda2,
        lambda_n: lap.lambda_n,
        ratio: lap.sync_ratio(),
        solver: lap.solver.to_string(),
        iterations: lap.iterations,
        residual: lap.residual,
        seed: None,
        attempts: 1,
    })
}

/// One matched random comparator. A disconnected sample is redrawn with
/// [`derived_seed`] up to `retries` times.
pub fn sync_row_random(
    family: Family,
    n: u64,
    params: &MatchedParameters,
    seed: u64,
    retries: u32,
    opts: &SpectralOptions,
) -> Result<SyncRecord> {
    let mut attempt = 0;
    let (g, lap) = loop {
        let g = gen_matched(family, params, derived_seed(seed, attempt))?;
        match laplacian_extremes(&g.graph, opts) {
            Ok(l) => break (g, l),
            Err(Error::Disconnected { .. }) if attempt < retries => attempt += 1,
            Err(e) => return Err(e),
        }
    };
    Ok(SyncRecord {
        family,
        n,
        node_count: g.node_count(),
        target_edges: params.target_edges,
        edge_count: g.achieved_edges,
        lambda2: lap.lambda2,
        lambda_n: lap.lambda_n,
        ratio: lap.sync_ratio(),
        solver: lap.solver.to_string(),
        iterations: lap.iterations,
        residual: lap.residual,
        seed: Some(g.seed),
        attempts: attempt + 1,
    })
}

/// Coprime network plus one ER and one BA comparator per seed, all with
/// matched `N` and `E`.
pub fn sync_compare(
    net: &CoprimeNetwork,
    seeds: &[u64],
    retries: u32,
    opts: &SpectralOptions,
) -> Result<Vec<SyncRecord>> {
    let mut out = vec![sync_row_coprime(net, opts)?];
    let params = match_parameters(net)?;
    for &seed in seeds {
        for family in [Family::Er, Family::Ba] {
            out.push(sync_row_random(family, net.n(), &params, seed, retries, opts)?);
        }
    }
    Ok(out)
}

fn sync(cfg: &ClaimConfig, sieve: &SieveTable) -> Result<VerificationReport> {
    let (lo, hi) = cfg.range_for(ClaimId::SYNC);
    check_range(ClaimId::SYNC, lo, hi.max(cfg.sync_n), 4, cfg)?;
    let grid = doubling_grid(lo, hi);
    let mut rb = ReportBuilder::new(
        "SYNC",
        format!("ordering at n={} seeds {:?}; lambda2 trend at {grid:?}", cfg.sync_n, cfg.seeds),
    );
    rb.note("ratio lambda_N/lambda_2 of coprime exceeds ER and BA in every trial; lambda_2(coprime) strictly increasing");
    let net = CoprimeNetwork::build_capped(cfg.sync_n, sieve, cfg.max_n)?;
    let rows = sync_compare(&net, &cfg.seeds, cfg.retries, &cfg.spectral)?;
    let coprime = rows[0].ratio;
    for r in &rows[1..] {
        rb.note(format!("{} seed {:?}: ratio {:.4}", r.family, r.seed, r.ratio));
        rb.check(coprime > r.ratio, || {
            format!("n={}: coprime ratio {coprime:.4} <= {} ratio {:.4} (seed {:?})", cfg.sync_n, r.family, r.ratio, r.seed)
        });
    }
    let mut net = CoprimeNetwork::with_capacity(hi, sieve, cfg.max_n)?;
    let mut prev: Option<(u64, f64)> = None;
    for &n in &grid {
        net.grow_to(n, sieve)?;
        let l2 = laplacian_extremes(net.graph(), &cfg.spectral)?.lambda2;
        rb.note(format!("n={n}: lambda2 {l2:.6}"));
        if let Some((pn, p)) = prev {
            rb.check(l2 > p, || format!("lambda2 n={pn}: {p:.6} -> n={n}: {l2:.6}"));
        }
        prev = Some((n, l2));
    }
    Ok(rb.finish())
}
