//! Weak pseudo-randomness statistics: total codegree deviation, the
//! `λ₁ / (N p)` ratio and the cycle-length threshold.
//!
//! Pair sums run over ordered pairs `(x, y)` including `x = y`, with
//! `codeg(x, x) = deg(x)`. Under this convention both
//! `Σ codeg(x,y) = Σ deg(i)²` and `Σ codeg(x,y)² = Tr(A⁴)` hold exactly;
//! over unordered distinct pairs neither does.

use serde::{Deserialize, Serialize};

use crate::bitgraph::{and_popcount, BitGraph};
use crate::error::{Error, Result};
use crate::network::CoprimeNetwork;
use crate::spectral::{adjacency_lambda1, SpectralOptions};
use crate::COPRIME_DENSITY;

/// Default cap on `N` for the `O(N³/64)` pair loop.
pub const DEFAULT_MAX_PAIR_NODES: usize = 20_000;

pub const PAIR_CONVENTION: &str = "ordered pairs (x, y) including x = y, codeg(x, x) = deg(x)";

/// Exact codegree histogram over ordered pairs including the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodegreeHistogram {
    /// `counts[c]` = number of ordered pairs with codegree `c`.
    pub counts: Vec<u64>,
}

impl CodegreeHistogram {
    pub fn compute(g: &BitGraph, max_nodes: usize) -> Result<Self> {
        let n = g.node_count();
        if n > max_nodes {
            return Err(Error::SizeCap {
                what: "pair-loop nodes",
                requested: n as u64,
                cap: max_nodes as u64,
            });
        }
        let mut counts = vec![0u64; n + 1];
        for x in 0..n {
            let rx = g.row(x);
            counts[g.degree(x)] += 1;
            for y in x + 1..n {
                counts[and_popcount(rx, g.row(y))] += 2;
            }
        }
        Ok(CodegreeHistogram { counts })
    }

    pub fn pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ codeg(x, y)`.
    pub fn sum(&self) -> u128 {
        self.counts.iter().enumerate().map(|(c, &k)| c as u128 * k as u128).sum()
    }

    /// `Σ codeg(x, y)²`.
    pub fn sum_sq(&self) -> u128 {
        self.counts.iter().enumerate().map(|(c, &k)| (c as u128).pow(2) * k as u128).sum()
    }

    /// `Σ |codeg(x, y) − target|`, one exact count weight per codegree
    /// value, accumulated with Neumaier summation in ascending order.
    pub fn abs_deviation(&self, target: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (c, &k) in self.counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let term = k as f64 * (c as f64 - target).abs();
            let t = sum + term;
            comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
            sum = t;
        }
        sum + comp
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WprReport {
    pub n: u64,
    pub node_count: usize,
    pub p: f64,
    pub convention: String,
    /// `Σ |codeg(x, y) − p² N|`.
    pub codeg_deviation_sum: f64,
    /// Deviation divided by `N³`.
    pub normalized: f64,
    pub sum_codeg: u128,
    pub sum_codeg_sq: u128,
    pub lambda1_ratio: Option<f64>,
    pub max_cycle_len_estimate: u32,
    pub r_over_log_n: f64,
}

/// Deviation statistics for an arbitrary graph; `n` is only echoed.
pub fn codegree_deviation_graph(n: u64, g: &BitGraph, max_nodes: usize) -> Result<WprReport> {
    let node_count = g.node_count();
    let hist = CodegreeHistogram::compute(g, max_nodes)?;
    let p = COPRIME_DENSITY;
    let dev = hist.abs_deviation(p * p * node_count as f64);
    let cube = (node_count as f64).powi(3);
    let r = cycle_length_threshold(node_count);
    Ok(WprReport {
        n,
        node_count,
        p,
        convention: PAIR_CONVENTION.to_string(),
        codeg_deviation_sum: dev,
        normalized: if node_count == 0 { 0.0 } else { dev / cube },
        sum_codeg: hist.sum(),
        sum_codeg_sq: hist.sum_sq(),
        lambda1_ratio: None,
        max_cycle_len_estimate: r,
        r_over_log_n: r as f64 / (n.max(2) as f64).ln(),
    })
}

pub fn codegree_deviation(net: &CoprimeNetwork, max_nodes: usize) -> Result<WprReport> {
    codegree_deviation_graph(net.n(), net.graph(), max_nodes)
}

/// `λ₁ / (N · 6/π²)`.
pub fn wpr_lambda1_check(g: &BitGraph, opts: &SpectralOptions) -> Result<f64> {
    let l1 = adjacency_lambda1(g, opts)?;
    Ok(l1.value / (g.node_count() as f64 * COPRIME_DENSITY))
}

/// Full report including the spectral ratio.
pub fn wpr_report(net: &CoprimeNetwork, max_nodes: usize, opts: &SpectralOptions) -> Result<WprReport> {
    let mut r = codegree_deviation(net, max_nodes)?;
    r.lambda1_ratio = Some(wpr_lambda1_check(net.graph(), opts)?);
    Ok(r)
}

/// Largest `r` with `N p (1 − p)^((r − 3)/2) ≥ 1`, never below 3.
pub fn cycle_length_threshold(node_count: usize) -> u32 {
    let p = COPRIME_DENSITY;
    let np = node_count as f64 * p;
    if np <= 1.0 {
        return 3;
    }
    let r = 3.0 + 2.0 * np.ln() / (1.0 / (1.0 - p)).ln();
    r.floor() as u32
}
