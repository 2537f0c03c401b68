//! Extreme eigenvalues of the adjacency matrix and graph Laplacian.
//!
//! Small graphs (`N <= DENSE_ORACLE_MAX`) go through a dense symmetric
//! eigensolver. Larger graphs use matrix-free iterations on the bitset rows:
//! power iteration for the adjacency spectral radius, and Lanczos with full
//! reorthogonalization for the Laplacian extremes. Plain power iteration on
//! the Laplacian is kept as an explicit solver choice.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitgraph::BitGraph;
use crate::error::{Error, Result};
use crate::metrics::connected_components;

/// Largest node count routed to the dense solver under `Solver::Auto`.
pub const DENSE_ORACLE_MAX: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Auto,
    Dense,
    Power,
    Lanczos,
}

impl Solver {
    pub fn as_str(&self) -> &'static str {
        match self {
            Solver::Auto => "auto",
            Solver::Dense => "dense",
            Solver::Power => "power",
            Solver::Lanczos => "lanczos",
        }
    }
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Solver::Auto),
            "dense" => Ok(Solver::Dense),
            "power" => Ok(Solver::Power),
            "lanczos" => Ok(Solver::Lanczos),
            other => Err(Error::domain(format!("unknown solver '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    pub solver: Solver,
    /// Relative change in the Rayleigh quotient between checks.
    pub tol: f64,
    /// Required `||Mv - lambda v||` for a unit `v`.
    pub residual_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            solver: Solver::Auto,
            tol: 1e-9,
            residual_tol: 1e-6,
            max_iter: 100_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub solver: Solver,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianExtremes {
    pub lambda2: f64,
    pub lambda_n: f64,
    /// Eigenvector for `lambda2`, orthogonal to the all-ones vector.
    pub fiedler: Vec<f64>,
    pub iterations: usize,
    /// Larger of the two explicit residual norms.
    pub residual: f64,
    pub solver: Solver,
}

impl LaplacianExtremes {
    pub fn sync_ratio(&self) -> f64 {
        self.lambda_n / self.lambda2
    }
}

trait SymOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[inline]
fn row_sum(row: &[u64], x: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, &w) in row.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let tz = w.trailing_zeros() as usize;
            w &= w - 1;
            s += x[i * 64 + tz];
        }
    }
    s
}

struct AdjOp<'a>(&'a BitGraph);

impl SymOp for AdjOp<'_> {
    fn dim(&self) -> usize {
        self.0.node_count()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (u, yu) in y.iter_mut().enumerate() {
            *yu = row_sum(self.0.row(u), x);
        }
    }
}

struct LapOp<'a> {
    g: &'a BitGraph,
    deg: Vec<f64>,
}

impl<'a> LapOp<'a> {
    fn new(g: &'a BitGraph) -> Self {
        LapOp {
            g,
            deg: g.degrees().into_iter().map(|d| d as f64).collect(),
        }
    }
}

impl SymOp for LapOp<'_> {
    fn dim(&self) -> usize {
        self.g.node_count()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (u, yu) in y.iter_mut().enumerate() {
            *yu = self.deg[u] * x[u] - row_sum(self.g.row(u), x);
        }
    }
}

/// `shift * I - op`, optionally with a diagonal shift added to `op` first.
struct Shifted<'a, O: SymOp> {
    op: &'a O,
    shift: f64,
    negate: bool,
}

impl<O: SymOp> SymOp for Shifted<'_, O> {
    fn dim(&self) -> usize {
        self.op.dim()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.op.apply(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = if self.negate { self.shift * xi - *yi } else { *yi + self.shift * xi };
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &mut [f64], s: f64) {
    a.iter_mut().for_each(|x| *x *= s);
}

fn remove_mean(a: &mut [f64]) {
    let m = a.iter().sum::<f64>() / a.len() as f64;
    a.iter_mut().for_each(|x| *x -= m);
}

/// Unit start vector with entries uniform in `[-1, 1)` from the seed.
fn start_vector(n: usize, seed: u64, deflate_ones: bool) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if deflate_ones {
        remove_mean(&mut v);
    }
    let s = norm(&v);
    scale(&mut v, 1.0 / s);
    v
}

fn residual_norm<O: SymOp>(op: &O, v: &[f64], value: f64) -> f64 {
    let mut y = vec![0.0; v.len()];
    op.apply(v, &mut y);
    let r: f64 = y.iter().zip(v).map(|(a, b)| (a - value * b).powi(2)).sum();
    r.sqrt() / norm(v)
}

/// Dominant eigenpair of `op`, which must have its largest eigenvalue
/// strictly dominant in magnitude on the working subspace.
fn power_iteration<O: SymOp>(op: &O, opts: &SpectralOptions, deflate_ones: bool) -> Result<(f64, Vec<f64>, usize, f64)> {
    let n = op.dim();
    let mut v = start_vector(n, opts.seed, deflate_ones);
    let mut y = vec![0.0; n];
    let mut rho_prev = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut rho = 0.0;
    for it in 1..=opts.max_iter {
        op.apply(&v, &mut y);
        if deflate_ones {
            remove_mean(&mut y);
        }
        rho = dot(&v, &y);
        let r2: f64 = y.iter().zip(&v).map(|(a, b)| (a - rho * b).powi(2)).sum();
        residual = r2.sqrt();
        let ny = norm(&y);
        if ny == 0.0 {
            return Ok((0.0, v, it, 0.0));
        }
        let settled = (rho - rho_prev).abs() <= opts.tol * rho.abs().max(1.0);
        if settled && residual <= opts.residual_tol {
            return Ok((rho, v, it, residual));
        }
        rho_prev = rho;
        std::mem::swap(&mut v, &mut y);
        scale(&mut v, 1.0 / ny);
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        last_value: rho,
        residual,
    })
}

type RitzPair = (f64, Vec<f64>);

/// Lanczos with full reorthogonalization, tracking both ends of the
/// spectrum. Returns `(min, max)` Ritz pairs and the step count.
fn lanczos_extremes<O: SymOp>(
    op: &O,
    opts: &SpectralOptions,
    deflate_ones: bool,
) -> Result<(RitzPair, RitzPair, usize)> {
    let n = op.dim();
    let dim_cap = if deflate_ones { n - 1 } else { n };
    let max_steps = opts.max_iter.min(dim_cap).max(1);
    let mut basis: Vec<Vec<f64>> = vec![start_vector(n, opts.seed, deflate_ones)];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut last = (f64::NAN, f64::NAN);
    let mut k = 0;
    loop {
        let q = &basis[k];
        op.apply(q, &mut w);
        let a = dot(q, &w);
        alpha.push(a);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            if deflate_ones {
                remove_mean(&mut w);
            }
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
            }
        }
        let b = norm(&w);
        k += 1;
        let exhausted = k >= max_steps || b <= 1e-12 * a.abs().max(1.0);
        if k % 8 == 0 || exhausted {
            let t = tridiagonal(&alpha, &beta);
            let eig = SymmetricEigen::new(t);
            let (imin, imax) = extreme_indices(eig.eigenvalues.as_slice());
            let (lo, hi) = (eig.eigenvalues[imin], eig.eigenvalues[imax]);
            // Ritz residual bound |beta_k * s_k| for each end.
            let r_lo = (b * eig.eigenvectors[(k - 1, imin)]).abs();
            let r_hi = (b * eig.eigenvectors[(k - 1, imax)]).abs();
            let settled = (lo - last.0).abs() <= opts.tol * lo.abs().max(1.0)
                && (hi - last.1).abs() <= opts.tol * hi.abs().max(1.0);
            let resolved = r_lo <= 0.1 * opts.residual_tol && r_hi <= 0.1 * opts.residual_tol;
            if (settled && resolved) || exhausted {
                if !(resolved || b <= 1e-12 * a.abs().max(1.0) || k == dim_cap) {
                    return Err(Error::NonConvergence {
                        iterations: k,
                        last_value: lo,
                        residual: r_lo.max(r_hi),
                    });
                }
                let ritz = |col: usize| {
                    let mut v = vec![0.0; n];
                    for (j, qj) in basis.iter().enumerate().take(k) {
                        let c = eig.eigenvectors[(j, col)];
                        v.iter_mut().zip(qj).for_each(|(vi, qi)| *vi += c * qi);
                    }
                    let s = norm(&v);
                    scale(&mut v, 1.0 / s);
                    v
                };
                return Ok(((lo, ritz(imin)), (hi, ritz(imax)), k));
            }
            last = (lo, hi);
        }
        beta.push(b);
        let mut next = w.clone();
        scale(&mut next, 1.0 / b);
        basis.push(next);
    }
}

fn tridiagonal(alpha: &[f64], beta: &[f64]) -> DMatrix<f64> {
    let k = alpha.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    t
}

fn extreme_indices(vals: &[f64]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v < vals[lo] {
            lo = i;
        }
        if v > vals[hi] {
            hi = i;
        }
    }
    (lo, hi)
}

pub fn adjacency_matrix(g: &BitGraph) -> DMatrix<f64> {
    let n = g.node_count();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

pub fn laplacian_matrix(g: &BitGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let deg = g.degrees();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            deg[i] as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    })
}

/// All eigenvalues of a dense symmetric matrix in ascending order.
pub fn dense_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

fn resolve(solver: Solver, n: usize) -> Solver {
    match solver {
        Solver::Auto if n <= DENSE_ORACLE_MAX => Solver::Dense,
        Solver::Auto => Solver::Lanczos,
        s => s,
    }
}

/// Largest adjacency eigenvalue.
///
/// `Auto` uses power iteration on `A + I` above the dense cutoff; the shift
/// keeps a bipartite `-lambda_1` from tying with `lambda_1`. Lanczos is
/// available for graphs whose top gap is too small for power iteration.
pub fn adjacency_lambda1(g: &BitGraph, opts: &SpectralOptions) -> Result<Eigenpair> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::domain("spectrum of an empty graph"));
    }
    let solver = match opts.solver {
        Solver::Auto if n <= DENSE_ORACLE_MAX => Solver::Dense,
        Solver::Auto => Solver::Power,
        s => s,
    };
    match solver {
        Solver::Dense => {
            let eig = SymmetricEigen::new(adjacency_matrix(g));
            let (_, imax) = extreme_indices(eig.eigenvalues.as_slice());
            let value = eig.eigenvalues[imax];
            let vector: Vec<f64> = eig.eigenvectors.column(imax).iter().copied().collect();
            let residual = residual_norm(&AdjOp(g), &vector, value);
            Ok(Eigenpair { value, vector, iterations: 0, residual, solver: Solver::Dense })
        }
        Solver::Lanczos => {
            let op = AdjOp(g);
            let (_, (value, vector), iterations) = lanczos_extremes(&op, opts, false)?;
            let residual = residual_norm(&op, &vector, value);
            Ok(Eigenpair { value, vector, iterations, residual, solver: Solver::Lanczos })
        }
        _ => {
            let op = AdjOp(g);
            let shifted = Shifted { op: &op, shift: 1.0, negate: false };
            let (rho, vector, iterations, _) = power_iteration(&shifted, opts, false)?;
            let value = rho - 1.0;
            let residual = residual_norm(&op, &vector, value);
            Ok(Eigenpair { value, vector, iterations, residual, solver: Solver::Power })
        }
    }
}

fn require_connected(g: &BitGraph) -> Result<()> {
    if g.node_count() < 2 {
        return Err(Error::domain("Laplacian gap needs at least two nodes"));
    }
    let components = connected_components(g);
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(())
}

/// `lambda_2` and `lambda_N` of the Laplacian of a connected graph.
pub fn laplacian_extremes(g: &BitGraph, opts: &SpectralOptions) -> Result<LaplacianExtremes> {
    require_connected(g)?;
    let n = g.node_count();
    let op = LapOp::new(g);
    let out = match resolve(opts.solver, n) {
        Solver::Dense => {
            let eig = SymmetricEigen::new(laplacian_matrix(g));
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let (i2, i_n) = (order[1], order[n - 1]);
            let mut fiedler: Vec<f64> = eig.eigenvectors.column(i2).iter().copied().collect();
            remove_mean(&mut fiedler);
            let s = norm(&fiedler);
            scale(&mut fiedler, 1.0 / s);
            let vn: Vec<f64> = eig.eigenvectors.column(i_n).iter().copied().collect();
            let (lambda2, lambda_n) = (eig.eigenvalues[i2], eig.eigenvalues[i_n]);
            let residual = residual_norm(&op, &fiedler, lambda2).max(residual_norm(&op, &vn, lambda_n));
            LaplacianExtremes { lambda2, lambda_n, fiedler, iterations: 0, residual, solver: Solver::Dense }
        }
        Solver::Lanczos => {
            let ((lambda2, fiedler), (lambda_n, vn), iterations) = lanczos_extremes(&op, opts, true)?;
            let residual = residual_norm(&op, &fiedler, lambda2).max(residual_norm(&op, &vn, lambda_n));
            LaplacianExtremes { lambda2, lambda_n, fiedler, iterations, residual, solver: Solver::Lanczos }
        }
        Solver::Power | Solver::Auto => {
            let (lambda_n, vn, it_n, _) = power_iteration(&op, opts, true)?;
            // Largest eigenvalue of lambda_N I - L off the ones vector is lambda_N - lambda_2.
            let flipped = Shifted { op: &op, shift: lambda_n, negate: true };
            let (mu, fiedler, it_2, _) = power_iteration(&flipped, opts, true)?;
            let lambda2 = lambda_n - mu;
            let residual = residual_norm(&op, &fiedler, lambda2).max(residual_norm(&op, &vn, lambda_n));
            LaplacianExtremes { lambda2, lambda_n, fiedler, iterations: it_n + it_2, residual, solver: Solver::Power }
        }
    };
    if out.solver != Solver::Dense && out.residual > opts.residual_tol {
        return Err(Error::NonConvergence {
            iterations: out.iterations,
            last_value: out.lambda2,
            residual: out.residual,
        });
    }
    Ok(out)
}
