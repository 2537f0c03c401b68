//! Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//!
//! Exits 0 after printing every result so that failures stay visible in a
//! full workspace run. Set `ACCEPTANCE_STRICT=1` to exit 1 on any failure.

use std::time::Instant;

use coprimenet::claims::{run_claim, ClaimConfig, ClaimId};
use coprimenet::generators::{gen_matched, match_parameters, Family};
use coprimenet::network::{edge_count_asymptotic, edge_count_telescoping};
use coprimenet::spectral::{adjacency_lambda1, dense_eigenvalues, laplacian_extremes, laplacian_matrix, Solver, SpectralOptions};
use coprimenet::{build_network, build_sieve, BitGraph, CoprimeNetwork, SieveTable, VerificationReport};

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn from_reports(reports: &[VerificationReport]) -> Self {
        let mut details = Vec::new();
        for r in reports {
            details.push(format!(
                "{} [{}]: {} ({} checks, {} failures, {:.0} ms)",
                r.claim,
                r.tested_range,
                if r.passed { "ok" } else { "failed" },
                r.checked,
                r.failures,
                r.elapsed_ms
            ));
            details.extend(r.conventions.iter().map(|c| format!("  {c}")));
            details.extend(r.counterexamples.iter().take(5).map(|c| format!("  counterexample: {c}")));
        }
        Outcome {
            passed: reports.iter().all(|r| r.passed),
            details,
        }
    }

    fn merge(mut self, other: Outcome) -> Self {
        self.passed &= other.passed;
        self.details.extend(other.details);
        self
    }
}

fn claims(ids: &[ClaimId], cfg: &ClaimConfig, sieve: &SieveTable) -> Outcome {
    let reports: Vec<_> = ids
        .iter()
        .map(|&id| run_claim(id, cfg, sieve).unwrap_or_else(|e| VerificationReport::errored(id.as_str(), "-", e)))
        .collect();
    Outcome::from_reports(&reports)
}

fn with_range(lo: u64, hi: u64) -> ClaimConfig {
    ClaimConfig {
        range: Some((lo, hi)),
        ..ClaimConfig::default()
    }
}

fn c1(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::T2, ClaimId::T3, ClaimId::T4], &with_range(4, 1500), s)
}

fn c2(s: &SieveTable) -> Outcome {
    let out = claims(&[ClaimId::T1], &with_range(49, 5000), s);
    let iso = build_network(30, s).map(|n| n.isolated_nodes()).unwrap_or_default();
    Outcome {
        passed: iso.contains(&30),
        details: vec![format!("n=30: isolated nodes {iso:?}")],
    }
    .merge(out)
}

fn c3(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::T6], &with_range(49, 2000), s)
}

fn c4(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::T5], &with_range(100, 10_000), s)
}

fn c5(s: &SieveTable) -> Outcome {
    let mut passed = true;
    let mut details = Vec::new();
    let mut net = CoprimeNetwork::with_capacity(2000, s, 2000).expect("capacity");
    for n in 49..=2000 {
        net.grow_to(n, s).expect("grow");
        let m = net.max_degree(s).expect("max degree");
        if !m.holds() {
            passed = false;
            details.push(format!("n={n}: {m:?}"));
        }
    }
    let m = net.max_degree(s).expect("max degree");
    details.push(format!(
        "n=2000: label {} degree {} (predicted {} / {})",
        m.label, m.degree, m.predicted_label, m.predicted_degree
    ));
    Outcome { passed, details }
}

fn c6(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::T8], &with_range(10_000, 10_000), s)
}

fn c7(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::T7], &with_range(4, 300), s)
}

fn c8(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::WPR], &with_range(500, 5000), s)
}

fn c9(s: &SieveTable) -> Outcome {
    claims(&[ClaimId::SYNC], &with_range(500, 4000), s)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn c10(s: &SieveTable) -> Outcome {
    const TOL: f64 = 1e-6;
    let mut graphs: Vec<(String, BitGraph)> = Vec::new();
    for n in [2usize, 3, 10, 100, 400] {
        graphs.push((format!("path {n}"), BitGraph::path(n)));
    }
    for n in [2usize, 3, 50, 400] {
        graphs.push((format!("complete {n}"), BitGraph::complete(n)));
    }
    for n in [49u64, 100, 250, 480] {
        let net = build_network(n, s).expect("network");
        if n == 250 {
            let p = match_parameters(&net).expect("params");
            for fam in [Family::Er, Family::Ba] {
                let g = gen_matched(fam, &p, 1).expect("generator");
                graphs.push((format!("{fam} matched to coprime {n}"), g.graph));
            }
        }
        graphs.push((format!("coprime {n}"), net.graph().clone()));
    }

    let opts = |solver| SpectralOptions {
        solver,
        ..SpectralOptions::default()
    };
    let mut passed = true;
    let mut details = Vec::new();
    let mut worst = 0.0f64;
    for (name, g) in &graphs {
        assert!(g.node_count() <= 400, "{name}");
        let lap = dense_eigenvalues(laplacian_matrix(g));
        let adj = adjacency_lambda1(g, &opts(Solver::Dense)).expect("dense").value;
        let mut checks: Vec<(&str, f64, f64)> = Vec::new();
        match laplacian_extremes(g, &opts(Solver::Lanczos)) {
            Ok(it) => {
                checks.push(("lanczos lambda2", it.lambda2, lap[1]));
                checks.push(("lanczos lambda_N", it.lambda_n, lap[lap.len() - 1]));
            }
            Err(e) => {
                passed = false;
                details.push(format!("{name}: laplacian lanczos error {e}"));
            }
        }
        let mut adj_solvers = vec![Solver::Lanczos];
        // The path's top gap shrinks like 1/N², too small for power iteration
        // within the iteration cap once N grows.
        if !name.starts_with("path") || g.node_count() <= 10 {
            adj_solvers.push(Solver::Power);
        }
        for solver in adj_solvers {
            match adjacency_lambda1(g, &opts(solver)) {
                Ok(it) => checks.push((if solver == Solver::Power { "power lambda1" } else { "lanczos lambda1" }, it.value, adj)),
                Err(e) => {
                    passed = false;
                    details.push(format!("{name}: adjacency {solver} error {e}"));
                }
            }
        }
        for (what, it, dense) in checks {
            let err = rel_err(it, dense);
            worst = worst.max(err);
            if err > TOL {
                passed = false;
                details.push(format!("{name}: {what} {it:.12} vs dense {dense:.12} (rel {err:.2e})"));
            }
        }
    }
    details.push(format!("{} graphs, worst relative error {worst:.2e}", graphs.len()));
    Outcome { passed, details }
}

fn c11(s: &SieveTable) -> Outcome {
    let cfg = with_range(3, 10_000);
    let out = claims(
        &[ClaimId::L5, ClaimId::L6, ClaimId::L7, ClaimId::L8, ClaimId::L9],
        &cfg,
        s,
    );
    // Tightness: the product of the first t-1 primes must not beat p_(t+2)² at t = 5.
    let p = |i| s.nth_prime(i).expect("prime") as u128;
    let lhs: u128 = (1..5).map(p).product();
    let rhs = p(7) * p(7);
    let tight = lhs <= rhs;
    let l9 = &cfg.lemma;
    Outcome {
        passed: tight && l9.x_halves == (4, 100) && l9.r == (4, 20),
        details: vec![format!(
            "t=5 boundary: p1..p4 = {lhs} vs p7^2 = {rhs} -> {}",
            if tight { "fails, threshold t=6 is tight" } else { "holds, threshold not tight" }
        )],
    }
    .merge(out)
}

fn c12(s: &SieveTable) -> Outcome {
    let (lo, hi) = (1000u64, 10_000u64);
    let resid = |n: u64| -> f64 {
        let e = edge_count_telescoping(n, s).expect("edges") as f64;
        let a = edge_count_asymptotic(n, s).expect("asymptotic");
        let nf = n as f64;
        (e - a).abs() / (nf * nf.ln())
    };
    let (a, b) = (resid(lo), resid(hi));
    let growth = 2.0;
    Outcome {
        passed: b <= growth * a,
        details: vec![format!("edge residual: n={lo}: {a:.6}; n={hi}: {b:.6}")],
    }
    .merge(claims(&[ClaimId::L1], &with_range(lo, hi), s))
}

fn main() {
    let sieve = build_sieve(10_000).expect("sieve");
    type Criterion = fn(&SieveTable) -> Outcome;
    let criteria: [(&str, Criterion); 12] = [
        ("exact formulas for N, E, degrees and codegrees, n in 4..1500", c1),
        ("no isolated nodes for n in 49..5000; node 30 isolated at n=30", c2),
        ("diameter <= 3 on 49..288 and <= 2 on 289..2000", c3),
        ("density, avg_degree/n and degree scaling at n=10^4", c4),
        ("max-degree label and value, n in 49..2000", c5),
        ("local clustering at n=10^4", c6),
        ("trace and codegree identities, n <= 300", c7),
        ("codegree deviation trend and lambda1 ratio at n=5000", c8),
        ("synchronizability ordering at n=2000 and lambda2 trend", c9),
        ("iterative vs dense eigenvalues, N <= 400", c10),
        ("prime-sum identity and prime-product inequalities L5-L9", c11),
        ("asymptotic residual growth between 10^3 and 10^4", c12),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f(&sieve);
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status}  {name}  ({:.1} s)", i + 1, t.elapsed().as_secs_f64());
        for d in &out.details {
            println!("    {d}");
        }
        if !out.passed {
            failed.push(i + 1);
        }
    }
    println!(
        "acceptance: {}/{} passed; failed: {failed:?}",
        criteria.len() - failed.len(),
        criteria.len()
    );
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
