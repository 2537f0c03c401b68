//! The coprime network of composite numbers: nodes are the composites in
//! `[4, n]`, edges join coprime pairs.

use std::f64::consts::PI;
use std::io::Write;

use crate::bitgraph::{self, BitGraph};
use crate::error::{Error, Result};
use crate::numtheory::{partial_totient_primes, FactorSignature, SieveTable};

/// Default cap on `n`. The bitset matrix needs about `N²/8` bytes, roughly
/// 1 GB at this bound.
pub const DEFAULT_MAX_N: u64 = 100_000;

/// Primes below this bound keep a bitset of the nodes they divide; larger
/// primes have few enough multiples to clear bit by bit.
const MASKED_PRIME_BOUND: u64 = 128;

#[derive(Debug, Clone)]
pub struct CoprimeNetwork {
    n: u64,
    capacity_n: u64,
    prime_count: u64,
    labels: Vec<u64>,
    signatures: Vec<FactorSignature>,
    degrees: Vec<usize>,
    edge_count: u64,
    graph: BitGraph,
    prime_masks: Vec<(u64, Vec<u64>)>,
}

/// Number of composites in `[4, n]`, i.e. `n − π(n) − 1` for `n >= 1`.
pub fn expected_node_count(n: u64, sieve: &SieveTable) -> Result<u64> {
    if n > sieve.limit() {
        return Err(Error::domain(format!("n = {n} beyond sieve limit {}", sieve.limit())));
    }
    Ok(n.saturating_sub(sieve.pi(n) + 1))
}

pub fn build_network(n: u64, sieve: &SieveTable) -> Result<CoprimeNetwork> {
    CoprimeNetwork::build(n, sieve)
}

impl CoprimeNetwork {
    pub fn build(n: u64, sieve: &SieveTable) -> Result<Self> {
        Self::build_capped(n, sieve, DEFAULT_MAX_N)
    }

    pub fn build_capped(n: u64, sieve: &SieveTable, max_n: u64) -> Result<Self> {
        let mut net = Self::with_capacity(n, sieve, max_n)?;
        net.grow_to(n, sieve)?;
        Ok(net)
    }

    /// An empty network (bound 3, no nodes) that can grow up to
    /// `capacity_n` with [`grow_to`](Self::grow_to).
    pub fn with_capacity(capacity_n: u64, sieve: &SieveTable, max_n: u64) -> Result<Self> {
        if capacity_n < 4 {
            return Err(Error::domain(format!(
                "n = {capacity_n} gives an empty network; need n >= 4"
            )));
        }
        if capacity_n > max_n {
            return Err(Error::SizeCap {
                what: "n",
                requested: capacity_n,
                cap: max_n,
            });
        }
        if capacity_n > sieve.limit() {
            return Err(Error::domain(format!(
                "n = {capacity_n} beyond sieve limit {}",
                sieve.limit()
            )));
        }
        let cap_nodes = expected_node_count(capacity_n, sieve)? as usize;
        let graph = BitGraph::with_capacity(cap_nodes);
        let words = graph.words_per_row();
        let prime_masks = sieve
            .primes()
            .iter()
            .take_while(|&&p| p < MASKED_PRIME_BOUND && 2 * p <= capacity_n)
            .map(|&p| (p, vec![0u64; words]))
            .collect();
        Ok(CoprimeNetwork {
            n: 3,
            capacity_n,
            prime_count: sieve.pi(3),
            labels: Vec::with_capacity(cap_nodes),
            signatures: Vec::with_capacity(cap_nodes),
            degrees: Vec::with_capacity(cap_nodes),
            edge_count: 0,
            graph,
            prime_masks,
        })
    }

    /// Raise the bound to `new_n`, adding each new composite in order and
    /// wiring it to the existing nodes it is coprime to.
    pub fn grow_to(&mut self, new_n: u64, sieve: &SieveTable) -> Result<()> {
        if new_n > self.capacity_n {
            return Err(Error::SizeCap {
                what: "n",
                requested: new_n,
                cap: self.capacity_n,
            });
        }
        while self.n < new_n {
            let k = self.n + 1;
            if sieve.is_prime(k) {
                self.prime_count += 1;
            } else {
                self.add_composite(k, sieve)?;
            }
            self.n = k;
        }
        Ok(())
    }

    fn add_composite(&mut self, k: u64, sieve: &SieveTable) -> Result<()> {
        let sig = sieve.factor_signature(k)?;
        let idx = self.graph.push_node()?;
        let mut row = vec![0u64; self.graph.words_per_row()];
        for (w, word) in row.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= idx {
                *word = u64::MAX;
            } else if lo < idx {
                *word = (1u64 << (idx - lo)) - 1;
            }
        }
        for &p in &sig.distinct_primes {
            if let Some((_, mask)) = self.prime_masks.iter().find(|(q, _)| *q == p) {
                for (r, m) in row.iter_mut().zip(mask) {
                    *r &= !m;
                }
            } else {
                // Every multiple j·p with j >= 2 is composite.
                let mut m = 2 * p;
                while m < k {
                    let j = (m - sieve.pi(m) - 2) as usize;
                    bitgraph::clear_bit(&mut row, j);
                    m += p;
                }
            }
        }
        let mut degree = 0usize;
        for v in bitgraph::BitIter::new(&row) {
            bitgraph::set_bit(self.graph.row_mut(v), idx);
            self.degrees[v] += 1;
            degree += 1;
        }
        self.graph.row_mut(idx).copy_from_slice(&row);
        for (p, mask) in &mut self.prime_masks {
            if k.is_multiple_of(*p) {
                bitgraph::set_bit(mask, idx);
            }
        }
        self.degrees.push(degree);
        self.edge_count += degree as u64;
        self.labels.push(k);
        self.signatures.push(sig);
        Ok(())
    }

    /// The bound `n` (largest possible node label).
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// π(n) at the current bound.
    pub fn prime_count(&self) -> u64 {
        self.prime_count
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> u64 {
        self.labels[u]
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    fn require_index(&self, label: u64) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::domain(format!("{label} is not a node for n = {}", self.n)))
    }

    pub fn signature(&self, u: usize) -> &FactorSignature {
        &self.signatures[u]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    /// Degree predicted by `φ(n,k) − π(n) + ω(k) − 1`.
    pub fn degree_formula(&self, sig: &FactorSignature) -> i64 {
        partial_totient_primes(self.n, &sig.distinct_primes) as i64 - self.prime_count as i64
            + sig.omega as i64
            - 1
    }

    pub fn degree_of(&self, label: u64) -> Result<FormulaCheck> {
        let u = self.require_index(label)?;
        Ok(FormulaCheck {
            observed: self.degrees[u] as i64,
            formula: self.degree_formula(&self.signatures[u]),
        })
    }

    /// Common neighbours of two distinct nodes, with the prediction
    /// `φ(n, kl) − π(n) + ω(kl) − 1`.
    pub fn codegree(&self, k: u64, l: u64) -> Result<FormulaCheck> {
        if k == l {
            return Err(Error::domain(format!("codegree needs distinct nodes, got {k} twice")));
        }
        let (u, v) = (self.require_index(k)?, self.require_index(l)?);
        let kl = self.signatures[u].product(&self.signatures[v])?;
        Ok(FormulaCheck {
            observed: self.graph.codegree(u, v) as i64,
            formula: self.degree_formula(&kl),
        })
    }

    pub fn max_degree(&self, sieve: &SieveTable) -> Result<MaxDegree> {
        let (u, &degree) = self
            .degrees
            .iter()
            .enumerate()
            // First maximum wins, i.e. the smallest label.
            .rev()
            .max_by_key(|&(_, d)| d)
            .ok_or_else(|| Error::domain("empty network"))?;
        let r = sieve.primes().iter().take_while(|&&p| p * p <= self.n).count();
        let p_r = sieve.nth_prime(r).expect("n >= 4 so p_1 = 2 qualifies");
        let isqrt = (1..).take_while(|i: &u64| i * i <= self.n).last().unwrap_or(0);
        Ok(MaxDegree {
            label: self.labels[u],
            degree,
            predicted_label: p_r * p_r,
            predicted_degree: self.n - self.n / p_r - self.prime_count,
            upper_bound: self.n - isqrt - self.prime_count,
        })
    }

    pub fn isolated_nodes(&self) -> Vec<u64> {
        self.degrees
            .iter()
            .zip(&self.labels)
            .filter(|(&d, _)| d == 0)
            .map(|(_, &l)| l)
            .collect()
    }

    /// Edge list, one `u v` line per edge with `u < v` as labels.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.graph.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }

    /// Node table with columns `label,degree,radical,omega`.
    pub fn write_node_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["label", "degree", "radical", "omega"])?;
        for (u, sig) in self.signatures.iter().enumerate() {
            w.serialize((self.labels[u], self.degrees[u], sig.radical, sig.omega))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// An observed quantity next to its closed-form prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaCheck {
    pub observed: i64,
    pub formula: i64,
}

impl FormulaCheck {
    pub fn holds(&self) -> bool {
        self.observed == self.formula
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxDegree {
    pub label: u64,
    pub degree: usize,
    /// `p_r²` with `p_r` the largest prime whose square is at most `n`.
    pub predicted_label: u64,
    /// `n − ⌊n/p_r⌋ − π(n)`.
    pub predicted_degree: u64,
    /// `n − ⌊√n⌋ − π(n)`.
    pub upper_bound: u64,
}

impl MaxDegree {
    pub fn holds(&self) -> bool {
        self.label == self.predicted_label
            && self.degree as u64 == self.predicted_degree
            && self.predicted_degree <= self.upper_bound
    }
}

/// `E(n)` as the telescoping sum of edges added by each composite:
/// `Σ_{composite k ≤ n} [φ(k) − π(k) + ω(k) − 1]`.
pub fn edge_count_telescoping(n: u64, sieve: &SieveTable) -> Result<u64> {
    if n > sieve.limit() {
        return Err(Error::domain(format!("n = {n} beyond sieve limit {}", sieve.limit())));
    }
    let mut total: i64 = 0;
    for k in 4..=n {
        if sieve.is_prime(k) {
            continue;
        }
        let sig = sieve.factor_signature(k)?;
        total += sieve.euler_phi(k)? as i64 - sieve.pi(k) as i64 + sig.omega as i64 - 1;
    }
    Ok(total as u64)
}

/// `E(n)` from whole-range partial sums:
/// `Σφ − Σπ + Σω − (n−1) − Σp + m(m+1)/2 + m` with every sum over
/// `2..=n` and `m = π(n)`. Removing the prime terms from the full-range
/// sum subtracts `p_i − i − 1` per prime, hence the trailing `+ m`.
pub fn edge_count_partial_sums(n: u64, sieve: &SieveTable) -> Result<i128> {
    if n < 2 {
        return Err(Error::domain("partial-sum edge count needs n >= 2"));
    }
    let m = sieve.pi(n) as i128;
    let sum_phi = sieve.sum_phi(n)?.exact as i128 - 1;
    let sum_pi = sieve.sum_pi(n)? as i128;
    let sum_omega = sieve.sum_omega(n)? as i128;
    let sum_p = sieve.sum_primes(n)? as i128;
    Ok(sum_phi - sum_pi + sum_omega - (n as i128 - 1) - sum_p + m * (m + 1) / 2 + m)
}

/// Main term `3n²/π² + n ln ln n − nπ(n) + π(n)(π(n)+1)/2` of `E(n)`.
pub fn edge_count_asymptotic(n: u64, sieve: &SieveTable) -> Result<f64> {
    if n < 4 {
        return Err(Error::domain("edge_count_asymptotic needs n >= 4"));
    }
    if n > sieve.limit() {
        return Err(Error::domain(format!("n = {n} beyond sieve limit {}", sieve.limit())));
    }
    let nf = n as f64;
    let m = sieve.pi(n) as f64;
    Ok(3.0 * nf * nf / (PI * PI) + nf * nf.ln().ln() - nf * m + m * (m + 1.0) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::build_sieve;

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    /// Pairwise-gcd construction, independent of the mask builder.
    fn brute_edges(n: u64, sieve: &SieveTable) -> Vec<(u64, u64)> {
        let comps: Vec<u64> = (4..=n).filter(|&k| !sieve.is_prime(k)).collect();
        let mut out = Vec::new();
        for (i, &a) in comps.iter().enumerate() {
            for &b in &comps[i + 1..] {
                if gcd(a, b) == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn edge_labels(net: &CoprimeNetwork) -> Vec<(u64, u64)> {
        net.graph().edges().map(|(u, v)| (net.label(u), net.label(v))).collect()
    }

    #[test]
    fn n10_example() {
        let s = build_sieve(100).unwrap();
        let net = build_network(10, &s).unwrap();
        assert_eq!(net.labels(), &[4, 6, 8, 9, 10]);
        assert_eq!(net.edge_count(), 3);
        assert_eq!(edge_labels(&net), vec![(4, 9), (8, 9), (9, 10)]);
        assert_eq!(net.degrees(), &[1, 0, 1, 3, 1]);
        assert_eq!(edge_count_telescoping(10, &s).unwrap(), 3);
    }

    #[test]
    fn tiny_and_invalid() {
        let s = build_sieve(100).unwrap();
        let net = build_network(4, &s).unwrap();
        assert_eq!(net.node_count(), 1);
        assert_eq!(net.edge_count(), 0);
        assert_eq!(net.isolated_nodes(), vec![4]);
        let m = net.max_degree(&s).unwrap();
        assert_eq!((m.label, m.degree), (4, 0));
        assert!(build_network(3, &s).is_err());
        assert!(build_network(101, &s).is_err());
        assert!(matches!(
            CoprimeNetwork::build_capped(50, &s, 40),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn matches_gcd_construction() {
        let s = build_sieve(700).unwrap();
        for n in [4, 9, 25, 30, 49, 100, 131, 289, 700] {
            let net = build_network(n, &s).unwrap();
            assert_eq!(edge_labels(&net), brute_edges(n, &s), "n={n}");
            let g = net.graph();
            for u in 0..g.node_count() {
                assert!(!g.has_edge(u, u));
                assert_eq!(g.degree(u), net.degrees()[u]);
            }
            assert_eq!(net.degrees().iter().sum::<usize>() as u64, 2 * net.edge_count());
        }
    }

    #[test]
    fn growth_equals_batch() {
        let s = build_sieve(400).unwrap();
        let mut grown = CoprimeNetwork::with_capacity(400, &s, DEFAULT_MAX_N).unwrap();
        for n in [10, 57, 200, 400] {
            grown.grow_to(n, &s).unwrap();
            let batch = build_network(n, &s).unwrap();
            assert_eq!(edge_labels(&grown), edge_labels(&batch));
            assert_eq!(grown.degrees(), batch.degrees());
            assert_eq!(grown.prime_count(), s.pi(n));
        }
        assert!(grown.grow_to(401, &s).is_err());
    }

    #[test]
    fn node_counts() {
        let s = build_sieve(100).unwrap();
        assert_eq!(expected_node_count(30, &s).unwrap(), 19);
        assert_eq!(build_network(30, &s).unwrap().node_count(), 19);
        assert_eq!(build_network(25, &s).unwrap().node_count(), 15);
        assert_eq!(expected_node_count(4, &s).unwrap(), 1);
    }

    #[test]
    fn degree_examples() {
        let s = build_sieve(100).unwrap();
        let net = build_network(25, &s).unwrap();
        let d4 = net.degree_of(4).unwrap();
        assert_eq!(d4, FormulaCheck { observed: 4, formula: 4 });
        let u = net.index_of(4).unwrap();
        let nb: Vec<u64> = net.graph().neighbors(u).map(|v| net.label(v)).collect();
        assert_eq!(nb, vec![9, 15, 21, 25]);
        assert_eq!(net.degree_of(9).unwrap(), FormulaCheck { observed: 8, formula: 8 });
        assert!(net.degree_of(7).is_err());

        let net30 = build_network(30, &s).unwrap();
        assert_eq!(net30.degree_of(30).unwrap().observed, 0);
        assert_eq!(net30.isolated_nodes(), vec![30]);
        let net49 = build_network(49, &s).unwrap();
        assert!(net49.degree_of(30).unwrap().holds());
        assert!(net49.isolated_nodes().is_empty());
    }

    #[test]
    fn codegree_examples() {
        let s = build_sieve(100).unwrap();
        let net = build_network(25, &s).unwrap();
        assert_eq!(net.codegree(4, 9).unwrap(), FormulaCheck { observed: 1, formula: 1 });
        assert_eq!(net.codegree(4, 8).unwrap(), FormulaCheck { observed: 4, formula: 4 });
        assert!(net.codegree(4, 4).is_err());
        // rad(6·25) = 30 covers every prime dividing a composite <= 25 except 7, 11, ...
        // whose squares exceed 25, so nothing is coprime to both.
        assert_eq!(net.codegree(6, 25).unwrap(), FormulaCheck { observed: 0, formula: 0 });
    }

    #[test]
    fn formulas_exhaustive_at_fixed_n() {
        let s = build_sieve(1000).unwrap();
        for n in [49, 100, 288, 289, 1000] {
            let net = build_network(n, &s).unwrap();
            for &k in net.labels() {
                assert!(net.degree_of(k).unwrap().holds(), "n={n} k={k}");
            }
            let ls = net.labels();
            for (i, &k) in ls.iter().enumerate().step_by(7) {
                for &l in ls[i + 1..].iter().step_by(5) {
                    assert!(net.codegree(k, l).unwrap().holds(), "n={n} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn max_degree_examples() {
        let s = build_sieve(200).unwrap();
        let m = build_network(100, &s).unwrap().max_degree(&s).unwrap();
        assert_eq!((m.label, m.degree), (49, 61));
        assert!(m.holds());
        let m = build_network(25, &s).unwrap().max_degree(&s).unwrap();
        assert_eq!((m.label, m.degree), (25, 11));
        assert!(m.holds());
    }

    #[test]
    fn equal_radicals_share_rows() {
        let s = build_sieve(200).unwrap();
        let net = build_network(100, &s).unwrap();
        let rows: Vec<_> = [4u64, 8, 16, 32, 64]
            .iter()
            .map(|&k| net.graph().row(net.index_of(k).unwrap()).to_vec())
            .collect();
        assert!(rows.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn edge_count_routes_agree() {
        let s = build_sieve(2000).unwrap();
        let mut net = CoprimeNetwork::with_capacity(1500, &s, DEFAULT_MAX_N).unwrap();
        for n in 4..=1500u64 {
            net.grow_to(n, &s).unwrap();
            if n % 37 == 0 || n < 60 {
                assert_eq!(edge_count_telescoping(n, &s).unwrap(), net.edge_count(), "n={n}");
                assert_eq!(edge_count_partial_sums(n, &s).unwrap(), net.edge_count() as i128, "n={n}");
            }
        }
        assert_eq!(edge_count_telescoping(4, &s).unwrap(), 0);
    }

    #[test]
    fn asymptotic_edge_count_residual() {
        let s = build_sieve(10_000).unwrap();
        assert!(edge_count_asymptotic(100, &s).unwrap().is_finite());
        let resid = |n: u64| {
            let e = build_network(n, &s).unwrap().edge_count() as f64;
            let nf = n as f64;
            (e - edge_count_asymptotic(n, &s).unwrap()).abs() / (nf * nf.ln())
        };
        let (r3, r4) = (resid(1000), resid(10_000));
        assert!(r3.is_finite() && r4.is_finite());
        assert!(r4 <= 10.0 * r3, "r3={r3} r4={r4}");
    }

    #[test]
    fn exports() {
        let s = build_sieve(100).unwrap();
        let net = build_network(10, &s).unwrap();
        let mut edges = Vec::new();
        net.write_edge_list(&mut edges).unwrap();
        assert_eq!(String::from_utf8(edges).unwrap(), "4 9\n8 9\n9 10\n");
        let mut nodes = Vec::new();
        net.write_node_csv(&mut nodes).unwrap();
        let text = String::from_utf8(nodes).unwrap();
        assert!(text.starts_with("label,degree,radical,omega\n4,1,2,1\n6,0,6,2\n"));
    }
}
