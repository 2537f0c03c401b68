//! Paths, clustering, cycles and degree statistics.
//!
//! Everything here reads a [`BitGraph`]; the coprime-specific pieces
//! (labels, factor signatures) come from [`CoprimeNetwork`] where needed.
//! Real-valued aggregates are accumulated in ascending node order.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitgraph::{self, and_popcount, BitGraph, BitIter};
use crate::error::{Error, Result};
use crate::network::CoprimeNetwork;
use crate::numtheory::FactorSignature;
use crate::COPRIME_DENSITY;

/// `2E / (N(N−1))`.
pub fn link_density(g: &BitGraph) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::domain(format!("link density undefined for {n} node(s)")));
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// `|l − 6/π²|`.
pub fn density_gap(density: f64) -> f64 {
    (density - COPRIME_DENSITY).abs()
}

/// `2E / N`.
pub fn average_degree(g: &BitGraph) -> Result<f64> {
    match g.node_count() {
        0 => Err(Error::domain("average degree of an empty graph")),
        n => Ok(2.0 * g.edge_count() as f64 / n as f64),
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::domain("log-log fit needs at least two positive points"));
    }
    let k = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / k, sy / k);
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        let dx = x.ln() - mx;
        (num + dx * (y.ln() - my), den + dx * dx)
    });
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diameter {
    Finite(u32),
    Disconnected { components: usize },
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Disconnected { components } => write!(f, "disconnected({components})"),
        }
    }
}

/// Unweighted shortest-path lengths from `source`; `None` for unreachable
/// nodes.
///
/// Each level is expanded top-down (OR of frontier rows) while the frontier
/// is small and bottom-up (does an unvisited node touch the frontier?)
/// once it is large, which in dense graphs usually stops after one word.
pub fn bfs_distances(g: &BitGraph, source: usize) -> Vec<Option<u32>> {
    let n = g.node_count();
    let mut dist = vec![None; n];
    if source >= n {
        return dist;
    }
    let words = g.words_per_row();
    let full = g.full_set();
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];
    bitgraph::set_bit(&mut visited, source);
    bitgraph::set_bit(&mut frontier, source);
    dist[source] = Some(0);
    let mut frontier_size = 1usize;
    let mut level = 0u32;
    while frontier_size > 0 {
        level += 1;
        next.iter_mut().for_each(|w| *w = 0);
        if frontier_size * 16 < n {
            for u in BitIter::new(&frontier) {
                for ((x, r), v) in next.iter_mut().zip(g.row(u)).zip(&visited) {
                    *x |= r & !v;
                }
            }
        } else {
            for w in 0..words {
                let mut unvisited = full[w] & !visited[w];
                while unvisited != 0 {
                    let v = w * 64 + unvisited.trailing_zeros() as usize;
                    unvisited &= unvisited - 1;
                    if bitgraph::intersects(g.row(v), &frontier) {
                        bitgraph::set_bit(&mut next, v);
                    }
                }
            }
        }
        frontier_size = 0;
        for v in BitIter::new(&next) {
            dist[v] = Some(level);
            frontier_size += 1;
        }
        for (a, b) in visited.iter_mut().zip(&next) {
            *a |= b;
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    dist
}

/// Groups of nodes with identical adjacency rows, each listed ascending.
/// Twins are never adjacent to each other (no self-loops), so they share
/// every distance to the rest of the graph.
pub fn twin_classes(g: &BitGraph) -> Vec<Vec<usize>> {
    let mut by_row: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..g.node_count() {
        let slot = *by_row.entry(g.row(u)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(u);
    }
    classes
}

pub fn connected_components(g: &BitGraph) -> usize {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        for (v, d) in bfs_distances(g, s).into_iter().enumerate() {
            if d.is_some() {
                seen[v] = true;
            }
        }
    }
    count
}

/// Largest shortest-path length over all pairs, by BFS from one node of
/// every twin class.
///
/// A twin of `u` has the same eccentricity as `u`: distances to every
/// other node agree, and the twin pair itself sits at distance 2, which
/// never exceeds the eccentricity of a node with a neighbour.
pub fn diameter(g: &BitGraph) -> Diameter {
    let n = g.node_count();
    if n <= 1 {
        return Diameter::Finite(0);
    }
    let mut best = 0u32;
    for class in twin_classes(g) {
        let dist = bfs_distances(g, class[0]);
        let mut ecc = 0u32;
        for d in &dist {
            match d {
                Some(d) => ecc = ecc.max(*d),
                None => {
                    return Diameter::Disconnected {
                        components: connected_components(g),
                    }
                }
            }
        }
        if class.len() > 1 {
            ecc = ecc.max(2);
        }
        best = best.max(ecc);
    }
    Diameter::Finite(best)
}

/// Triangles through each node: `½ Σ_{v ∈ N(u)} codeg(u, v)`.
///
/// Computed once per twin class: codegrees depend only on the rows, so
/// `Σ_{v ∈ N(u)} codeg(u, v) = Σ_classes |C|·codeg(u, rep(C))` over the
/// classes adjacent to `u`.
pub fn triangles_per_node(g: &BitGraph) -> Vec<u64> {
    let classes = twin_classes(g);
    let mut class_of = vec![0usize; g.node_count()];
    for (c, members) in classes.iter().enumerate() {
        for &u in members {
            class_of[u] = c;
        }
    }
    let mut out = vec![0u64; g.node_count()];
    for members in &classes {
        let u = members[0];
        let row_u = g.row(u);
        let mut twice = 0u64;
        for v in BitIter::new(row_u) {
            let c = &classes[class_of[v]];
            if c[0] == v {
                twice += c.len() as u64 * and_popcount(row_u, g.row(v)) as u64;
            }
        }
        for &m in members {
            out[m] = twice / 2;
        }
    }
    out
}

pub fn total_triangles(per_node: &[u64]) -> u64 {
    per_node.iter().sum::<u64>() / 3
}

/// `(6/π²) ∏_{p | k} p²/(p² − 1)`.
pub fn asymptotic_clustering(sig: &FactorSignature) -> f64 {
    sig.distinct_primes.iter().fold(COPRIME_DENSITY, |acc, &p| {
        let p2 = (p * p) as f64;
        acc * p2 / (p2 - 1.0)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringRecord {
    pub label: u64,
    pub degree: usize,
    pub triangles: u64,
    pub local_cc: f64,
    pub asymptotic_cc: f64,
    /// Degree below 2: `local_cc` is set to 0 by convention.
    pub degenerate: bool,
}

fn local_cc(triangles: u64, degree: usize) -> (f64, bool) {
    if degree < 2 {
        (0.0, true)
    } else {
        let pairs = degree as f64 * (degree as f64 - 1.0) / 2.0;
        (triangles as f64 / pairs, false)
    }
}

/// One record per node, in node order.
pub fn clustering_records(net: &CoprimeNetwork) -> Vec<ClusteringRecord> {
    let tri = triangles_per_node(net.graph());
    (0..net.node_count())
        .map(|u| {
            let degree = net.degrees()[u];
            let (cc, degenerate) = local_cc(tri[u], degree);
            ClusteringRecord {
                label: net.label(u),
                degree,
                triangles: tri[u],
                local_cc: cc,
                asymptotic_cc: asymptotic_clustering(net.signature(u)),
                degenerate,
            }
        })
        .collect()
}

pub fn local_clustering(net: &CoprimeNetwork, label: u64) -> Result<ClusteringRecord> {
    let u = net
        .index_of(label)
        .ok_or_else(|| Error::domain(format!("{label} is not a node for n = {}", net.n())))?;
    let g = net.graph();
    let twice: u64 = g.neighbors(u).map(|v| g.codegree(u, v) as u64).sum();
    let degree = net.degrees()[u];
    let (cc, degenerate) = local_cc(twice / 2, degree);
    Ok(ClusteringRecord {
        label,
        degree,
        triangles: twice / 2,
        local_cc: cc,
        asymptotic_cc: asymptotic_clustering(net.signature(u)),
        degenerate,
    })
}

/// Mean of the local clustering coefficients, degenerate nodes counted as 0.
pub fn average_local_clustering(g: &BitGraph) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::domain("average clustering of an empty graph"));
    }
    let tri = triangles_per_node(g);
    let sum: f64 = (0..n).map(|u| local_cc(tri[u], g.degree(u)).0).sum();
    Ok(sum / n as f64)
}

/// Estimated path-enumeration work above which exact cycle counting refuses.
pub const CYCLE_WORK_CAP: f64 = 2e9;

/// Labeled `r`-cycles: ordered tuples of `r` distinct nodes with every
/// consecutive pair (and the last–first pair) adjacent.
///
/// Paths `a1..a_{r-1}` are enumerated depth first; the closing node is
/// counted in one pass as `|N(a_{r-1}) ∩ N(a1) \ path|`.
pub fn labeled_cycles_exact(g: &BitGraph, r: usize) -> Result<u128> {
    if r < 3 {
        return Err(Error::domain(format!("cycle length must be >= 3, got {r}")));
    }
    let n = g.node_count();
    let work = n as f64 * (g.max_degree() as f64).powi(r as i32 - 2);
    if !(n <= 60 || r <= 5) || work > CYCLE_WORK_CAP {
        return Err(Error::SizeCap {
            what: "cycle enumeration work (N * maxdeg^(r-2))",
            requested: work.min(u64::MAX as f64) as u64,
            cap: CYCLE_WORK_CAP as u64,
        });
    }

    struct Walker<'a> {
        g: &'a BitGraph,
        r: usize,
        on_path: Vec<u64>,
        scratch: Vec<u64>,
    }

    impl Walker<'_> {
        fn extend(&mut self, first: usize, last: usize, len: usize) -> u128 {
            if len == self.r - 1 {
                let (a, b) = (self.g.row(last), self.g.row(first));
                return a
                    .iter()
                    .zip(b)
                    .zip(&self.on_path)
                    .map(|((x, y), p)| (x & y & !p).count_ones() as u128)
                    .sum();
            }
            self.scratch.copy_from_slice(self.g.row(last));
            for (s, p) in self.scratch.iter_mut().zip(&self.on_path) {
                *s &= !p;
            }
            let candidates: Vec<usize> = BitIter::new(&self.scratch).collect();
            let mut total = 0;
            for v in candidates {
                bitgraph::set_bit(&mut self.on_path, v);
                total += self.extend(first, v, len + 1);
                bitgraph::clear_bit(&mut self.on_path, v);
            }
            total
        }
    }

    let words = g.words_per_row();
    let mut walker = Walker {
        g,
        r,
        on_path: vec![0; words],
        scratch: vec![0; words],
    };
    let mut total = 0u128;
    for s in 0..n {
        bitgraph::set_bit(&mut walker.on_path, s);
        total += walker.extend(s, s, 1);
        bitgraph::clear_bit(&mut walker.on_path, s);
    }
    Ok(total)
}

/// `Tr(Aʳ)`, the number of closed walks of length `r`, in exact integers.
///
/// For each basis vector `e_i`, `w = A^{⌊r/2⌋} e_i` is built by repeated
/// matrix–vector products (the first is row `i` itself, the second a
/// popcount against row `i`); the diagonal entry is then `w·w` for even
/// `r` or `w·(A w)` for odd `r`.
pub fn closed_walks(g: &BitGraph, r: usize) -> Result<u128> {
    if r < 2 {
        return Err(Error::domain(format!("closed walks need r >= 2, got {r}")));
    }
    let n = g.node_count();
    let half = r / 2;
    let overflow = || Error::Overflow("closed walk count");
    let matvec = |w: &[u128]| -> Result<Vec<u128>> {
        (0..n)
            .map(|u| {
                BitIter::new(g.row(u)).try_fold(0u128, |acc, v| acc.checked_add(w[v]).ok_or_else(overflow))
            })
            .collect()
    };
    let dot = |a: &[u128], b: &[u128]| -> Result<u128> {
        a.iter().zip(b).try_fold(0u128, |acc, (x, y)| {
            x.checked_mul(*y)
                .and_then(|p| acc.checked_add(p))
                .ok_or_else(overflow)
        })
    };
    let mut total = 0u128;
    for i in 0..n {
        let row_i = g.row(i);
        let mut w: Vec<u128> = if half >= 2 {
            (0..n).map(|u| and_popcount(g.row(u), row_i) as u128).collect()
        } else {
            (0..n).map(|u| bitgraph::test_bit(row_i, u) as u128).collect()
        };
        for _ in 2..half {
            w = matvec(&w)?;
        }
        let diag = if r.is_multiple_of(2) {
            dot(&w, &w)?
        } else {
            dot(&w, &matvec(&w)?)?
        };
        total = total.checked_add(diag).ok_or_else(overflow)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleCountRecord {
    pub r: usize,
    pub exact_labeled: Option<u128>,
    pub closed_walks: u128,
    /// `(6n/π²)^r`.
    pub upper_bound: f64,
    /// `N^r p^r (1−p)^{r(r−3)/2}` with `p = 6/π²`.
    pub wpr_estimate: f64,
}

/// Exact cycles (when within the enumeration guard), closed walks and the
/// two asymptotic references for one cycle length.
pub fn cycle_record(net: &CoprimeNetwork, r: usize) -> Result<CycleCountRecord> {
    let g = net.graph();
    let exact_labeled = match labeled_cycles_exact(g, r) {
        Ok(c) => Some(c),
        Err(Error::SizeCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let p = COPRIME_DENSITY;
    let nn = g.node_count() as f64;
    let rf = r as f64;
    Ok(CycleCountRecord {
        r,
        exact_labeled,
        closed_walks: closed_walks(g, r)?,
        upper_bound: (p * net.n() as f64).powi(r as i32),
        wpr_estimate: (nn * p).powi(r as i32) * (1.0 - p).powf(rf * (rf - 3.0) / 2.0),
    })
}

/// Degree → number of nodes with that degree.
pub fn degree_histogram(g: &BitGraph) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for d in g.degrees() {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkStats {
    pub n: u64,
    pub node_count: usize,
    pub edge_count: u64,
    pub link_density: Option<f64>,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub diameter: Diameter,
    pub avg_clustering: f64,
}

impl NetworkStats {
    pub fn compute(net: &CoprimeNetwork) -> Result<Self> {
        let g = net.graph();
        Ok(NetworkStats {
            n: net.n(),
            node_count: net.node_count(),
            edge_count: net.edge_count(),
            link_density: link_density(g).ok(),
            avg_degree: average_degree(g)?,
            max_degree: g.max_degree(),
            diameter: diameter(g),
            avg_clustering: average_local_clustering(g)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::build_network;
    use crate::numtheory::build_sieve;

    fn net(n: u64) -> CoprimeNetwork {
        build_network(n, &build_sieve(n.max(2)).unwrap()).unwrap()
    }

    /// Floyd–Warshall on a dense matrix.
    fn fw_diameter(g: &BitGraph) -> Option<u32> {
        let n = g.node_count();
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = 0;
            for v in g.neighbors(u) {
                row[v] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        let m = d.iter().flatten().copied().max().unwrap_or(0);
        (m < inf).then_some(m)
    }

    fn brute_triangles(g: &BitGraph) -> Vec<u64> {
        let n = g.node_count();
        let mut t = vec![0u64; n];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        t[a] += 1;
                        t[b] += 1;
                        t[c] += 1;
                    }
                }
            }
        }
        t
    }

    fn brute_cycles(g: &BitGraph, r: usize) -> u128 {
        fn rec(g: &BitGraph, r: usize, path: &mut Vec<usize>) -> u128 {
            if path.len() == r {
                return g.has_edge(path[r - 1], path[0]) as u128;
            }
            let last = *path.last().unwrap();
            let mut c = 0;
            for v in 0..g.node_count() {
                if !path.contains(&v) && g.has_edge(last, v) {
                    path.push(v);
                    c += rec(g, r, path);
                    path.pop();
                }
            }
            c
        }
        (0..g.node_count()).map(|s| rec(g, r, &mut vec![s])).sum()
    }

    fn dense_power_trace(g: &BitGraph, r: usize) -> u128 {
        let n = g.node_count();
        let a: Vec<Vec<u128>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v) as u128).collect()).collect();
        let mut p = a.clone();
        for _ in 1..r {
            let mut q = vec![vec![0u128; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if p[i][k] != 0 {
                        for j in 0..n {
                            q[i][j] += p[i][k] * a[k][j];
                        }
                    }
                }
            }
            p = q;
        }
        (0..n).map(|i| p[i][i]).sum()
    }

    #[test]
    fn density_and_degree_small() {
        let g10 = net(10);
        assert!((link_density(g10.graph()).unwrap() - 0.3).abs() < 1e-15);
        assert!((average_degree(g10.graph()).unwrap() - 1.2).abs() < 1e-15);
        assert!(link_density(net(4).graph()).is_err());
    }

    #[test]
    fn slope_fit_recovers_exponent() {
        let pts: Vec<_> = (1..10).map(|i| (i as f64, 3.0 * (i as f64).powf(1.5))).collect();
        assert!((loglog_slope(&pts).unwrap() - 1.5).abs() < 1e-12);
        assert!(loglog_slope(&pts[..1]).is_err());
    }

    #[test]
    fn diameter_matches_floyd_warshall() {
        let s = build_sieve(150).unwrap();
        for n in 4..=150 {
            let net = build_network(n, &s).unwrap();
            let g = net.graph();
            let expect = fw_diameter(g);
            match diameter(g) {
                Diameter::Finite(d) => assert_eq!(Some(d), expect, "n={n}"),
                Diameter::Disconnected { components } => {
                    assert_eq!(expect, None, "n={n}");
                    assert!(components >= 2);
                }
            }
        }
    }

    #[test]
    fn diameter_of_synthetic_graphs() {
        assert_eq!(diameter(&BitGraph::path(7)), Diameter::Finite(6));
        assert_eq!(diameter(&BitGraph::complete(5)), Diameter::Finite(1));
        let g = BitGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter(&g), Diameter::Disconnected { components: 2 });
        let star = BitGraph::from_edges(200, (1..200).map(|v| (0, v))).unwrap();
        assert_eq!(diameter(&star), Diameter::Finite(2));
        assert_eq!(bfs_distances(&BitGraph::path(3), 0), vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn disconnected_at_thirty() {
        assert!(matches!(diameter(net(30).graph()), Diameter::Disconnected { .. }));
    }

    #[test]
    fn triangles_small_cases() {
        let n25 = net(25);
        let tri = triangles_per_node(n25.graph());
        assert_eq!(tri[n25.index_of(4).unwrap()], 2);
        let n10 = net(10);
        assert_eq!(triangles_per_node(n10.graph())[n10.index_of(9).unwrap()], 0);
        for n in [25, 49, 100, 150] {
            let g = net(n);
            assert_eq!(triangles_per_node(g.graph()), brute_triangles(g.graph()), "n={n}");
        }
    }

    #[test]
    fn clustering_records_and_conventions() {
        let n25 = net(25);
        let recs = clustering_records(&n25);
        let r4 = recs.iter().find(|r| r.label == 4).unwrap();
        assert_eq!(r4, &local_clustering(&n25, 4).unwrap());
        assert_eq!(r4.triangles, 2);
        assert!((r4.local_cc - 1.0 / 3.0).abs() < 1e-15);
        assert!((r4.asymptotic_cc - 8.0 / (std::f64::consts::PI.powi(2))).abs() < 1e-15);
        for r in &recs {
            assert!((0.0..=1.0).contains(&r.local_cc));
            assert!(r.triangles as usize <= r.degree * r.degree.saturating_sub(1) / 2);
            assert_eq!(r.degenerate, r.degree < 2);
        }
        let n10 = net(10);
        let r8 = local_clustering(&n10, 8).unwrap();
        assert_eq!((r8.degree, r8.local_cc, r8.degenerate), (1, 0.0, true));
    }

    #[test]
    fn twins_share_degree_and_triangles() {
        let n = net(300);
        let recs = clustering_records(&n);
        for class in twin_classes(n.graph()) {
            let first = &recs[class[0]];
            for &u in &class[1..] {
                assert_eq!(recs[u].degree, first.degree);
                assert_eq!(recs[u].triangles, first.triangles);
            }
        }
        // Equal radicals force equal rows; the converse fails (4 and 202 at n = 300).
        let classes = twin_classes(n.graph());
        let mut class_of = vec![0; n.node_count()];
        for (c, m) in classes.iter().enumerate() {
            m.iter().for_each(|&u| class_of[u] = c);
        }
        for u in 0..n.node_count() {
            for v in u + 1..n.node_count() {
                if n.signature(u).radical == n.signature(v).radical {
                    assert_eq!(class_of[u], class_of[v]);
                }
            }
        }
        assert_eq!(class_of[n.index_of(4).unwrap()], class_of[n.index_of(202).unwrap()]);
    }

    #[test]
    fn cycles_small() {
        let n25 = net(25);
        let t = total_triangles(&triangles_per_node(n25.graph()));
        assert_eq!(labeled_cycles_exact(n25.graph(), 3).unwrap(), 6 * t as u128);
        assert_eq!(brute_cycles(n25.graph(), 3), 6 * t as u128);
        let n10 = net(10);
        assert_eq!(labeled_cycles_exact(n10.graph(), 3).unwrap(), 0);
        assert_eq!(labeled_cycles_exact(n10.graph(), 4).unwrap(), 0);
        for r in 3..=6 {
            assert_eq!(labeled_cycles_exact(n25.graph(), r).unwrap(), brute_cycles(n25.graph(), r), "r={r}");
        }
        let k5 = BitGraph::complete(5);
        // 5·4·3·2 ordered 4-tuples of distinct nodes, all cyclically adjacent.
        assert_eq!(labeled_cycles_exact(&k5, 4).unwrap(), 120);
        assert!(labeled_cycles_exact(&k5, 2).is_err());
    }

    #[test]
    fn cycle_guard_refuses_large_instances() {
        let big = net(3000);
        assert!(matches!(labeled_cycles_exact(big.graph(), 8), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn closed_walks_match_dense_powers() {
        for n in [10, 25, 60] {
            let g = net(n);
            for r in 2..=6 {
                assert_eq!(closed_walks(g.graph(), r).unwrap(), dense_power_trace(g.graph(), r), "n={n} r={r}");
            }
        }
        let n10 = net(10);
        assert_eq!(closed_walks(n10.graph(), 2).unwrap(), 6);
        assert!(closed_walks(n10.graph(), 1).is_err());
    }

    #[test]
    fn trace_identities() {
        let g = net(120);
        let tri = total_triangles(&triangles_per_node(g.graph()));
        assert_eq!(closed_walks(g.graph(), 2).unwrap(), 2 * g.edge_count() as u128);
        assert_eq!(closed_walks(g.graph(), 3).unwrap(), 6 * tri as u128);
        let rec = cycle_record(&g, 4).unwrap();
        assert!(rec.exact_labeled.unwrap() <= rec.closed_walks);
    }

    #[test]
    fn histogram() {
        let h = degree_histogram(net(10).graph());
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 3), (3, 1)]));
        let n100 = net(100);
        let h = degree_histogram(n100.graph());
        assert_eq!(h.values().sum::<usize>(), n100.node_count());
        let d4 = n100.degrees()[n100.index_of(4).unwrap()];
        assert!(h[&d4] >= 6, "4, 8, 16, 32, 64 and any equal-degree node share the bin");
    }

    #[test]
    fn stats_invariants() {
        let s = NetworkStats::compute(&net(500)).unwrap();
        let nn = s.node_count as f64;
        assert_eq!(s.link_density.unwrap(), 2.0 * s.edge_count as f64 / (nn * (nn - 1.0)));
        assert_eq!(s.avg_degree, 2.0 * s.edge_count as f64 / nn);
        assert_eq!(s.diameter, Diameter::Finite(2));
    }
}
