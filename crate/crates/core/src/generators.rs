//! Seeded comparison graphs: Erdős–Rényi `G(N, M)` and Barabási–Albert
//! preferential attachment, sized to match a coprime network.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, whose
//! stream is fixed across platforms and releases of `rand_chacha`.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitgraph::BitGraph;
use crate::error::{Error, Result};
use crate::network::CoprimeNetwork;

/// Name of the generator algorithm, embedded in output headers.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Coprime,
    Er,
    Ba,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Coprime => "coprime",
            Family::Er => "er",
            Family::Ba => "ba",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "coprime" => Ok(Family::Coprime),
            "er" => Ok(Family::Er),
            "ba" => Ok(Family::Ba),
            other => Err(Error::domain(format!("unknown graph family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomGraph {
    pub family: Family,
    pub seed: u64,
    pub target_edges: u64,
    pub achieved_edges: u64,
    pub graph: BitGraph,
}

impl RandomGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Edge list `u v` (node indices, `u < v`) preceded by `#` header
    /// lines naming the family, seed and generator.
    pub fn write_edge_list<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# family: {}", self.family)?;
        writeln!(out, "# seed: {}", self.seed)?;
        writeln!(out, "# rng: {RNG_ALGORITHM}")?;
        writeln!(out, "# nodes: {}", self.node_count())?;
        writeln!(out, "# target_edges: {}", self.target_edges)?;
        writeln!(out, "# achieved_edges: {}", self.achieved_edges)?;
        for (u, v) in self.graph.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

fn pair_count(n: usize) -> u64 {
    n as u64 * n.saturating_sub(1) as u64 / 2
}

/// Decode a row-major index over the pairs `u < v` of `n` nodes.
fn unrank_pair(mut idx: u64, n: usize) -> (usize, usize) {
    let mut u = 0usize;
    loop {
        let row = (n - 1 - u) as u64;
        if idx < row {
            return (u, u + 1 + idx as usize);
        }
        idx -= row;
        u += 1;
    }
}

/// Uniform `G(N, M)`: `M` distinct pairs drawn without replacement.
pub fn gen_er(node_count: usize, edges: u64, seed: u64) -> Result<RandomGraph> {
    if node_count < 2 {
        return Err(Error::domain(format!("ER generator needs N >= 2, got {node_count}")));
    }
    let total = pair_count(node_count);
    if edges > total {
        return Err(Error::domain(format!("M = {edges} exceeds C(N,2) = {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = index::sample(&mut rng, total as usize, edges as usize)
        .into_iter()
        .map(|i| i as u64)
        .collect();
    picked.sort_unstable();
    let mut graph = BitGraph::new(node_count);
    // Walk the sorted ranks alongside the row boundaries.
    let (mut u, mut row_start) = (0usize, 0u64);
    for idx in picked {
        while idx >= row_start + (node_count - 1 - u) as u64 {
            row_start += (node_count - 1 - u) as u64;
            u += 1;
        }
        let v = u + 1 + (idx - row_start) as usize;
        debug_assert_eq!((u, v), unrank_pair(idx, node_count));
        graph.set_edge(u, v);
    }
    Ok(RandomGraph {
        family: Family::Er,
        seed,
        target_edges: edges,
        achieved_edges: graph.edge_count(),
        graph,
    })
}

/// Edge count of a BA graph: a clique on `m + 1` seed nodes plus `m`
/// edges for every later arrival.
pub fn ba_edge_count(node_count: usize, m: usize) -> u64 {
    let m0 = (m + 1) as u64;
    m0 * (m0 - 1) / 2 + m as u64 * (node_count as u64 - m0)
}

/// Preferential attachment: each arriving node picks `m` distinct existing
/// nodes with probability proportional to their current degree.
pub fn gen_ba(node_count: usize, m: usize, seed: u64) -> Result<RandomGraph> {
    if m < 1 || m >= node_count {
        return Err(Error::domain(format!(
            "BA generator needs 1 <= m < N, got m = {m}, N = {node_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = BitGraph::new(node_count);
    let m0 = m + 1;
    for u in 0..m0 {
        for v in u + 1..m0 {
            graph.set_edge(u, v);
        }
    }
    let mut degree: Vec<f64> = (0..node_count).map(|u| if u < m0 { m as f64 } else { 0.0 }).collect();
    for new in m0..node_count {
        let targets = index::sample_weighted(&mut rng, new, |i| degree[i], m)
            .map_err(|e| Error::Generation(format!("BA attachment at node {new}: {e}")))?;
        for t in targets.into_iter() {
            graph.set_edge(new, t);
            degree[t] += 1.0;
        }
        degree[new] = m as f64;
    }
    let achieved_edges = graph.edge_count();
    debug_assert_eq!(achieved_edges, ba_edge_count(node_count, m));
    Ok(RandomGraph {
        family: Family::Ba,
        seed,
        target_edges: achieved_edges,
        achieved_edges,
        graph,
    })
}

/// Generator parameters matched to a coprime network's `N` and `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedParameters {
    pub node_count: usize,
    pub target_edges: u64,
    /// `G(N, M)` with `M = E` exactly.
    pub er_edges: u64,
    /// BA attachment count `m = round(E / N)`.
    pub ba_m: usize,
    /// Edge count BA will produce with `ba_m`.
    pub ba_edges: u64,
}

pub fn match_parameters(net: &CoprimeNetwork) -> Result<MatchedParameters> {
    match_counts(net.node_count(), net.edge_count())
}

pub fn match_counts(node_count: usize, edges: u64) -> Result<MatchedParameters> {
    if node_count < 2 {
        return Err(Error::domain(format!("cannot match generators to {node_count} node(s)")));
    }
    let ba_m = ((edges as f64 / node_count as f64).round() as usize).clamp(1, node_count - 1);
    Ok(MatchedParameters {
        node_count,
        target_edges: edges,
        er_edges: edges,
        ba_m,
        ba_edges: ba_edge_count(node_count, ba_m),
    })
}

/// Generate a comparator for `family` with matched parameters; `target_edges`
/// on the result is the coprime `E` for both random families.
pub fn gen_matched(family: Family, params: &MatchedParameters, seed: u64) -> Result<RandomGraph> {
    let mut g = match family {
        Family::Er => gen_er(params.node_count, params.er_edges, seed)?,
        Family::Ba => gen_ba(params.node_count, params.ba_m, seed)?,
        Family::Coprime => return Err(Error::domain("the coprime family is not randomly generated")),
    };
    g.target_edges = params.target_edges;
    Ok(g)
}

/// Seed for retry `attempt` of a base seed (attempt 0 is the seed itself).
pub fn derived_seed(seed: u64, attempt: u32) -> u64 {
    seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}
