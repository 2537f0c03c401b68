//! Dense undirected simple graphs stored as one bitset row per node.

use crate::error::{Error, Result};

/// Symmetric adjacency matrix with rows packed into `u64` words.
///
/// Rows are sized for `capacity` nodes up front so a graph can grow node by
/// node without relaying out memory. Bits at or beyond `node_count` are
/// always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    node_count: usize,
    capacity: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
fn word_bit(v: usize) -> (usize, u64) {
    (v / 64, 1u64 << (v % 64))
}

impl BitGraph {
    pub fn new(node_count: usize) -> Self {
        let mut g = Self::with_capacity(node_count);
        g.node_count = node_count;
        g
    }

    pub fn with_capacity(capacity: usize) -> Self {
        let words = capacity.div_ceil(64).max(1);
        BitGraph {
            node_count: 0,
            capacity,
            words,
            rows: vec![0; words * capacity],
        }
    }

    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(node_count);
        for (u, v) in edges {
            if u == v || u >= node_count || v >= node_count {
                return Err(Error::domain(format!("invalid edge ({u}, {v}) for {node_count} nodes")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(node_count: usize) -> Self {
        let mut g = Self::new(node_count);
        for u in 0..node_count {
            for v in u + 1..node_count {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn path(node_count: usize) -> Self {
        let mut g = Self::new(node_count);
        for u in 1..node_count {
            g.set_edge(u - 1, u);
        }
        g
    }

    /// Append an isolated node, returning its index.
    pub fn push_node(&mut self) -> Result<usize> {
        if self.node_count == self.capacity {
            return Err(Error::SizeCap {
                what: "graph nodes",
                requested: self.node_count as u64 + 1,
                cap: self.capacity as u64,
            });
        }
        self.node_count += 1;
        Ok(self.node_count - 1)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, u: usize) -> &mut [u64] {
        &mut self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (w, b) = word_bit(v);
        self.rows[u * self.words + w] & b != 0
    }

    pub fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.node_count && v < self.node_count);
        let (w, b) = word_bit(v);
        self.rows[u * self.words + w] |= b;
        let (w, b) = word_bit(u);
        self.rows[v * self.words + w] |= b;
    }

    pub fn degree(&self, u: usize) -> usize {
        popcount(self.row(u))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.node_count).map(|u| self.degree(u) as u64).sum::<u64>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        and_popcount(self.row(u), self.row(v))
    }

    pub fn neighbors(&self, u: usize) -> BitIter<'_> {
        BitIter::new(self.row(u))
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Bitset with the first `node_count` bits set.
    pub fn full_set(&self) -> Vec<u64> {
        let mut s = vec![0u64; self.words];
        for (i, w) in s.iter_mut().enumerate() {
            let lo = i * 64;
            if lo + 64 <= self.node_count {
                *w = u64::MAX;
            } else if lo < self.node_count {
                *w = (1u64 << (self.node_count - lo)) - 1;
            }
        }
        s
    }
}

#[inline]
pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Whether two bitsets share a set bit; stops at the first shared word.
#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
pub fn test_bit(words: &[u64], v: usize) -> bool {
    let (w, b) = word_bit(v);
    words[w] & b != 0
}

#[inline]
pub fn set_bit(words: &mut [u64], v: usize) {
    let (w, b) = word_bit(v);
    words[w] |= b;
}

#[inline]
pub fn clear_bit(words: &mut [u64], v: usize) {
    let (w, b) = word_bit(v);
    words[w] &= !b;
}

/// Ascending indices of the set bits in a bitset.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complete_and_path() {
        let k5 = BitGraph::complete(5);
        assert_eq!(k5.edge_count(), 10);
        assert!(k5.degrees().iter().all(|&d| d == 4));
        assert_eq!(k5.codegree(0, 1), 3);
        let p3 = BitGraph::path(3);
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn growth_respects_capacity() {
        let mut g = BitGraph::with_capacity(2);
        assert_eq!(g.push_node().unwrap(), 0);
        assert_eq!(g.push_node().unwrap(), 1);
        assert!(g.push_node().is_err());
        g.set_edge(0, 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn full_set_masks_tail() {
        for n in [1, 63, 64, 65, 130] {
            let g = BitGraph::new(n);
            assert_eq!(popcount(&g.full_set()), n);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(BitGraph::from_edges(3, [(0, 0)]).is_err());
        assert!(BitGraph::from_edges(3, [(0, 3)]).is_err());
    }

    proptest! {
        #[test]
        fn edge_roundtrip_and_symmetry(n in 1usize..150, raw in proptest::collection::vec((0usize..150, 0usize..150), 0..400)) {
            let edges: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = BitGraph::from_edges(n, edges.iter().copied()).unwrap();
            let mut expect: Vec<_> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            expect.sort();
            expect.dedup();
            prop_assert_eq!(g.edges().collect::<Vec<_>>(), expect.clone());
            prop_assert_eq!(g.edge_count() as usize, expect.len());
            for u in 0..n {
                prop_assert!(!g.has_edge(u, u));
                for v in 0..n {
                    prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                }
            }
        }
    }
}
