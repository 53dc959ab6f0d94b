//! Immutable simple undirected graphs.
//!
//! Vertices are dense indices `0..n`. Adjacency is held twice: as one bit row
//! per vertex (for O(1) edge queries and clique work) and as sorted neighbor
//! lists (for iteration).

mod chordal;
mod clique;
mod dimacs;
mod generate;
mod p4;
mod small;

pub use chordal::{is_chordal, Chordality, PerfectEliminationOrder};
pub use clique::{clique_number, CliqueOutcome};
pub use dimacs::{parse_dimacs, write_dimacs};
pub use generate::{generate, tree_t, tree_t_precoloring, Family, SpiderKind};
pub use p4::{induced_p4_count, is_p4_sparse, P4Sparseness};
pub use small::{all_labeled_graphs, canonical_form, nonisomorphic_graphs};

use crate::error::GraphError;

/// Bit row used for adjacency and vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(n: usize) -> Self {
        BitRow {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitRow>,
    nbrs: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![BitRow::new(n); n],
            nbrs: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    /// Builds a graph from 0-based edges. Duplicates and reversed pairs
    /// collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows = vec![BitRow::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<BitRow>) -> Self {
        let nbrs: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().collect()).collect();
        let edge_count = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            rows,
            nbrs,
            edge_count,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &BitRow {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Subgraph induced by `vs`; vertex `i` of the result is `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let k = vs.len();
        let mut rows = vec![BitRow::new(k); k];
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        let mut g = Self::from_rows(rows);
        if let Some(labels) = &self.labels {
            g.labels = Some(vs.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut rows = vec![BitRow::new(n); n];
        for (u, row) in rows.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && !self.has_edge(u, v) {
                    row.insert(v);
                }
            }
        }
        Self::from_rows(rows)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Non-increasing degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Stable 64-bit fingerprint of `(n, E)`; used as a graph id.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the vertex count and the sorted edge list.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.n() as u64);
        for (u, v) in self.edges() {
            feed(u as u64);
            feed(v as u64);
        }
        h
    }
}

/// `m(G)`: the largest `k` such that at least `k` vertices have degree at
/// least `k - 1`. Zero for the graph with no vertices.
pub fn m_degree_bound(g: &Graph) -> usize {
    let d = g.degree_sequence();
    let mut best = 0;
    for (i, &deg) in d.iter().enumerate() {
        let k = i + 1;
        if deg + 1 >= k {
            best = k;
        } else {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn m_bound_small_cases() {
        assert_eq!(m_degree_bound(&Graph::empty(0)), 0);
        assert_eq!(m_degree_bound(&Graph::empty(5)), 1);
        let k4 = generate(Family::Complete, &[4]).unwrap();
        assert_eq!(m_degree_bound(&k4), 4);
        assert_eq!(m_degree_bound(&tree_t()), 4);
    }

    #[test]
    fn bitrow_iteration_crosses_words() {
        let mut r = BitRow::new(130);
        for i in [0, 63, 64, 129] {
            r.insert(i);
        }
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        r.remove(64);
        assert_eq!(r.count(), 3);
    }

    #[test]
    fn induced_and_complement() {
        let p4 = generate(Family::Path, &[4]).unwrap();
        let co = p4.complement();
        assert_eq!(co.edge_count(), 3);
        let mid = p4.induced(&[1, 2]);
        assert_eq!(mid.edge_count(), 1);
        assert_eq!(p4.components().len(), 1);
        assert_eq!(Graph::empty(3).components().len(), 3);
    }
}
