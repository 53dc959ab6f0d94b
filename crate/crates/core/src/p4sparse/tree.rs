//! Spider detection and primeval decomposition trees.

use serde::Serialize;

use crate::error::DescentError;
use crate::graph::{is_p4_sparse, Graph, P4Sparseness, SpiderKind};

/// Clique `C`, stable set `S` and head `R` of a spider. `stable[i]` is the
/// partner of `clique[i]`: its neighbor (thin) or its unique non-neighbor
/// (thick) in `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiderParts {
    pub clique: Vec<usize>,
    pub stable: Vec<usize>,
    pub head: Vec<usize>,
    pub kind: SpiderKind,
}

impl SpiderParts {
    /// Whether `parts` describes exactly the subgraph of `g` induced by `vs`.
    pub fn is_valid_for(&self, g: &Graph, vs: &[usize]) -> bool {
        let q = self.clique.len();
        if q < 2 || self.stable.len() != q {
            return false;
        }
        let mut all: Vec<usize> = self
            .clique
            .iter()
            .chain(&self.stable)
            .chain(&self.head)
            .copied()
            .collect();
        all.sort_unstable();
        let mut want = vs.to_vec();
        want.sort_unstable();
        if all != want {
            return false;
        }
        if !g.is_clique(&self.clique) || !g.is_stable(&self.stable) {
            return false;
        }
        for (i, &s) in self.stable.iter().enumerate() {
            for (j, &c) in self.clique.iter().enumerate() {
                let expect = match self.kind {
                    SpiderKind::Thin => i == j,
                    SpiderKind::Thick => i != j,
                };
                if g.has_edge(s, c) != expect {
                    return false;
                }
            }
            if self.head.iter().any(|&r| g.has_edge(s, r)) {
                return false;
            }
        }
        self.head.iter().all(|&r| self.clique.iter().all(|&c| g.has_edge(r, c)))
    }
}

/// Thin spider inside `vs`: the stable side is exactly the set of vertices of
/// degree one, since head vertices see all of `C`.
fn detect_thin(vs: &[usize], adjacent: &dyn Fn(usize, usize) -> bool) -> Option<SpiderParts> {
    let nbrs = |v: usize| vs.iter().copied().filter(move |&w| w != v && adjacent(v, w));
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &v in vs {
        let mut it = nbrs(v);
        if let (Some(c), None) = (it.next(), it.next()) {
            pairs.push((c, v));
        }
    }
    if pairs.len() < 2 {
        return None;
    }
    pairs.sort_unstable();
    let clique: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let stable: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    if clique.windows(2).any(|w| w[0] == w[1]) || clique.iter().any(|c| stable.contains(c)) {
        return None;
    }
    let head = vs
        .iter()
        .copied()
        .filter(|v| !clique.contains(v) && !stable.contains(v))
        .collect();
    Some(SpiderParts {
        clique,
        stable,
        head,
        kind: SpiderKind::Thin,
    })
}

/// Spider structure of the subgraph induced by `vs`, if any. Thin is tried
/// first, so the four-vertex case (both thin and thick) reports thin.
pub fn detect_spider_within(g: &Graph, vs: &[usize]) -> Option<SpiderParts> {
    if vs.len() < 4 {
        return None;
    }
    if let Some(p) = detect_thin(vs, &|a, b| g.has_edge(a, b)) {
        if p.is_valid_for(g, vs) {
            return Some(p);
        }
    }
    // A thick spider is a thin spider of the complement with C and S swapped.
    let co = detect_thin(vs, &|a, b| !g.has_edge(a, b))?;
    let mut pairs: Vec<(usize, usize)> = co.stable.iter().copied().zip(co.clique.iter().copied()).collect();
    pairs.sort_unstable();
    let p = SpiderParts {
        clique: pairs.iter().map(|p| p.0).collect(),
        stable: pairs.iter().map(|p| p.1).collect(),
        head: co.head,
        kind: SpiderKind::Thick,
    };
    p.is_valid_for(g, vs).then_some(p)
}

pub fn detect_spider(g: &Graph) -> Option<SpiderParts> {
    let all: Vec<usize> = (0..g.n()).collect();
    detect_spider_within(g, &all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Union,
    Join,
    Spider,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Clique,
    Stable,
    /// Spider with empty head; as the left child of a spider node its head
    /// is the right sibling.
    Spider(SpiderParts),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    Leaf { kind: LeafKind, vertices: Vec<usize> },
    Internal { op: Operation, left: usize, right: usize },
}

/// Binary decomposition tree; vertex ids are those of the decomposed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimevalTree {
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl PrimevalTree {
    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                Node::Leaf { .. } => out.push(x),
                Node::Internal { left, right, .. } => {
                    stack.push(*right);
                    stack.push(*left);
                }
            }
        }
        out
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if let Node::Internal { left, right, .. } = node {
                p[*left] = Some(i);
                p[*right] = Some(i);
            }
        }
        p
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            if let Node::Internal { left, right, .. } = &self.nodes[x] {
                d[*left] = d[x] + 1;
                d[*right] = d[x] + 1;
                stack.push(*left);
                stack.push(*right);
            }
        }
        d
    }

    /// Vertices below `x`, ascending.
    pub fn vertices(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match &self.nodes[y] {
                Node::Leaf { vertices, .. } => out.extend_from_slice(vertices),
                Node::Internal { left, right, .. } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Rebuilds the graph on `n` vertices from the labeled operations.
    pub fn reconstruct(&self, n: usize) -> Graph {
        let mut edges = Vec::new();
        for (x, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf { kind, vertices } => match kind {
                    LeafKind::Clique => {
                        for (i, &a) in vertices.iter().enumerate() {
                            for &b in &vertices[i + 1..] {
                                edges.push((a, b));
                            }
                        }
                    }
                    LeafKind::Stable => {}
                    LeafKind::Spider(p) => {
                        for (i, &a) in p.clique.iter().enumerate() {
                            for &b in &p.clique[i + 1..] {
                                edges.push((a, b));
                            }
                            for (j, &s) in p.stable.iter().enumerate() {
                                if (i == j) == (p.kind == SpiderKind::Thin) {
                                    edges.push((a, s));
                                }
                            }
                        }
                    }
                },
                Node::Internal { op, left, right } => {
                    let rs = self.vertices(*right);
                    let ls = match op {
                        Operation::Union => continue,
                        Operation::Join => self.vertices(*left),
                        Operation::Spider => match &self.nodes[*left] {
                            Node::Leaf {
                                kind: LeafKind::Spider(p),
                                ..
                            } => p.clique.clone(),
                            _ => panic!("spider node {x} without a spider body"),
                        },
                    };
                    for &a in &ls {
                        for &b in &rs {
                            edges.push((a, b));
                        }
                    }
                }
            }
        }
        Graph::from_edges(n, &edges).expect("tree vertices in range")
    }

    /// No union over two stable leaves and no join over two clique leaves.
    pub fn is_minimal(&self) -> bool {
        self.nodes.iter().all(|node| match node {
            Node::Internal { op, left, right } => {
                let kind = |x: usize| match &self.nodes[x] {
                    Node::Leaf { kind, .. } => Some(kind.clone()),
                    _ => None,
                };
                !matches!(
                    (op, kind(*left), kind(*right)),
                    (Operation::Union, Some(LeafKind::Stable), Some(LeafKind::Stable))
                        | (Operation::Join, Some(LeafKind::Clique), Some(LeafKind::Clique))
                )
            }
            Node::Leaf { .. } => true,
        })
    }
}

/// Connected components of `g[vs]` (or of its complement), each ascending,
/// ordered by smallest vertex.
fn components_within(g: &Graph, vs: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; vs.len()];
    let mut out = Vec::new();
    for start in 0..vs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![vs[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..vs.len() {
                if !seen[j] && g.has_edge(vs[i], vs[j]) != complement {
                    seen[j] = true;
                    comp.push(vs[j]);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

struct Builder<'a> {
    g: &'a Graph,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn leaf(&mut self, kind: LeafKind, vertices: Vec<usize>) -> usize {
        self.nodes.push(Node::Leaf { kind, vertices });
        self.nodes.len() - 1
    }

    fn internal(&mut self, op: Operation, left: usize, right: usize) -> usize {
        self.nodes.push(Node::Internal { op, left, right });
        self.nodes.len() - 1
    }

    /// Singleton components merge into one group (stable under union,
    /// clique under join); groups nest to the right by smallest vertex.
    fn chain(&mut self, op: Operation, comps: Vec<Vec<usize>>) -> Result<usize, Vec<usize>> {
        let mut singles = Vec::new();
        let mut groups = Vec::new();
        for c in comps {
            if c.len() == 1 {
                singles.push(c[0]);
            } else {
                groups.push(c);
            }
        }
        if !singles.is_empty() {
            groups.push(singles);
        }
        groups.sort_by_key(|grp| grp[0]);
        let mut ids = Vec::new();
        for grp in groups {
            ids.push(self.build(grp)?);
        }
        let mut acc = ids.pop().expect("at least two groups");
        while let Some(left) = ids.pop() {
            acc = self.internal(op, left, acc);
        }
        Ok(acc)
    }

    fn build(&mut self, vs: Vec<usize>) -> Result<usize, Vec<usize>> {
        if self.g.is_clique(&vs) {
            return Ok(self.leaf(LeafKind::Clique, vs));
        }
        if self.g.is_stable(&vs) {
            return Ok(self.leaf(LeafKind::Stable, vs));
        }
        let comps = components_within(self.g, &vs, false);
        if comps.len() > 1 {
            return self.chain(Operation::Union, comps);
        }
        let co = components_within(self.g, &vs, true);
        if co.len() > 1 {
            return self.chain(Operation::Join, co);
        }
        let parts = detect_spider_within(self.g, &vs).ok_or(vs)?;
        let mut body: Vec<usize> = parts.clique.iter().chain(&parts.stable).copied().collect();
        body.sort_unstable();
        let head = parts.head.clone();
        let leaf = self.leaf(
            LeafKind::Spider(SpiderParts {
                head: Vec::new(),
                ..parts
            }),
            body,
        );
        if head.is_empty() {
            return Ok(leaf);
        }
        let right = self.build(head)?;
        Ok(self.internal(Operation::Spider, leaf, right))
    }
}

/// Decomposition of `g[vs]`; `vs` must induce a P4-sparse graph. An error
/// carries a vertex set that is neither disconnected, co-disconnected nor a
/// spider.
pub(crate) fn decompose_within(g: &Graph, vs: &[usize]) -> Result<PrimevalTree, Vec<usize>> {
    let mut b = Builder { g, nodes: Vec::new() };
    let mut vs = vs.to_vec();
    vs.sort_unstable();
    let root = b.build(vs)?;
    Ok(PrimevalTree { nodes: b.nodes, root })
}

pub fn primeval_decompose(g: &Graph) -> Result<PrimevalTree, DescentError> {
    if let P4Sparseness::Witness(w) = is_p4_sparse(g) {
        return Err(DescentError::NotP4Sparse(w.to_vec()));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    decompose_within(g, &all).map_err(DescentError::NotP4Sparse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, nonisomorphic_graphs, Family};

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn p4_is_thin_spider() {
        let p = detect_spider(&generate(Family::Path, &[4]).unwrap()).unwrap();
        assert_eq!(p.clique, vec![1, 2]);
        assert_eq!(p.stable, vec![0, 3]);
        assert!(p.head.is_empty());
        assert_eq!(p.kind, SpiderKind::Thin);
    }

    #[test]
    fn generated_spiders_round_trip() {
        for c in 2..=5u64 {
            for (code, kind) in [(0, SpiderKind::Thin), (1, SpiderKind::Thick)] {
                let s = generate(Family::Spider, &[c, code]).unwrap();
                let p = detect_spider(&s).unwrap();
                assert_eq!(p.clique, (0..c as usize).collect::<Vec<_>>());
                if c > 2 {
                    assert_eq!(p.stable, (c as usize..2 * c as usize).collect::<Vec<_>>());
                    assert_eq!(p.kind, kind);
                }
            }
        }
    }

    #[test]
    fn c4_is_not_a_spider() {
        assert_eq!(detect_spider(&generate(Family::Cycle, &[4]).unwrap()), None);
    }

    #[test]
    fn spider_with_head() {
        // P4 on 0-1-2-3 with head {4, 5} complete to {1, 2}
        let gr = g(6, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)]);
        let p = detect_spider(&gr).unwrap();
        assert_eq!(p.head, vec![4, 5]);
        let t = primeval_decompose(&gr).unwrap();
        assert!(matches!(
            t.nodes[t.root],
            Node::Internal {
                op: Operation::Spider,
                ..
            }
        ));
        assert_eq!(t.reconstruct(6), gr);
    }

    #[test]
    fn decomposition_examples() {
        let two_k2 = g(4, &[(0, 1), (2, 3)]);
        let t = primeval_decompose(&two_k2).unwrap();
        let leaves = t.leaves();
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().all(|&x| matches!(
            t.nodes[x],
            Node::Leaf {
                kind: LeafKind::Clique,
                ..
            }
        )));

        let t = primeval_decompose(&generate(Family::Path, &[4]).unwrap()).unwrap();
        assert_eq!(t.nodes.len(), 1);

        // K1 joined with P4: vertex 4 universal
        let gr = g(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]);
        let t = primeval_decompose(&gr).unwrap();
        let Node::Internal { op, left, right } = &t.nodes[t.root] else {
            panic!()
        };
        assert_eq!(*op, Operation::Join);
        assert!(matches!(
            &t.nodes[*left],
            Node::Leaf {
                kind: LeafKind::Spider(_),
                ..
            }
        ));
        assert!(matches!(&t.nodes[*right], Node::Leaf { kind: LeafKind::Clique, vertices } if vertices == &vec![4]));
    }

    #[test]
    fn rejects_non_p4_sparse() {
        // C5 has five P4s on one 5-set
        assert!(matches!(
            primeval_decompose(&generate(Family::Cycle, &[5]).unwrap()),
            Err(DescentError::NotP4Sparse(_))
        ));
    }

    #[test]
    fn all_small_p4_sparse_graphs_decompose() {
        let mut count = 0;
        for n in 1..=6 {
            for gr in nonisomorphic_graphs(n) {
                if !is_p4_sparse(&gr).is_sparse() {
                    continue;
                }
                let t = primeval_decompose(&gr).unwrap();
                assert_eq!(t.reconstruct(n), gr);
                assert!(t.is_minimal());
                let mut leaf_vs: Vec<usize> = t.leaves().iter().flat_map(|&x| t.vertices(x)).collect();
                leaf_vs.sort_unstable();
                assert_eq!(leaf_vs, (0..n).collect::<Vec<_>>());
                count += 1;
            }
        }
        assert!(count > 100);
    }

    #[test]
    fn random_p4_sparse_graphs_decompose() {
        for seed in 0..60 {
            let gr = generate(Family::RandomP4Sparse, &[12, seed]).unwrap();
            let t = primeval_decompose(&gr).unwrap();
            assert_eq!(t.reconstruct(12), gr);
            assert!(t.is_minimal());
        }
    }
}
