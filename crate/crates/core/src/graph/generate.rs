//! Named graph families.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Graph;
use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiderKind {
    /// `C` and `S` joined by a perfect matching.
    Thin,
    /// `C` and `S` joined by an anti-matching.
    Thick,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Path,
    Cycle,
    Hypercube,
    Crown,
    /// params `[c, kind]` with kind 0 = thin, 1 = thick.
    Spider,
    TreeT,
    /// params `[n, seed]` or `[n, seed, density]`, density a percentage
    /// (default 60).
    RandomChordal,
    RandomP4Sparse,
    /// params `[n, seed]`; edge probability 1/2.
    RandomGnp,
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "K" | "complete" => Family::Complete,
            "P" | "path" => Family::Path,
            "C" | "cycle" => Family::Cycle,
            "Q" | "hypercube" => Family::Hypercube,
            "crown" => Family::Crown,
            "spider" => Family::Spider,
            "paper_tree_T" | "tree_T" | "T" => Family::TreeT,
            "random_chordal" => Family::RandomChordal,
            "random_p4_sparse" => Family::RandomP4Sparse,
            "random_gnp" => Family::RandomGnp,
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        })
    }
}

fn bad(family: &str, msg: impl Into<String>) -> GraphError {
    GraphError::BadParams {
        family: family.to_string(),
        msg: msg.into(),
    }
}

fn arity(family: &str, params: &[u64], want: usize) -> Result<(), GraphError> {
    if params.len() != want {
        return Err(bad(
            family,
            format!("expected {want} parameter(s), got {}", params.len()),
        ));
    }
    Ok(())
}

/// Builds a member of `family`. Output is deterministic for fixed params
/// (including the seed for the random families).
pub fn generate(family: Family, params: &[u64]) -> Result<Graph, GraphError> {
    match family {
        Family::Complete => {
            arity("complete", params, 1)?;
            Ok(complete(params[0] as usize))
        }
        Family::Path => {
            arity("path", params, 1)?;
            let n = params[0] as usize;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Cycle => {
            arity("cycle", params, 1)?;
            let n = params[0] as usize;
            if n < 3 {
                return Err(bad("cycle", "needs n >= 3"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Hypercube => {
            arity("hypercube", params, 1)?;
            let d = params[0] as usize;
            if d > 16 {
                return Err(bad("hypercube", "dimension too large"));
            }
            let n = 1usize << d;
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
                .filter(|&(u, v)| u < v)
                .collect();
            Graph::from_edges(n, &edges)
        }
        Family::Crown => {
            arity("crown", params, 1)?;
            let p = params[0] as usize;
            if p < 2 {
                return Err(bad("crown", "needs p >= 2"));
            }
            let edges: Vec<_> = (0..p)
                .flat_map(|i| (0..p).filter(move |&j| j != i).map(move |j| (i, p + j)))
                .collect();
            Graph::from_edges(2 * p, &edges)
        }
        Family::Spider => {
            arity("spider", params, 2)?;
            let c = params[0] as usize;
            if c < 2 {
                return Err(bad("spider", "needs |C| >= 2"));
            }
            let kind = match params[1] {
                0 => SpiderKind::Thin,
                1 => SpiderKind::Thick,
                _ => return Err(bad("spider", "kind must be 0 (thin) or 1 (thick)")),
            };
            Ok(spider(c, kind))
        }
        Family::TreeT => {
            arity("tree_T", params, 0)?;
            Ok(tree_t())
        }
        Family::RandomChordal => {
            let density = match params.len() {
                2 => 60,
                3 if params[2] <= 100 => params[2],
                3 => return Err(bad("random_chordal", "density is a percentage")),
                n => return Err(bad("random_chordal", format!("expected 2 or 3 parameters, got {n}"))),
            };
            Ok(random_chordal(params[0] as usize, params[1], density as f64 / 100.0))
        }
        Family::RandomP4Sparse => {
            arity("random_p4_sparse", params, 2)?;
            Ok(random_p4_sparse(params[0] as usize, params[1]))
        }
        Family::RandomGnp => {
            arity("random_gnp", params, 2)?;
            let n = params[0] as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(params[1]);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        }
    }
}

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("valid by construction")
}

/// Spider with empty head: clique `0..c`, stable set `c..2c`.
pub(crate) fn spider(c: usize, kind: SpiderKind) -> Graph {
    let mut edges: Vec<_> = (0..c).flat_map(|u| (u + 1..c).map(move |v| (u, v))).collect();
    for i in 0..c {
        for j in 0..c {
            let linked = match kind {
                SpiderKind::Thin => i == j,
                SpiderKind::Thick => i != j,
            };
            if linked {
                edges.push((j, c + i));
            }
        }
    }
    Graph::from_edges(2 * c, &edges).expect("valid by construction")
}

/// The 11-vertex tree: path `v1 v2 x v3 v4` (vertices 0..5) with one pendant
/// at `v2` (5), one at `v3` (6), two at `v1` (7, 8) and two at `v4` (9, 10).
pub fn tree_t() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (1, 5),
        (3, 6),
        (0, 7),
        (0, 8),
        (4, 9),
        (4, 10),
    ];
    let labels = ["v1", "v2", "x", "v3", "v4", "a2", "a3", "a1", "b1", "a4", "b4"];
    Graph::from_edges(11, &edges)
        .expect("valid by construction")
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
}

/// Precoloring of the path copies of `T[K_2]`: `v1, v2, x, v3, v4` take
/// `(3,4), (1,2), (3,6), (4,7), (5,6)`, as product vertices `0..10`.
pub fn tree_t_precoloring() -> Vec<(usize, u32)> {
    let pairs = [(3, 4), (1, 2), (3, 6), (4, 7), (5, 6)];
    pairs
        .iter()
        .enumerate()
        .flat_map(|(v, &(a, b))| [(2 * v, a), (2 * v + 1, b)])
        .collect()
}

/// Random chordal graph: each new vertex is attached to a random clique of the
/// current graph, so the reverse insertion order is a perfect elimination order.
/// `density` is the chance of growing that clique by each candidate vertex.
fn random_chordal(n: usize, seed: u64, density: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        if rng.gen_bool(0.1) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut others: Vec<usize> = (0..v).filter(|&w| w != anchor).collect();
        others.shuffle(&mut rng);
        for w in others {
            if clique.iter().all(|&c| adj[c][w]) && rng.gen_bool(density) {
                clique.push(w);
            }
        }
        for &c in &clique {
            adj[c][v] = true;
            adj[v][c] = true;
            edges.push((c, v));
        }
    }
    Graph::from_edges(n, &edges).expect("valid by construction")
}

/// Random P4-sparse graph assembled bottom-up from union, join and spider
/// operations; every intermediate graph is P4-sparse.
fn random_p4_sparse(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    build_p4_sparse(&mut rng, 0, n, &mut edges);
    Graph::from_edges(n, &edges).expect("valid by construction")
}

fn build_p4_sparse(rng: &mut ChaCha8Rng, base: usize, n: usize, edges: &mut Vec<(usize, usize)>) {
    if n <= 1 {
        return;
    }
    let op = if n >= 4 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..2)
    };
    match op {
        0 | 1 => {
            let left = rng.gen_range(1..n);
            build_p4_sparse(rng, base, left, edges);
            build_p4_sparse(rng, base + left, n - left, edges);
            if op == 1 {
                for u in base..base + left {
                    for v in base + left..base + n {
                        edges.push((u, v));
                    }
                }
            }
        }
        _ => {
            let c = rng.gen_range(2..=n / 2);
            let kind = if rng.gen_bool(0.5) {
                SpiderKind::Thin
            } else {
                SpiderKind::Thick
            };
            let sp = spider(c, kind);
            edges.extend(sp.edges().map(|(u, v)| (base + u, base + v)));
            let head = base + 2 * c;
            let rest = n - 2 * c;
            build_p4_sparse(rng, head, rest, edges);
            for r in head..head + rest {
                for cv in base..base + c {
                    edges.push((cv, r));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_chordal, is_p4_sparse, Chordality};

    #[test]
    fn complete_four() {
        let g = generate(Family::Complete, &[4]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 6));
    }

    #[test]
    fn crown_four_is_three_regular() {
        let g = generate(Family::Crown, &[4]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 12));
        assert!((0..8).all(|v| g.degree(v) == 3));
        assert!(generate(Family::Crown, &[1]).is_err());
    }

    #[test]
    fn tree_t_degrees() {
        let g = tree_t();
        assert_eq!(g.n(), 11);
        assert_eq!(g.degree_sequence(), vec![3, 3, 3, 3, 2, 1, 1, 1, 1, 1, 1]);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4)] {
            assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn spiders() {
        let thin = generate(Family::Spider, &[3, 0]).unwrap();
        assert_eq!(thin.edge_count(), 3 + 3);
        let thick = generate(Family::Spider, &[3, 1]).unwrap();
        assert_eq!(thick.edge_count(), 3 + 6);
        assert!(generate(Family::Spider, &[3, 2]).is_err());
    }

    #[test]
    fn hypercube_three() {
        let q = generate(Family::Hypercube, &[3]).unwrap();
        assert_eq!((q.n(), q.edge_count()), (8, 12));
    }

    #[test]
    fn arity_and_family_errors() {
        assert!(generate(Family::Path, &[]).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("crown".parse::<Family>().unwrap(), Family::Crown);
    }

    #[test]
    fn random_families_are_members_and_deterministic() {
        for seed in 0..40 {
            let g = generate(Family::RandomChordal, &[12, seed]).unwrap();
            assert!(matches!(is_chordal(&g), Chordality::Chordal(_)));
            assert_eq!(g, generate(Family::RandomChordal, &[12, seed]).unwrap());
            let h = generate(Family::RandomP4Sparse, &[9, seed]).unwrap();
            assert!(is_p4_sparse(&h).is_sparse());
        }
    }
}
