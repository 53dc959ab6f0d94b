//! Lexicographic products `G[H]`.
//!
//! Pair `(u, v)` with `u` in the left factor and `v` in the right factor is
//! vertex `u * n_H + v` of the product. `(u, v) ~ (u', v')` iff `u ~ u'` in
//! `G`, or `u = u'` and `v ~ v'` in `H`.

use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub n_left: usize,
    pub n_right: usize,
}

impl ProductGraph {
    #[inline]
    pub fn index(&self, u: usize, v: usize) -> usize {
        u * self.n_right + v
    }

    #[inline]
    pub fn pair(&self, w: usize) -> (usize, usize) {
        (w / self.n_right, w % self.n_right)
    }

    /// The copy `x[H]`: `{(x, v) : v in H}` in ascending order.
    pub fn copy_of(&self, x: usize) -> Result<Vec<usize>, GraphError> {
        if x >= self.n_left {
            return Err(GraphError::VertexOutOfRange {
                vertex: x,
                n: self.n_left,
            });
        }
        Ok((0..self.n_right).map(|v| self.index(x, v)).collect())
    }

    /// `(u,v)` legend lines, one per product vertex.
    pub fn legend(&self) -> String {
        let mut s = String::new();
        for w in 0..self.graph.n() {
            let (u, v) = self.pair(w);
            s.push_str(&format!("{} {} {}\n", w + 1, u + 1, v + 1));
        }
        s
    }
}

pub fn lex_product(g: &Graph, h: &Graph) -> Result<ProductGraph, GraphError> {
    if g.n() == 0 || h.n() == 0 {
        return Err(GraphError::EmptyFactor);
    }
    let (ng, nh) = (g.n(), h.n());
    let mut edges = Vec::with_capacity(nh * nh * g.edge_count() + ng * h.edge_count());
    for u in 0..ng {
        for (a, b) in h.edges() {
            edges.push((u * nh + a, u * nh + b));
        }
    }
    for (u, u2) in g.edges() {
        for a in 0..nh {
            for b in 0..nh {
                edges.push((u * nh + a, u2 * nh + b));
            }
        }
    }
    let graph = Graph::from_edges(ng * nh, &edges)?;
    Ok(ProductGraph {
        graph,
        n_left: ng,
        n_right: nh,
    })
}

/// `G[K_l]`, the product that every descent in this crate works on.
pub fn blow_up(g: &Graph, l: usize) -> Result<ProductGraph, GraphError> {
    let kl = crate::graph::generate(crate::graph::Family::Complete, &[l as u64])?;
    lex_product(g, &kl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, generate, Family};
    use proptest::prelude::*;

    fn k(n: u64) -> Graph {
        generate(Family::Complete, &[n]).unwrap()
    }
    fn p(n: u64) -> Graph {
        generate(Family::Path, &[n]).unwrap()
    }

    #[test]
    fn k2_of_k2_is_k4() {
        let pg = lex_product(&k(2), &k(2)).unwrap();
        assert_eq!(pg.graph, k(4));
        assert_eq!(pg.copy_of(0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn right_identity() {
        let c4 = generate(Family::Cycle, &[4]).unwrap();
        assert_eq!(lex_product(&c4, &k(1)).unwrap().graph, c4);
    }

    #[test]
    fn p3_of_k2_counts() {
        let pg = lex_product(&p(3), &k(2)).unwrap();
        assert_eq!((pg.graph.n(), pg.graph.edge_count()), (6, 11));
        assert_eq!(pg.copy_of(2).unwrap(), vec![4, 5]);
        assert!(pg.copy_of(3).is_err());
    }

    #[test]
    fn copy_induces_right_factor() {
        let pg = lex_product(&p(3), &p(3)).unwrap();
        let copy = pg.copy_of(1).unwrap();
        assert_eq!(canonical_form(&pg.graph.induced(&copy)), canonical_form(&p(3)));
    }

    #[test]
    fn empty_factor_rejected() {
        assert_eq!(lex_product(&Graph::empty(0), &k(2)), Err(GraphError::EmptyFactor));
    }

    proptest! {
        #[test]
        fn product_structure(ng in 1u64..6, nh in 1u64..5, sg in 0u64..1000, sh in 0u64..1000) {
            let g = generate(Family::RandomGnp, &[ng, sg]).unwrap();
            let h = generate(Family::RandomGnp, &[nh, sh]).unwrap();
            let pg = lex_product(&g, &h).unwrap();
            let (ng, nh) = (ng as usize, nh as usize);
            prop_assert_eq!(pg.graph.n(), ng * nh);
            prop_assert_eq!(pg.graph.edge_count(), nh * nh * g.edge_count() + ng * h.edge_count());
            for w in 0..pg.graph.n() {
                let (u, v) = pg.pair(w);
                prop_assert_eq!(pg.graph.degree(w), nh * g.degree(u) + h.degree(v));
            }
            // copies are modules
            for x in 0..ng {
                let copy = pg.copy_of(x).unwrap();
                for w in 0..pg.graph.n() {
                    if copy.contains(&w) { continue; }
                    let hits = copy.iter().filter(|&&c| pg.graph.has_edge(w, c)).count();
                    prop_assert!(hits == 0 || hits == nh);
                }
            }
        }
    }
}
