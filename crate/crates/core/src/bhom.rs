//! b-homomorphisms: verification, composition, product lifts and the bridge
//! to b-colorings of complete targets.

use serde::{Deserialize, Serialize};

use crate::coloring::{is_proper, Coloring};
use crate::error::{ColoringError, HomError};
use crate::graph::{generate, Family, Graph};
use crate::lexprod::lex_product;

/// Vertex map from the graph fingerprinted `source_id` to the one
/// fingerprinted `target_id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BHomMap {
    pub source_id: u64,
    pub target_id: u64,
    pub map: Vec<usize>,
}

impl BHomMap {
    pub fn new(source: &Graph, target: &Graph, map: Vec<usize>) -> Result<Self, HomError> {
        let f = BHomMap {
            source_id: source.fingerprint(),
            target_id: target.fingerprint(),
            map,
        };
        f.check_shape(source, target)?;
        Ok(f)
    }

    pub fn identity(g: &Graph) -> Self {
        BHomMap {
            source_id: g.fingerprint(),
            target_id: g.fingerprint(),
            map: (0..g.n()).collect(),
        }
    }

    fn check_shape(&self, source: &Graph, target: &Graph) -> Result<(), HomError> {
        for (expected, g) in [(self.source_id, source), (self.target_id, target)] {
            let got = g.fingerprint();
            if got != expected {
                return Err(HomError::GraphMismatch { expected, got });
            }
        }
        if self.map.len() != source.n() {
            return Err(HomError::LengthMismatch {
                expected: source.n(),
                got: self.map.len(),
            });
        }
        for (vertex, &image) in self.map.iter().enumerate() {
            if image >= target.n() {
                return Err(HomError::ImageOutOfRange {
                    vertex,
                    image,
                    n: target.n(),
                });
            }
        }
        Ok(())
    }
}

/// First failure found by [`verify_b_homomorphism`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomViolation {
    /// Source edge mapped to a non-edge (or collapsed to one vertex).
    Edge(usize, usize),
    /// Target vertex with no preimage `u` such that `f(N(u)) = N(x)`.
    Uncovered(usize),
}

/// `Ok(None)` when `f` is a b-homomorphism, otherwise the first violation:
/// edges in source order, then target vertices ascending.
pub fn verify_b_homomorphism(source: &Graph, target: &Graph, f: &BHomMap) -> Result<Option<HomViolation>, HomError> {
    f.check_shape(source, target)?;
    let map = &f.map;
    if let Some((u, v)) = source.edges().find(|&(u, v)| !target.has_edge(map[u], map[v])) {
        return Ok(Some(HomViolation::Edge(u, v)));
    }
    let mut covered = vec![false; target.n()];
    for u in 0..source.n() {
        let x = map[u];
        if covered[x] {
            continue;
        }
        // Edge preservation gives f(N(u)) within N(x); equality is a count.
        let mut image: Vec<usize> = source.neighbors(u).iter().map(|&w| map[w]).collect();
        image.sort_unstable();
        image.dedup();
        covered[x] = image.len() == target.degree(x);
    }
    Ok(covered.iter().position(|&c| !c).map(HomViolation::Uncovered))
}

fn require_bhom(source: &Graph, target: &Graph, f: &BHomMap) -> Result<(), HomError> {
    match verify_b_homomorphism(source, target, f)? {
        None => Ok(()),
        Some(v) => Err(HomError::NotBHom(format!("{v:?}"))),
    }
}

/// `f2 . f1`.
pub fn compose(f1: &BHomMap, f2: &BHomMap) -> Result<BHomMap, HomError> {
    if f1.target_id != f2.source_id {
        return Err(HomError::MiddleMismatch {
            left: f1.target_id,
            right: f2.source_id,
        });
    }
    if let Some((vertex, &image)) = f1.map.iter().enumerate().find(|(_, &x)| x >= f2.map.len()) {
        return Err(HomError::ImageOutOfRange {
            vertex,
            image,
            n: f2.map.len(),
        });
    }
    Ok(BHomMap {
        source_id: f1.source_id,
        target_id: f2.target_id,
        map: f1.map.iter().map(|&x| f2.map[x]).collect(),
    })
}

/// `G[F] -> G[H]` by `(u, v) -> (u, f(v))`.
pub fn lift_left(g: &Graph, source: &Graph, target: &Graph, f: &BHomMap) -> Result<BHomMap, HomError> {
    require_bhom(source, target, f)?;
    let from = lex_product(g, source).map_err(|_| empty_factor())?;
    let to = lex_product(g, target).map_err(|_| empty_factor())?;
    let map = (0..from.graph.n())
        .map(|w| {
            let (u, v) = from.pair(w);
            to.index(u, f.map[v])
        })
        .collect();
    BHomMap::new(&from.graph, &to.graph, map)
}

/// `F[G] -> H[G]` by `(u, v) -> (f(u), v)`.
pub fn lift_right(source: &Graph, target: &Graph, f: &BHomMap, g: &Graph) -> Result<BHomMap, HomError> {
    require_bhom(source, target, f)?;
    let from = lex_product(source, g).map_err(|_| empty_factor())?;
    let to = lex_product(target, g).map_err(|_| empty_factor())?;
    let map = (0..from.graph.n())
        .map(|w| {
            let (u, v) = from.pair(w);
            to.index(f.map[u], v)
        })
        .collect();
    BHomMap::new(&from.graph, &to.graph, map)
}

fn empty_factor() -> HomError {
    HomError::NotBHom("lexicographic product needs nonempty factors".into())
}

pub fn complete(m: usize) -> Graph {
    generate(Family::Complete, &[m as u64]).expect("complete graph")
}

/// Color `i` becomes vertex `i - 1` of `K_k`. The coloring only has to be
/// proper; the map verifies exactly when it is a b-coloring.
pub fn coloring_to_bhom(g: &Graph, c: &Coloring) -> Result<BHomMap, HomError> {
    if let Some((u, v)) = is_proper(g, c)? {
        return Err(ColoringError::Improper(u, v).into());
    }
    let km = complete(c.k() as usize);
    BHomMap::new(g, &km, c.colors().iter().map(|&x| x as usize - 1).collect())
}

/// Inverse of [`coloring_to_bhom`]; the target must be complete.
pub fn bhom_to_coloring(source: &Graph, target: &Graph, f: &BHomMap) -> Result<Coloring, HomError> {
    let all: Vec<usize> = (0..target.n()).collect();
    if !target.is_clique(&all) {
        return Err(HomError::TargetNotComplete);
    }
    f.check_shape(source, target)?;
    Ok(Coloring::new(
        f.map.iter().map(|&x| x as u32 + 1).collect(),
        target.n() as u32,
    )?)
}
