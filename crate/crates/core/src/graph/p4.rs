use super::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P4Sparseness {
    Sparse,
    /// Five vertices inducing at least two P4s.
    Witness([usize; 5]),
}

impl P4Sparseness {
    pub fn is_sparse(&self) -> bool {
        matches!(self, P4Sparseness::Sparse)
    }
}

/// A 4-set induces P4 iff it spans exactly three edges with degrees 1,1,2,2.
fn induces_p4(g: &Graph, q: [usize; 4]) -> bool {
    let mut deg = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    if edges != 3 {
        return false;
    }
    deg.sort_unstable();
    deg == [1, 1, 2, 2]
}

/// Number of distinct 4-subsets of `vs` that induce a P4.
pub fn induced_p4_count(g: &Graph, vs: &[usize]) -> usize {
    let k = vs.len();
    let mut count = 0;
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    if induces_p4(g, [vs[a], vs[b], vs[c], vs[d]]) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Brute-force recognition: every 5-set induces at most one P4.
pub fn is_p4_sparse(g: &Graph) -> P4Sparseness {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let five = [a, b, c, d, e];
                        if induced_p4_count(g, &five) >= 2 {
                            return P4Sparseness::Witness(five);
                        }
                    }
                }
            }
        }
    }
    P4Sparseness::Sparse
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn small_members() {
        assert!(is_p4_sparse(&generate(Family::Path, &[4]).unwrap()).is_sparse());
        assert!(is_p4_sparse(&generate(Family::Cycle, &[4]).unwrap()).is_sparse());
    }

    #[test]
    fn p5_witness_is_everything() {
        let p5 = generate(Family::Path, &[5]).unwrap();
        assert_eq!(induced_p4_count(&p5, &[0, 1, 2, 3, 4]), 2);
        assert_eq!(is_p4_sparse(&p5), P4Sparseness::Witness([0, 1, 2, 3, 4]));
    }

    #[test]
    fn c5_is_not_sparse() {
        let c5 = generate(Family::Cycle, &[5]).unwrap();
        assert!(!is_p4_sparse(&c5).is_sparse());
    }
}
