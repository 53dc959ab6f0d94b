use std::collections::VecDeque;

use super::Graph;

/// Vertex order in which every vertex is simplicial in the suffix it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectEliminationOrder {
    pub order: Vec<usize>,
}

impl PerfectEliminationOrder {
    /// Suffix-neighborhood clique test, independent of how the order was made.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.order.iter().enumerate().all(|(i, &v)| {
            let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > i).collect();
            g.is_clique(&later)
        })
    }

    /// Position of each vertex in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(PerfectEliminationOrder),
    /// Induced cycle of length at least four, in cyclic order.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn peo(&self) -> Option<&PerfectEliminationOrder> {
        match self {
            Chordality::Chordal(p) => Some(p),
            Chordality::NotChordal(_) => None,
        }
    }
}

/// Maximum cardinality search; ties go to the smallest index. Returns the
/// visit order (its reverse is a PEO when the graph is chordal).
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

pub fn is_chordal(g: &Graph) -> Chordality {
    let mut order = mcs_order(g);
    order.reverse();
    let peo = PerfectEliminationOrder { order };
    if peo.is_valid_for(g) {
        return Chordality::Chordal(peo);
    }
    Chordality::NotChordal(chordless_cycle(g).expect("non-chordal graph has a chordless cycle"))
}

/// Finds `v`, two non-adjacent neighbors `a`, `b`, and a shortest `a`–`b` path
/// avoiding the rest of `N[v]`; together they form an induced cycle.
fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for v in 0..n {
        let nv = g.neighbors(v);
        for (i, &a) in nv.iter().enumerate() {
            for &b in &nv[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let blocked = |w: usize| w == v || (w != b && g.has_edge(v, w));
                let mut prev = vec![usize::MAX; n];
                prev[a] = a;
                let mut q = VecDeque::from([a]);
                while let Some(u) = q.pop_front() {
                    if u == b {
                        break;
                    }
                    for &w in g.neighbors(u) {
                        if prev[w] == usize::MAX && !blocked(w) {
                            prev[w] = u;
                            q.push_back(w);
                        }
                    }
                }
                if prev[b] != usize::MAX {
                    let mut path = vec![b];
                    let mut cur = b;
                    while cur != a {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, tree_t, Family};

    fn assert_induced_cycle(g: &Graph, cyc: &[usize]) {
        let k = cyc.len();
        assert!(k >= 4);
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                assert_eq!(g.has_edge(cyc[i], cyc[j]), consecutive, "{cyc:?}");
            }
        }
    }

    #[test]
    fn complete_is_chordal() {
        let g = generate(Family::Complete, &[5]).unwrap();
        assert!(is_chordal(&g).peo().unwrap().is_valid_for(&g));
    }

    #[test]
    fn c4_witness() {
        let g = generate(Family::Cycle, &[4]).unwrap();
        match is_chordal(&g) {
            Chordality::NotChordal(c) => {
                assert_eq!(c.len(), 4);
                assert_induced_cycle(&g, &c);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn longer_cycles_and_hypercube() {
        for g in [
            generate(Family::Cycle, &[7]).unwrap(),
            generate(Family::Hypercube, &[3]).unwrap(),
            generate(Family::Crown, &[4]).unwrap(),
        ] {
            match is_chordal(&g) {
                Chordality::NotChordal(c) => assert_induced_cycle(&g, &c),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn tree_is_chordal() {
        let t = tree_t();
        assert!(is_chordal(&t).peo().is_some());
    }

    #[test]
    fn invalid_orders_rejected() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let bad = PerfectEliminationOrder { order: vec![1, 0, 2] };
        assert!(!bad.is_valid_for(&p3));
        let short = PerfectEliminationOrder { order: vec![0, 1] };
        assert!(!short.is_valid_for(&p3));
    }
}
