//! Exhaustive enumeration of small graphs, for desk-scale sweeps.

use std::collections::BTreeSet;

use super::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every labeled graph on `n` vertices (`2^(n choose 2)` of them), `n <= 7`.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "labeled enumeration limited to n <= 7");
    let ps = pairs(n);
    (0u64..1 << ps.len())
        .map(|mask| {
            let edges: Vec<_> = ps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("valid pairs")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn edge_mask(g: &Graph, perm: &[usize], index: &[Vec<usize>]) -> u64 {
    let mut m = 0u64;
    for (u, v) in g.edges() {
        m |= 1 << index[perm[u]][perm[v]];
    }
    m
}

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    for (i, (u, v)) in pairs(n).into_iter().enumerate() {
        idx[u][v] = i;
        idx[v][u] = i;
    }
    idx
}

/// Minimum edge mask over all relabelings; equal iff isomorphic. `n <= 8`.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8, "canonical form limited to n <= 8");
    let idx = pair_index(n);
    permutations(n).iter().map(|p| edge_mask(g, p, &idx)).min().unwrap_or(0)
}

/// One representative per isomorphism class on `n` vertices, `n <= 6`.
/// Representatives are the labeled graphs realising the canonical mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "isomorphism-class enumeration limited to n <= 6");
    let idx = pair_index(n);
    let perms = permutations(n);
    let ps = pairs(n);
    let mut classes = BTreeSet::new();
    for g in all_labeled_graphs(n) {
        let canon = perms.iter().map(|p| edge_mask(&g, p, &idx)).min().unwrap_or(0);
        classes.insert(canon);
    }
    classes
        .into_iter()
        .map(|mask| {
            let edges: Vec<_> = ps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("valid pairs")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // OEIS A000088.
        let counts: Vec<usize> = (0..=5).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
        assert_eq!(all_labeled_graphs(4).len(), 64);
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&star));
    }
}
