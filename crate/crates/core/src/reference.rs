//! Naive reference enumerators used as oracles.
//!
//! These walk every set partition of the vertex set and share no code with
//! the search engine in [`crate::exact`].

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Calls `f` with each restricted-growth string of length `n` (every
/// partition of `0..n` exactly once, blocks numbered by first occurrence).
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u32], u32)) {
    if n == 0 {
        f(&[], 0);
        return;
    }
    let mut a = vec![0u32; n];
    let mut max = vec![0u32; n];
    loop {
        let blocks = max[n - 1] + 1;
        f(&a, blocks);
        // advance
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            let bound = max[i - 1] + 1;
            if a[i] < bound {
                a[i] += 1;
                max[i] = max[i - 1].max(a[i]);
                for j in i + 1..n {
                    a[j] = 0;
                    max[j] = max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Whether the partition given by `a` (colors `0..k`) is a proper b-coloring.
fn is_b_partition(g: &Graph, a: &[u32], k: u32) -> bool {
    for u in 0..g.n() {
        for &w in g.neighbors(u) {
            if a[u] == a[w] {
                return false;
            }
        }
    }
    (0..k).all(|c| {
        (0..g.n()).any(|v| {
            a[v] == c && {
                let seen: BTreeSet<u32> = g.neighbors(v).iter().map(|&w| a[w]).collect();
                seen.len() as u32 == k - 1
            }
        })
    })
}

/// `S_b(G)` by enumerating every coloring up to renaming of colors.
pub fn naive_b_spectrum(g: &Graph) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for_each_partition(g.n(), |a, k| {
        if is_b_partition(g, a, k) {
            out.insert(k as usize);
        }
    });
    out
}

/// `chi(G)` by enumerating every partition.
pub fn naive_chromatic_number(g: &Graph) -> usize {
    let mut best = g.n();
    for_each_partition(g.n(), |a, k| {
        if (k as usize) < best && g.edges().all(|(u, v)| a[u] != a[v]) {
            best = k as usize;
        }
    });
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)] {
            let mut count = 0;
            for_each_partition(n, |_, _| count += 1);
            assert_eq!(count, bell, "n = {n}");
        }
    }

    #[test]
    fn known_spectra() {
        let crown = generate(Family::Crown, &[4]).unwrap();
        assert_eq!(naive_b_spectrum(&crown), [2, 4].into_iter().collect());
        let p5 = generate(Family::Path, &[5]).unwrap();
        assert_eq!(naive_b_spectrum(&p5), [2, 3].into_iter().collect());
        assert_eq!(naive_chromatic_number(&generate(Family::Cycle, &[5]).unwrap()), 3);
    }
}
