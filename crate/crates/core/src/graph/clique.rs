//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use super::{BitRow, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueOutcome {
    Exact {
        size: usize,
        witness: Vec<usize>,
    },
    /// Node budget ran out; `best` is a clique but maybe not maximum.
    Unknown {
        best: Vec<usize>,
    },
}

impl CliqueOutcome {
    pub fn size(&self) -> Option<usize> {
        match self {
            CliqueOutcome::Exact { size, .. } => Some(*size),
            CliqueOutcome::Unknown { .. } => None,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn expand(&mut self, cand: BitRow) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        // Greedy color classes give an upper bound per candidate.
        let order: Vec<usize> = cand.iter().collect();
        let mut bound = Vec::with_capacity(order.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            let slot = classes
                .iter()
                .position(|cls| cls.iter().all(|&u| !self.g.has_edge(u, v)));
            match slot {
                Some(i) => classes[i].push(v),
                None => classes.push(vec![v]),
            }
        }
        for (ci, cls) in classes.iter().enumerate() {
            for &v in cls {
                bound.push((v, ci + 1));
            }
        }
        let mut cand = cand;
        while let Some(&(v, color)) = bound.last() {
            if self.current.len() + color <= self.best.len() || self.exhausted {
                return;
            }
            bound.pop();
            self.current.push(v);
            let mut next = cand.clone();
            next.intersect_with(self.g.row(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.remove(v);
        }
    }
}

/// Maximum clique with a node budget; never reports a wrong size.
pub fn clique_number(g: &Graph, budget: u64) -> CliqueOutcome {
    if g.n() == 0 {
        return CliqueOutcome::Exact {
            size: 0,
            witness: Vec::new(),
        };
    }
    let mut all = BitRow::new(g.n());
    for v in 0..g.n() {
        all.insert(v);
    }
    let mut s = Search {
        g,
        best: vec![0],
        current: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    s.expand(all);
    let mut best = s.best;
    best.sort_unstable();
    if s.exhausted {
        CliqueOutcome::Unknown { best }
    } else {
        CliqueOutcome::Exact {
            size: best.len(),
            witness: best,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, tree_t, Family};

    fn brute_omega(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn named_cases() {
        let crown = generate(Family::Crown, &[4]).unwrap();
        assert_eq!(clique_number(&crown, u64::MAX).size(), Some(2));
        assert_eq!(clique_number(&tree_t(), u64::MAX).size(), Some(2));
        let k5 = generate(Family::Complete, &[5]).unwrap();
        assert_eq!(clique_number(&k5, u64::MAX).size(), Some(5));
        assert_eq!(clique_number(&Graph::empty(3), u64::MAX).size(), Some(1));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..60 {
            let g = generate(Family::RandomGnp, &[11, seed]).unwrap();
            match clique_number(&g, u64::MAX) {
                CliqueOutcome::Exact { size, witness } => {
                    assert_eq!(size, brute_omega(&g));
                    assert!(g.is_clique(&witness));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let g = generate(Family::RandomGnp, &[30, 1]).unwrap();
        match clique_number(&g, 2) {
            CliqueOutcome::Unknown { best } => assert!(g.is_clique(&best)),
            other => panic!("expected unknown, got {other:?}"),
        }
    }
}
