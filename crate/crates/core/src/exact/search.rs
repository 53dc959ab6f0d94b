//! Backtracking engine shared by the chromatic and b-coloring solvers.
//!
//! Branching takes the uncolored vertex of maximum saturation (ties by
//! smallest index) and tries colors ascending. A color that is neither pinned
//! by a precoloring nor used yet is interchangeable with every other such
//! color, so only the smallest of them is tried. In b-mode every node checks,
//! for each color, that some vertex can still become its b-vertex.

use crate::graph::Graph;

pub(crate) const MAX_COLORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum RawOutcome {
    Found(Vec<u32>),
    Infeasible,
    Unknown,
}

pub(crate) struct Engine<'a> {
    g: &'a Graph,
    k: usize,
    all: u64,
    require_b: bool,
    colors: Vec<u32>,
    nbr_count: Vec<Vec<u32>>,
    nbr_mask: Vec<u64>,
    used: Vec<u32>,
    pinned: u64,
    uncolored: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

#[inline]
fn bit(c: u32) -> u64 {
    1u64 << (c - 1)
}

impl<'a> Engine<'a> {
    /// `pre` must already be validated (in range, proper).
    pub(crate) fn new(g: &'a Graph, k: usize, require_b: bool, pre: &[Option<u32>], budget: u64) -> Self {
        debug_assert!((1..=MAX_COLORS).contains(&k));
        let n = g.n();
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut e = Engine {
            g,
            k,
            all,
            require_b,
            colors: vec![0; n],
            nbr_count: vec![vec![0; k + 1]; n],
            nbr_mask: vec![0; n],
            used: vec![0; k + 1],
            pinned: 0,
            uncolored: n,
            nodes: 0,
            budget,
            exhausted: false,
        };
        for (v, c) in pre.iter().enumerate() {
            if let Some(c) = *c {
                e.pinned |= bit(c);
                e.assign(v, c);
            }
        }
        e
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        self.used[c as usize] += 1;
        self.uncolored -= 1;
        for &w in self.g.neighbors(v) {
            let cnt = &mut self.nbr_count[w][c as usize];
            *cnt += 1;
            if *cnt == 1 {
                self.nbr_mask[w] |= bit(c);
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        self.used[c as usize] -= 1;
        self.uncolored += 1;
        for &w in self.g.neighbors(v) {
            let cnt = &mut self.nbr_count[w][c as usize];
            *cnt -= 1;
            if *cnt == 0 {
                self.nbr_mask[w] &= !bit(c);
            }
        }
    }

    fn unused_colors(&self) -> usize {
        (1..=self.k).filter(|&c| self.used[c] == 0).count()
    }

    /// Colors `v` could still be a b-vertex of.
    fn b_candidates(&self, v: usize) -> u64 {
        let seen = self.nbr_mask[v];
        let mut cover = 0u64;
        let mut open = 0u32;
        for &w in self.g.neighbors(v) {
            if self.colors[w] == 0 {
                cover |= self.all & !self.nbr_mask[w];
                open += 1;
            }
        }
        let own = if self.colors[v] != 0 {
            bit(self.colors[v])
        } else {
            self.all & !seen
        };
        let mut out = 0u64;
        let mut cands = own;
        while cands != 0 {
            let b = cands & cands.wrapping_neg();
            cands &= cands - 1;
            let missing = self.all & !b & !seen;
            if missing & !cover == 0 && missing.count_ones() <= open {
                out |= b;
            }
        }
        out
    }

    /// Whether the colors can still get pairwise distinct b-vertices
    /// (relaxation: a matching from colors into candidate vertices).
    fn b_feasible(&self) -> bool {
        let cands: Vec<u64> = (0..self.g.n()).map(|v| self.b_candidates(v)).collect();
        if cands.iter().fold(0, |acc, &m| acc | m) != self.all {
            return false;
        }
        let mut owner = vec![usize::MAX; self.g.n()];
        let mut visited = vec![false; self.g.n()];
        (1..=self.k as u32).all(|c| {
            visited.iter_mut().for_each(|x| *x = false);
            augment(bit(c), &cands, &mut owner, &mut visited)
        })
    }

    fn pick_vertex(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for v in 0..self.g.n() {
            if self.colors[v] != 0 {
                continue;
            }
            let sat = self.nbr_mask[v].count_ones();
            if best.is_none_or(|(s, _)| sat > s) {
                best = Some((sat, v));
            }
        }
        best.map(|(_, v)| v)
    }

    pub(crate) fn run(&mut self) -> RawOutcome {
        if self.dfs() {
            RawOutcome::Found(self.colors.clone())
        } else if self.exhausted {
            RawOutcome::Unknown
        } else {
            RawOutcome::Infeasible
        }
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        if self.require_b && (self.unused_colors() > self.uncolored || !self.b_feasible()) {
            return false;
        }
        let Some(v) = self.pick_vertex() else {
            return true;
        };
        let first_fresh = (1..=self.k as u32).find(|&c| self.used[c as usize] == 0 && self.pinned & bit(c) == 0);
        let mut options = self.all & !self.nbr_mask[v];
        while options != 0 {
            let c = options.trailing_zeros() + 1;
            options &= options - 1;
            let fresh = self.used[c as usize] == 0 && self.pinned & bit(c) == 0;
            if fresh && Some(c) != first_fresh {
                continue;
            }
            self.assign(v, c);
            if self.dfs() {
                return true;
            }
            self.unassign(v);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Kuhn augmenting path for the color `c` (as a bit) over `cands`.
fn augment(c: u64, cands: &[u64], owner: &mut [usize], visited: &mut [bool]) -> bool {
    for v in 0..cands.len() {
        if cands[v] & c == 0 || visited[v] {
            continue;
        }
        visited[v] = true;
        if owner[v] == usize::MAX || augment(1u64 << owner[v], cands, owner, visited) {
            owner[v] = c.trailing_zeros() as usize;
            return true;
        }
    }
    false
}
