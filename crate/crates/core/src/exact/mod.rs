//! Exact desk-scale solvers: chromatic number, b-coloring existence (with an
//! optional precoloring), b-chromatic number and b-spectrum.
//!
//! Every search runs under a node budget. Exhausting it yields
//! [`Solve::Unknown`], never a guessed answer.

mod relations;
mod search;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use relations::{check_relations, Clause, RelationsReport, SpectrumCache, Verdict};

use crate::coloring::{is_b_coloring, is_proper, Coloring};
use crate::error::ExactError;
use crate::graph::{clique_number, m_degree_bound, CliqueOutcome, Graph};
use search::{Engine, RawOutcome, MAX_COLORS};

/// Node limit for a single `(graph, k)` search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { nodes: u64::MAX };

    pub fn nodes(nodes: u64) -> Self {
        Budget { nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 20_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve<T> {
    Found(T),
    /// Refuted by exhaustive search.
    None,
    /// Budget exhausted before a decision.
    Unknown,
}

impl<T> Solve<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Solve::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Solve::Unknown)
    }
}

/// An optimum with its witness, or an undecided search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Exact {
        value: usize,
        witness: Coloring,
    },
    Unknown {
        /// Best value proven achievable, with witness.
        achieved: Option<(usize, Coloring)>,
        /// Values the search could not decide.
        undecided: Vec<usize>,
    },
}

impl Optimum {
    pub fn value(&self) -> Option<usize> {
        match self {
            Optimum::Exact { value, .. } => Some(*value),
            Optimum::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Coloring> {
        match self {
            Optimum::Exact { witness, .. } => Some(witness),
            Optimum::Unknown { .. } => None,
        }
    }
}

/// Sparse precoloring: vertex → color.
pub type Precoloring = BTreeMap<usize, u32>;

fn check_precoloring(g: &Graph, k: usize, pre: &Precoloring) -> Result<Vec<Option<u32>>, ExactError> {
    let mut slots = vec![None; g.n()];
    for (&v, &c) in pre {
        if v >= g.n() {
            return Err(ExactError::InconsistentPrecoloring(format!("vertex {v} out of range")));
        }
        if c == 0 || c as usize > k {
            return Err(ExactError::InconsistentPrecoloring(format!(
                "vertex {v} has color {c} outside 1..={k}"
            )));
        }
        slots[v] = Some(c);
    }
    for (u, v) in g.edges() {
        if slots[u].is_some() && slots[u] == slots[v] {
            return Err(ExactError::InconsistentPrecoloring(format!(
                "adjacent vertices {u} and {v} share color {}",
                slots[u].unwrap()
            )));
        }
    }
    Ok(slots)
}

/// Searches for a b-coloring with exactly `k` colors extending `pre`.
pub fn exists_b_coloring(
    g: &Graph,
    k: usize,
    pre: Option<&Precoloring>,
    budget: Budget,
) -> Result<Solve<Coloring>, ExactError> {
    if k == 0 {
        return Err(ExactError::ZeroColors);
    }
    if k > MAX_COLORS {
        return Err(ExactError::PaletteTooLarge(k));
    }
    let empty = Precoloring::new();
    let slots = check_precoloring(g, k, pre.unwrap_or(&empty))?;
    // At least k vertices of degree >= k - 1 are needed.
    if m_degree_bound(g) < k {
        return Ok(Solve::None);
    }
    let mut engine = Engine::new(g, k, true, &slots, budget.nodes);
    Ok(match engine.run() {
        RawOutcome::Found(colors) => {
            let c = Coloring::new(colors, k as u32).expect("engine colors in range");
            assert_eq!(is_b_coloring(g, &c), Ok(None), "engine produced a non-b-coloring");
            Solve::Found(c)
        }
        RawOutcome::Infeasible => Solve::None,
        RawOutcome::Unknown => Solve::Unknown,
    })
}

/// Proper coloring with at most `k` colors.
pub fn k_colorable(g: &Graph, k: usize, budget: Budget) -> Solve<Coloring> {
    if g.n() == 0 {
        return Solve::Found(Coloring::new(Vec::new(), k as u32).expect("empty"));
    }
    if k == 0 {
        return Solve::None;
    }
    if k > MAX_COLORS {
        // Greedy suffices whenever k exceeds the maximum degree.
        if k > g.max_degree() {
            return Solve::Found(greedy(g, k as u32));
        }
        return Solve::Unknown;
    }
    let slots = vec![None; g.n()];
    let mut engine = Engine::new(g, k, false, &slots, budget.nodes);
    match engine.run() {
        RawOutcome::Found(colors) => Solve::Found(Coloring::new(colors, k as u32).expect("in range")),
        RawOutcome::Infeasible => Solve::None,
        RawOutcome::Unknown => Solve::Unknown,
    }
}

fn greedy(g: &Graph, k: u32) -> Coloring {
    let mut colors = vec![0u32; g.n()];
    for v in 0..g.n() {
        let taken: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
        colors[v] = (1..).find(|c| !taken.contains(c)).expect("unbounded");
    }
    Coloring::new(colors, k).expect("greedy within max degree + 1")
}

/// Exact chromatic number: lower bound from a maximum clique, then `k`
/// upward until a proper coloring exists.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Optimum {
    if g.n() == 0 {
        return Optimum::Exact {
            value: 0,
            witness: Coloring::new(Vec::new(), 0).expect("empty"),
        };
    }
    let lb = match clique_number(g, budget.nodes) {
        CliqueOutcome::Exact { size, .. } => size,
        CliqueOutcome::Unknown { best } => best.len(),
    };
    for k in lb.max(1)..=g.n() {
        match k_colorable(g, k, budget) {
            Solve::Found(c) => {
                let c = c.canonical();
                debug_assert_eq!(is_proper(g, &c), Ok(None));
                debug_assert_eq!(c.k() as usize, k);
                return Optimum::Exact { value: k, witness: c };
            }
            Solve::None => continue,
            Solve::Unknown => {
                return Optimum::Unknown {
                    achieved: None,
                    undecided: vec![k],
                }
            }
        }
    }
    unreachable!("n colors always suffice")
}

/// Searches `k` from `m(G)` downward; the first success is `chi_b`.
pub fn b_chromatic_number(g: &Graph, budget: Budget) -> Result<Optimum, ExactError> {
    if g.n() == 0 {
        return Ok(Optimum::Exact {
            value: 0,
            witness: Coloring::new(Vec::new(), 0).expect("empty"),
        });
    }
    let mut undecided = Vec::new();
    for k in (1..=m_degree_bound(g)).rev() {
        match exists_b_coloring(g, k, None, budget)? {
            Solve::Found(c) => {
                return Ok(if undecided.is_empty() {
                    Optimum::Exact { value: k, witness: c }
                } else {
                    Optimum::Unknown {
                        achieved: Some((k, c)),
                        undecided,
                    }
                })
            }
            Solve::None => {}
            Solve::Unknown => undecided.push(k),
        }
    }
    // Only reachable when every k was undecided.
    Ok(Optimum::Unknown {
        achieved: None,
        undecided,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub graph_id: String,
    pub n: usize,
    pub m_bound: usize,
    pub chi: Option<usize>,
    pub chi_b: Option<usize>,
    /// Values of `k` with a b-coloring, ascending.
    pub spectrum: Vec<usize>,
    /// Values the search could not decide.
    pub unknown: Vec<usize>,
    /// `None` when undecided values remain.
    pub continuous: Option<bool>,
    /// `k` in `[chi, chi_b]` refuted.
    pub gaps: Vec<usize>,
    pub witnesses: BTreeMap<usize, Vec<u32>>,
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub budget: Budget,
    /// Worker threads for independent per-`k` searches; 1 runs inline.
    pub jobs: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

/// Exact b-spectrum over `k` in `[chi, m(G)]`; no `k < chi` admits a proper
/// coloring at all.
pub fn b_spectrum(g: &Graph, opts: SpectrumOptions) -> Result<SpectrumReport, ExactError> {
    let m = m_degree_bound(g);
    let graph_id = format!("{:016x}", g.fingerprint());
    let (lo, chi) = match chromatic_number(g, opts.budget) {
        Optimum::Exact { value, .. } => (value.max(1), Some(value)),
        Optimum::Unknown { .. } => (1, None),
    };
    if g.n() == 0 {
        return Ok(SpectrumReport {
            graph_id,
            n: 0,
            m_bound: 0,
            chi: Some(0),
            chi_b: Some(0),
            spectrum: Vec::new(),
            unknown: Vec::new(),
            continuous: Some(true),
            gaps: Vec::new(),
            witnesses: BTreeMap::new(),
        });
    }
    let ks: Vec<usize> = (lo..=m).collect();
    let solve = |&k: &usize| exists_b_coloring(g, k, None, opts.budget).map(|s| (k, s));
    let results: Vec<(usize, Solve<Coloring>)> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| ks.par_iter().map(solve).collect::<Result<_, _>>())?
    } else {
        ks.iter().map(solve).collect::<Result<_, _>>()?
    };
    let mut spectrum = Vec::new();
    let mut unknown = Vec::new();
    let mut witnesses = BTreeMap::new();
    for (k, s) in results {
        match s {
            Solve::Found(c) => {
                spectrum.push(k);
                witnesses.insert(k, c.colors().to_vec());
            }
            Solve::None => {}
            Solve::Unknown => unknown.push(k),
        }
    }
    let chi = chi.or_else(|| {
        let first = *spectrum.first()?;
        unknown.iter().all(|&u| u > first).then_some(first)
    });
    let chi_b = spectrum.last().copied().filter(|&top| unknown.iter().all(|&u| u < top));
    // Gaps are only meaningful between chi and the largest value found.
    let (continuous, gaps) = match (chi, spectrum.last()) {
        (Some(lo), Some(&hi)) => {
            let gaps: Vec<usize> = (lo..=hi)
                .filter(|k| !spectrum.contains(k) && !unknown.contains(k))
                .collect();
            let undecided_inside = unknown.iter().any(|&u| lo <= u && u <= hi);
            let cont = if !gaps.is_empty() {
                Some(false)
            } else if undecided_inside || chi_b.is_none() {
                None
            } else {
                Some(true)
            };
            (cont, gaps)
        }
        _ => (None, Vec::new()),
    };
    Ok(SpectrumReport {
        graph_id,
        n: g.n(),
        m_bound: m,
        chi,
        chi_b,
        spectrum,
        unknown,
        continuous,
        gaps,
        witnesses,
    })
}
