//! Color elimination on `G[H]` for chordal `G` once `k > n_H * omega(G)`,
//! elimination on `K_l[H]`, and the interval check for chordal products.
//!
//! With a perfect elimination order `v_1, .., v_n`, `G_i` is the subgraph on
//! `v_i, .., v_n`. The descent finds the first `i` whose suffix `G_{i+1}[H]`
//! loses the b-coloring property, repairs `G_i[H]` with two color switches,
//! drops the class left without a b-vertex and recolors the prefix copies
//! greedily from `v_{i-1}` back to `v_1`.

use serde::Serialize;

use crate::coloring::{is_b_coloring, Coloring};
use crate::error::DescentError;
use crate::exact::{b_spectrum, chromatic_number, exists_b_coloring, Budget, Optimum, Solve, SpectrumOptions, Verdict};
use crate::graph::{generate, is_chordal, Chordality, Family, Graph, PerfectEliminationOrder};
use crate::lexprod::{blow_up, lex_product};

/// The repair at the first failing suffix. Positions are 1-based in the
/// elimination order; colors are the input coloring's names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecolorStep {
    pub i: usize,
    pub v_i: usize,
    /// Class whose b-vertices all depend on `v_i[H]`.
    pub c: u32,
    /// Color moved from `v_i[H]` onto the class-`c` vertices of `v_j[H]`.
    pub c_prime: u32,
    /// Smallest color absent from `v_i[H]` and its neighborhood in `G_i[H]`.
    pub c_double_prime: u32,
    /// Neighbor of `v_i` whose copy holds every b-vertex of `c`.
    pub j: usize,
    pub v_j: usize,
}

/// Colors given to the copy `vertex[H]`, in `H` order, named in `1..k-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackFill {
    pub position: usize,
    pub vertex: usize,
    /// Colors absent from the copy's neighborhood when it was filled.
    pub free: usize,
    pub colors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalDescent {
    pub k: u32,
    pub peo: Vec<usize>,
    pub omega: usize,
    pub step: RecolorStep,
    /// Vertices of class `c` in `G_i[H]` and the color each moved to,
    /// before the names above `c` shift down.
    pub eliminated: Vec<(usize, u32)>,
    pub backfill: Vec<BackFill>,
    pub coloring: Coloring,
}

fn breach(msg: impl Into<String>) -> DescentError {
    DescentError::InvariantBreach {
        step: 0,
        msg: msg.into(),
    }
}

/// Per color: present among `alive`, and has a vertex seeing every other
/// color except `ignore` among its `alive` neighbors (`ignore = 0` skips
/// nothing).
fn class_status(product: &Graph, colors: &[u32], alive: &[bool], k: u32, ignore: u32) -> (Vec<bool>, Vec<bool>) {
    let k = k as usize;
    let mut present = vec![false; k + 1];
    let mut has_b = vec![false; k + 1];
    let mut seen = vec![false; k + 1];
    for x in (0..product.n()).filter(|&x| alive[x]) {
        present[colors[x] as usize] = true;
        if has_b[colors[x] as usize] {
            continue;
        }
        seen.iter_mut().for_each(|s| *s = false);
        for &y in product.neighbors(x) {
            if alive[y] {
                seen[colors[y] as usize] = true;
            }
        }
        if (1..=k).all(|d| d == colors[x] as usize || d == ignore as usize || seen[d]) {
            has_b[colors[x] as usize] = true;
        }
    }
    (present, has_b)
}

/// First color that is absent or has no b-vertex among `alive`.
fn first_failing(product: &Graph, colors: &[u32], alive: &[bool], k: u32) -> Option<u32> {
    let (present, has_b) = class_status(product, colors, alive, k, 0);
    (1..=k).find(|&d| !present[d as usize] || !has_b[d as usize])
}

fn b_vertices_of(product: &Graph, colors: &[u32], alive: &[bool], k: u32, c: u32) -> Vec<usize> {
    let mut seen = vec![false; k as usize + 1];
    (0..product.n())
        .filter(|&x| alive[x] && colors[x] == c)
        .filter(|&x| {
            seen.iter_mut().for_each(|s| *s = false);
            for &y in product.neighbors(x) {
                if alive[y] {
                    seen[colors[y] as usize] = true;
                }
            }
            (1..=k).all(|d| d == c || seen[d as usize])
        })
        .collect()
}

fn chordal_peo(g: &Graph) -> Result<PerfectEliminationOrder, DescentError> {
    match is_chordal(g) {
        Chordality::Chordal(peo) => Ok(peo),
        Chordality::NotChordal(cycle) => Err(DescentError::NotChordal(cycle)),
    }
}

/// Clique number of a chordal graph read off its elimination order.
fn omega_from_peo(g: &Graph, peo: &PerfectEliminationOrder) -> usize {
    let pos = peo.positions();
    peo.order
        .iter()
        .map(|&v| 1 + g.neighbors(v).iter().filter(|&&w| pos[w] > pos[v]).count())
        .max()
        .unwrap_or(0)
}

fn verified_b_coloring(product: &Graph, psi: &Coloring) -> Result<(), DescentError> {
    if psi.len() != product.n() {
        return Err(DescentError::NotBColoring(format!(
            "coloring has {} entries, product has {} vertices",
            psi.len(),
            product.n()
        )));
    }
    match is_b_coloring(product, psi) {
        Ok(None) => Ok(()),
        Ok(Some(c)) => Err(DescentError::NotBColoring(format!("color {c} has no b-vertex"))),
        Err(e) => Err(DescentError::NotBColoring(e.to_string())),
    }
}

/// Turns a b-coloring of `g[h]` with `k > n_H * omega(g)` colors into one
/// with `k - 1` colors.
pub fn descend_chordal_product(g: &Graph, h: &Graph, psi: &Coloring) -> Result<ChordalDescent, DescentError> {
    let peo = chordal_peo(g)?;
    let product = lex_product(g, h)
        .map_err(|e| DescentError::Precondition(e.to_string()))?
        .graph;
    verified_b_coloring(&product, psi)?;
    let (n, nh, k) = (g.n(), h.n(), psi.k());
    let omega = omega_from_peo(g, &peo);
    if k as usize <= nh * omega {
        return Err(DescentError::Precondition(format!(
            "k = {k} is not above n_H * omega(G) = {nh} * {omega}"
        )));
    }
    let order = &peo.order;
    let copy = |v: usize| v * nh..(v + 1) * nh;
    let suffix_mask = |p: usize| {
        let mut alive = vec![false; product.n()];
        for &v in &order[p..] {
            alive[copy(v)].iter_mut().for_each(|a| *a = true);
        }
        alive
    };

    let mut colors = psi.colors().to_vec();
    // First suffix losing the property; the last copy alone has at most
    // n_H < k colors, so one exists.
    let (p, c) = (0..n)
        .find_map(|p| first_failing(&product, &colors, &suffix_mask(p + 1), k).map(|c| (p, c)))
        .ok_or_else(|| breach("every suffix keeps a b-coloring"))?;
    let alive = suffix_mask(p);
    if let Some(bad) = first_failing(&product, &colors, &alive, k) {
        return Err(breach(format!(
            "suffix at position {} already fails at color {bad}",
            p + 1
        )));
    }
    let vi = order[p];
    let in_vi = |x: usize| x / nh == vi;

    let b_c = b_vertices_of(&product, &colors, &alive, k, c);
    let mut hosts: Vec<usize> = b_c.iter().map(|&x| x / nh).collect();
    hosts.dedup();
    if hosts.len() != 1 {
        return Err(breach(format!("b-vertices of color {c} span copies {hosts:?}")));
    }
    let host = hosts[0];

    let mut around = vec![false; k as usize + 1];
    for x in copy(vi) {
        around[colors[x] as usize] = true;
        for &y in product.neighbors(x) {
            if alive[y] {
                around[colors[y] as usize] = true;
            }
        }
    }
    let c2 = (1..=k)
        .find(|&d| !around[d as usize])
        .ok_or_else(|| breach(format!("no color absent from v_{}[H] and its neighborhood", p + 1)))?;

    let pos = peo.positions();
    // A vertex of v_i[H] sees at most n_H * omega - 1 colors, fewer than a
    // b-vertex needs.
    let vj = host;
    if vj == vi || !g.has_edge(vi, vj) {
        return Err(breach(format!(
            "b-vertices of color {c} lie in copy {vj}, not a neighbor copy of v_{}",
            p + 1
        )));
    }
    let mut in_copy = vec![false; k as usize + 1];
    for x in copy(vi) {
        in_copy[colors[x] as usize] = true;
    }
    let c1 = (1..=k)
        .filter(|&d| in_copy[d as usize])
        .find(|&d| {
            b_c.iter().all(|&x| {
                product
                    .neighbors(x)
                    .iter()
                    .all(|&y| !alive[y] || colors[y] != d || in_vi(y))
            })
        })
        .ok_or_else(|| breach(format!("no color c' for class {c} at v_{}", p + 1)))?;
    for x in copy(vj) {
        if colors[x] == c1 {
            return Err(breach(format!("color {c1} appears in both v_i[H] and v_j[H]")));
        }
        if colors[x] == c {
            colors[x] = c1;
        }
    }
    for x in copy(vi) {
        if colors[x] == c1 {
            colors[x] = c2;
        }
    }
    let step = RecolorStep {
        i: p + 1,
        v_i: vi,
        c,
        c_prime: c1,
        c_double_prime: c2,
        j: pos[vj] + 1,
        v_j: vj,
    };

    // Class c is about to vanish, so the others only need to see the rest.
    let (present, has_b) = class_status(&product, &colors, &alive, k, c);
    if let Some(d) = (1..=k).find(|&d| d != c && (!present[d as usize] || !has_b[d as usize])) {
        return Err(breach(format!("color {d} lost its b-vertex in G_i[H]")));
    }
    if !b_vertices_of(&product, &colors, &alive, k, c).is_empty() {
        return Err(breach(format!("color {c} still has a b-vertex")));
    }

    // Class c is independent, so its vertices move simultaneously.
    let class_c: Vec<usize> = (0..product.n()).filter(|&x| alive[x] && colors[x] == c).collect();
    let mut eliminated = Vec::with_capacity(class_c.len());
    for &x in &class_c {
        let mut seen = vec![false; k as usize + 1];
        for &y in product.neighbors(x) {
            if alive[y] {
                seen[colors[y] as usize] = true;
            }
        }
        let to = (1..=k)
            .find(|&d| d != c && !seen[d as usize])
            .ok_or_else(|| breach(format!("vertex {x} of color {c} sees every color")))?;
        eliminated.push((x, to));
    }
    for &(x, to) in &eliminated {
        colors[x] = to;
    }
    let k1 = k - 1;
    for x in (0..product.n()).filter(|&x| alive[x]) {
        if colors[x] > c {
            colors[x] -= 1;
        }
    }
    if let Some(d) = first_failing(&product, &colors, &alive, k1) {
        return Err(breach(format!("G_i[H] coloring with {k1} colors fails at color {d}")));
    }

    let mut alive = alive;
    let mut backfill = Vec::with_capacity(p);
    for q in (0..p).rev() {
        let v = order[q];
        let mut used = vec![false; k1 as usize + 1];
        for &w in g.neighbors(v) {
            if pos[w] > q {
                for y in copy(w) {
                    used[colors[y] as usize] = true;
                }
            }
        }
        let free: Vec<u32> = (1..=k1).filter(|&d| !used[d as usize]).collect();
        if free.len() < nh {
            return Err(breach(format!(
                "only {} free colors for v_{}[H], need {nh}",
                free.len(),
                q + 1
            )));
        }
        for (x, &d) in copy(v).zip(&free) {
            colors[x] = d;
            alive[x] = true;
        }
        backfill.push(BackFill {
            position: q + 1,
            vertex: v,
            free: free.len(),
            colors: free[..nh].to_vec(),
        });
    }

    let coloring = Coloring::new(colors, k1)?;
    match is_b_coloring(&product, &coloring) {
        Ok(None) => {}
        Ok(Some(d)) => return Err(breach(format!("output color {d} has no b-vertex"))),
        Err(e) => return Err(breach(e.to_string())),
    }
    Ok(ChordalDescent {
        k,
        peo: peo.order.clone(),
        omega,
        step,
        eliminated,
        backfill,
        coloring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteLeftDescent {
    pub k: u32,
    pub chi_h: usize,
    /// Lowest copy carrying more than `chi(h)` colors.
    pub copy: usize,
    pub copy_colors: usize,
    /// Largest color of that copy, dropped.
    pub removed: u32,
    pub coloring: Coloring,
}

fn complete(l: usize) -> Graph {
    generate(Family::Complete, &[l as u64]).expect("complete graph")
}

/// Turns a b-coloring of `K_l[h]` with `k > l * chi(h)` colors into one with
/// `k - 1` colors by recoloring a single copy of `h` with one color fewer.
pub fn descend_complete_left(
    l: usize,
    h: &Graph,
    psi: &Coloring,
    budget: Budget,
) -> Result<CompleteLeftDescent, DescentError> {
    if l == 0 {
        return Err(DescentError::Precondition("l must be positive".into()));
    }
    let product = lex_product(&complete(l), h)
        .map_err(|e| DescentError::Precondition(e.to_string()))?
        .graph;
    verified_b_coloring(&product, psi)?;
    let chi_h = match chromatic_number(h, budget) {
        Optimum::Exact { value, .. } => value,
        Optimum::Unknown { .. } => return Err(DescentError::Unknown("chromatic number of h".into())),
    };
    let (nh, k) = (h.n(), psi.k());
    if k as usize <= l * chi_h {
        return Err(DescentError::Precondition(format!(
            "k = {k} equals chi(K_l[H]) = {l} * {chi_h}"
        )));
    }
    let palettes: Vec<Vec<u32>> = (0..l)
        .map(|u| {
            let mut p: Vec<u32> = psi.colors()[u * nh..(u + 1) * nh].to_vec();
            p.sort_unstable();
            p.dedup();
            p
        })
        .collect();
    let u = palettes
        .iter()
        .position(|p| p.len() > chi_h)
        .ok_or_else(|| breach("no copy carries more than chi(h) colors"))?;
    let palette = &palettes[u];
    let kp = palette.len();
    let local: Vec<u32> = psi.colors()[u * nh..(u + 1) * nh]
        .iter()
        .map(|c| palette.binary_search(c).expect("color in palette") as u32 + 1)
        .collect();
    let local = Coloring::new(local, kp as u32)?;
    if is_b_coloring(h, &local) != Ok(None) {
        return Err(breach(format!("copy {u} is not a b-coloring of h")));
    }
    let gamma = match exists_b_coloring(h, kp - 1, None, budget).map_err(|e| breach(e.to_string()))? {
        Solve::Found(c) => c,
        Solve::None => {
            return Err(DescentError::Precondition(format!(
                "h has no b-coloring with {} colors, so it is not b-continuous",
                kp - 1
            )))
        }
        Solve::Unknown => return Err(DescentError::Unknown(format!("b-coloring of h with {} colors", kp - 1))),
    };
    let removed = palette[kp - 1];
    let mut colors = psi.colors().to_vec();
    for (y, &c) in gamma.colors().iter().enumerate() {
        colors[u * nh + y] = palette[c as usize - 1];
    }
    for c in colors.iter_mut() {
        if *c > removed {
            *c -= 1;
        }
    }
    let coloring = Coloring::new(colors, k - 1)?;
    match is_b_coloring(&product, &coloring) {
        Ok(None) => {}
        Ok(Some(d)) => return Err(breach(format!("output color {d} has no b-vertex"))),
        Err(e) => return Err(breach(e.to_string())),
    }
    Ok(CompleteLeftDescent {
        k,
        chi_h,
        copy: u,
        copy_colors: kp,
        removed,
        coloring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub n_h: usize,
    pub chi_g: usize,
    /// `n_H * chi(G)`.
    pub lower: usize,
    pub chi_b_gh: Option<usize>,
    /// `chi_b(h)`.
    pub t: Option<usize>,
    pub chi_b_gkt: Option<usize>,
    pub spectrum: Vec<usize>,
    pub unknown: Vec<usize>,
    /// Whether `[n_H * chi(G), chi_b(G[H])]` lies in the spectrum; passes
    /// vacuously when `chi_b(G[H]) < n_H * chi(G)`.
    pub inclusion: Verdict,
    /// Values of the interval found missing.
    pub missing: Vec<usize>,
    /// Whether no integer lies strictly between `chi_b(G[K_t])` and
    /// `n_H * chi(G)`.
    pub gap_empty: Option<bool>,
    pub b_continuous: Option<bool>,
}

/// Computes the quantities around the interval `[n_H chi(G), chi_b(G[H])]`
/// for a chordal `g` and checks it against the exact spectrum of `g[h]`.
pub fn check_final_corollary(g: &Graph, h: &Graph, opts: SpectrumOptions) -> Result<CorollaryReport, DescentError> {
    let peo = chordal_peo(g)?;
    // Chordal graphs are perfect.
    let chi_g = omega_from_peo(g, &peo);
    let nh = h.n();
    let lower = nh * chi_g;
    let gh = lex_product(g, h)
        .map_err(|e| DescentError::Precondition(e.to_string()))?
        .graph;
    let exact = |e: crate::error::ExactError| DescentError::Precondition(e.to_string());
    let rep = b_spectrum(&gh, opts).map_err(exact)?;
    let t = b_spectrum(h, opts).map_err(exact)?.chi_b;
    let chi_b_gkt = match t {
        Some(t) => {
            let gkt = blow_up(g, t)
                .map_err(|e| DescentError::Precondition(e.to_string()))?
                .graph;
            b_spectrum(&gkt, opts).map_err(exact)?.chi_b
        }
        None => None,
    };

    // The top of the interval is the largest value found; undecided values
    // above it leave chi_b open.
    let top = rep.spectrum.last().copied();
    let mut missing = Vec::new();
    let mut undecided = false;
    if let Some(top) = top {
        for x in lower..=top {
            if rep.unknown.contains(&x) {
                undecided = true;
            } else if !rep.spectrum.contains(&x) {
                missing.push(x);
            }
        }
    }
    let inclusion = if !missing.is_empty() {
        Verdict::Fail
    } else if undecided || (rep.chi_b.is_none() && rep.unknown.iter().any(|&u| u >= lower)) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let gap_empty = chi_b_gkt.map(|a| lower <= a + 1);
    Ok(CorollaryReport {
        n_h: nh,
        chi_g,
        lower,
        chi_b_gh: rep.chi_b,
        t,
        chi_b_gkt,
        spectrum: rep.spectrum,
        unknown: rep.unknown,
        inclusion,
        missing,
        gap_empty,
        b_continuous: rep.continuous,
    })
}
