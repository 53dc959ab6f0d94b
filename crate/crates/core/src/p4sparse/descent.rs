//! Color elimination on `G[K_l]` for P4-sparse `G`.
//!
//! The named color is renamed to 1 internally. Each step either recolors
//! inside the current graph `G_i` or removes vertices from it (s-, c- and
//! p-reductions); after every step the coloring of `G_i[K_l]` must be a
//! miss-1-b-coloring with `k` colors. The decomposition of `G_i` is rebuilt
//! from scratch at each step, so it is always minimal. Once color 1 is gone
//! the remaining coloring is lifted back through the reductions in reverse.

use serde::Serialize;

use super::tree::{decompose_within, LeafKind, Node, Operation, PrimevalTree, SpiderParts};
use crate::coloring::{is_b_coloring, miss_b_check, Coloring};
use crate::error::DescentError;
use crate::graph::{is_p4_sparse, Graph, P4Sparseness};
use crate::lexprod::blow_up;

/// Pairwise adjacent product vertices, as many as there are colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCertificate {
    pub vertices: Vec<usize>,
}

impl CliqueCertificate {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn verify(&self, product: &Graph, k: usize) -> bool {
        self.vertices.len() == k && product.is_clique(&self.vertices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorChange {
    pub vertex: usize,
    pub from: u32,
    pub to: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum RecolorRule {
    /// Copies of color 1 in a stable leaf take a color already in the leaf.
    StableLeaf,
    /// Color 1 is absent from `C'`; copies in `S'` take a non-neighbor's color.
    SpiderStable,
    /// Colors 1 and `c` exchanged in the spider leaf, then as above.
    SpiderSwap { c: u32 },
    /// Colors 1 and `c` exchanged in the parent join subgraph.
    CliqueJoin { c: u32 },
    /// The copy of color 1 in a clique leaf takes `c`, unused nearby.
    CliqueFree { c: u32 },
}

/// How removed copies are recolored when lifting a c-reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CLift {
    /// Every removed vertex copies the colors of `source[K_l]`.
    Copy { source: usize },
    /// Removed copies keep their old color class, renamed through the map
    /// sending each anchor's old color to its new one.
    Transfer {
        anchors: Vec<(usize, u32)>,
        removed_colors: Vec<(usize, u32)>,
    },
}

/// Product vertices are `v * l + j`; colors are internal labels, where the
/// eliminated color is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceRecord {
    Recolor {
        step: usize,
        leaf: Vec<usize>,
        #[serde(flatten)]
        rule: RecolorRule,
        changes: Vec<ColorChange>,
    },
    SReduction {
        step: usize,
        leaf: Vec<usize>,
        kept: usize,
        removed: Vec<usize>,
    },
    CReduction {
        step: usize,
        leaf: Vec<usize>,
        removed: Vec<usize>,
        lift: CLift,
    },
    /// `sources[i]` gives its colors to `removed[i]`.
    PReduction {
        step: usize,
        leaf: Vec<usize>,
        removed: Vec<usize>,
        sources: Vec<usize>,
    },
}

impl TraceRecord {
    fn step(&self) -> usize {
        match self {
            TraceRecord::Recolor { step, .. }
            | TraceRecord::SReduction { step, .. }
            | TraceRecord::CReduction { step, .. }
            | TraceRecord::PReduction { step, .. } => *step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub graph_id: String,
    pub n: usize,
    pub l: usize,
    pub k: u32,
    /// Color named by the caller, 1 internally.
    pub eliminated: u32,
    pub records: Vec<TraceRecord>,
    /// Vertices of the last graph `G_p`, ascending.
    pub final_vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DescentOutcome {
    Reduced {
        coloring: Coloring,
        trace: ReductionTrace,
    },
    Clique {
        certificate: CliqueCertificate,
        trace: ReductionTrace,
    },
}

impl DescentOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            DescentOutcome::Reduced { coloring, .. } => Some(coloring),
            DescentOutcome::Clique { .. } => None,
        }
    }

    pub fn trace(&self) -> &ReductionTrace {
        match self {
            DescentOutcome::Reduced { trace, .. } | DescentOutcome::Clique { trace, .. } => trace,
        }
    }
}

enum Finish {
    /// Color 1 is gone from `G_p[K_l]`.
    Done,
    /// `G_p` is a spider with `k = omega + 1`; the coloring with `k - 1`
    /// colors built directly.
    Base(Vec<u32>),
    Clique(CliqueCertificate),
}

/// `(|V(G_i)|, leaves holding color 1)`; each leaf weighs `(-depth, is
/// clique)` and the leaf list is sorted descending, so lexicographic order
/// on the pair is the multiset order.
type Measure = (usize, Vec<(i64, bool)>);

struct Descent<'a> {
    g: &'a Graph,
    l: usize,
    k: u32,
    alive: Vec<bool>,
    colors: Vec<u32>,
    records: Vec<TraceRecord>,
    step: usize,
}

impl<'a> Descent<'a> {
    fn copies(&self, v: usize) -> std::ops::Range<usize> {
        v * self.l..(v + 1) * self.l
    }

    fn alive_list(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&v| self.alive[v]).collect()
    }

    fn breach(&self, msg: impl Into<String>) -> DescentError {
        DescentError::InvariantBreach {
            step: self.step,
            msg: msg.into(),
        }
    }

    /// Colors present on `vs[K_l]` under `colors`, indexed by color.
    fn palette(&self, colors: &[u32], vs: &[usize]) -> Vec<bool> {
        let mut p = vec![false; self.k as usize + 1];
        for &v in vs {
            for w in self.copies(v) {
                p[colors[w] as usize] = true;
            }
        }
        p
    }

    fn holds_one(&self, vs: &[usize]) -> bool {
        self.palette(&self.colors, vs)[1]
    }

    fn restrict(&self, colors: &[u32], k: u32, shift: u32) -> Result<(Graph, Coloring), DescentError> {
        let vs = self.alive_list();
        let sub = self.g.induced(&vs);
        let product = blow_up(&sub, self.l).map_err(|e| self.breach(e.to_string()))?.graph;
        let mut cs = Vec::with_capacity(product.n());
        for &v in &vs {
            for w in self.copies(v) {
                cs.push(colors[w] - shift);
            }
        }
        Ok((product, Coloring::new(cs, k)?))
    }

    fn miss1_holds(&self, colors: &[u32]) -> Result<bool, DescentError> {
        let (product, c) = self.restrict(colors, self.k, 0)?;
        Ok(match miss_b_check(&product, &c, 1) {
            Ok(chk) => chk.holds(),
            Err(_) => false,
        })
    }

    fn check_miss1(&self) -> Result<(), DescentError> {
        let (product, c) = self.restrict(&self.colors, self.k, 0)?;
        let chk = miss_b_check(&product, &c, 1).map_err(|e| self.breach(e.to_string()))?;
        match chk.missing {
            None => Ok(()),
            Some(i) => Err(self.breach(format!("color {i} lost its last b*-vertex"))),
        }
    }

    fn measure(&self, tree: &PrimevalTree) -> Measure {
        let depths = tree.depths();
        let mut weights: Vec<(i64, bool)> = tree
            .leaves()
            .into_iter()
            .filter(|&x| self.holds_one(&tree.vertices(x)))
            .map(|x| {
                let clique = matches!(
                    tree.nodes[x],
                    Node::Leaf {
                        kind: LeafKind::Clique,
                        ..
                    }
                );
                (-(depths[x] as i64), clique)
            })
            .collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        (self.alive.iter().filter(|&&a| a).count(), weights)
    }

    fn record_changes(&mut self, before: &[u32], leaf: &[usize], rule: RecolorRule) {
        let changes: Vec<ColorChange> = before
            .iter()
            .zip(&self.colors)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(vertex, (&from, &to))| ColorChange { vertex, from, to })
            .collect();
        if !changes.is_empty() {
            self.records.push(TraceRecord::Recolor {
                step: self.step,
                leaf: leaf.to_vec(),
                rule,
                changes,
            });
        }
    }

    fn kill(&mut self, vs: &[usize]) {
        for &v in vs {
            self.alive[v] = false;
        }
    }

    fn run(&mut self) -> Result<Finish, DescentError> {
        let mut prev: Option<Measure> = None;
        loop {
            let vs = self.alive_list();
            let tree = decompose_within(self.g, &vs).map_err(DescentError::NotP4Sparse)?;
            let m = self.measure(&tree);
            if let Some(p) = &prev {
                if m >= *p {
                    return Err(self.breach(format!("measure did not decrease: {p:?} -> {m:?}")));
                }
            }
            prev = Some(m);
            self.check_miss1()?;
            let leaves = tree.leaves();
            let Some(&f) = leaves.iter().find(|&&x| self.holds_one(&tree.vertices(x))) else {
                return Ok(Finish::Done);
            };
            self.step += 1;
            if let Some(finish) = self.apply(&tree, f)? {
                return Ok(finish);
            }
        }
    }

    fn apply(&mut self, tree: &PrimevalTree, f: usize) -> Result<Option<Finish>, DescentError> {
        let Node::Leaf { kind, vertices: xf } = &tree.nodes[f] else {
            unreachable!("leaves() yields leaves")
        };
        let Some(p) = tree.parents()[f] else {
            return match kind {
                LeafKind::Stable => self.stable_leaf(xf).map(|_| None),
                LeafKind::Clique => {
                    let vertices: Vec<usize> = xf.iter().flat_map(|&v| self.copies(v)).collect();
                    if vertices.len() != self.k as usize {
                        return Err(self.breach("whole-graph clique leaf does not have k vertices"));
                    }
                    Ok(Some(Finish::Clique(CliqueCertificate { vertices })))
                }
                LeafKind::Spider(parts) => self.whole_spider(parts).map(Some),
            };
        };
        let Node::Internal { op, left, right } = tree.nodes[p] else {
            unreachable!("parents are internal")
        };
        let sibling = if left == f { right } else { left };
        let sib = tree.vertices(sibling);
        match kind {
            LeafKind::Stable => self.stable_leaf(xf)?,
            LeafKind::Spider(parts) => {
                // Only a spider body has a neighbor set (its head) that is
                // not complete to the whole leaf.
                let head = if op == Operation::Spider && left == f {
                    sib
                } else {
                    Vec::new()
                };
                self.spider_leaf(xf, parts, &head)?
            }
            LeafKind::Clique => self.clique_leaf(xf, op, &sib, &tree.vertices(p))?,
        }
        Ok(None)
    }

    fn stable_leaf(&mut self, xf: &[usize]) -> Result<(), DescentError> {
        let before = self.colors.clone();
        for &u in xf {
            let Some(w) = self.copies(u).find(|&w| self.colors[w] == 1) else {
                continue;
            };
            let leaf = self.palette(&self.colors, xf);
            let own = self.palette(&self.colors, &[u]);
            if let Some(c) = (2..=self.k).find(|&c| leaf[c as usize] && !own[c as usize]) {
                self.colors[w] = c;
            }
        }
        self.record_changes(&before, xf, RecolorRule::StableLeaf);
        let Some(&u) = xf.iter().find(|&&u| self.holds_one(&[u])) else {
            return Ok(());
        };
        let leaf = self.palette(&self.colors, xf);
        let own = self.palette(&self.colors, &[u]);
        if leaf.iter().zip(&own).any(|(&a, &b)| a && !b) {
            return Err(self.breach("stable leaf colors not contained in the kept vertex"));
        }
        let removed: Vec<usize> = xf.iter().copied().filter(|&v| v != u).collect();
        self.kill(&removed);
        self.records.push(TraceRecord::SReduction {
            step: self.step,
            leaf: xf.to_vec(),
            kept: u,
            removed,
        });
        Ok(())
    }

    /// Smallest vertex of `C` not adjacent to `s`.
    fn non_neighbor(&self, parts: &SpiderParts, s: usize) -> usize {
        *parts
            .clique
            .iter()
            .find(|&&c| !self.g.has_edge(c, s))
            .expect("every stable vertex of a spider misses some clique vertex")
    }

    /// Recolors every copy of color 1 in `S'` with the smallest color of a
    /// non-neighbor's copies that is not already on the same vertex.
    fn clear_stable(&self, colors: &mut [u32], parts: &SpiderParts) -> Result<(), DescentError> {
        for &s in &parts.stable {
            let Some(w) = self.copies(s).find(|&w| colors[w] == 1) else {
                continue;
            };
            let far: Vec<usize> = parts
                .clique
                .iter()
                .copied()
                .filter(|&c| !self.g.has_edge(c, s))
                .collect();
            let avail = self.palette(colors, &far);
            let own = self.palette(colors, &[s]);
            let c = (2..=self.k)
                .find(|&c| avail[c as usize] && !own[c as usize])
                .ok_or_else(|| self.breach(format!("no color for stable vertex {s}")))?;
            colors[w] = c;
        }
        Ok(())
    }

    fn spider_leaf(&mut self, xf: &[usize], parts: &SpiderParts, head: &[usize]) -> Result<(), DescentError> {
        let before = self.colors.clone();
        let on_c = self.palette(&self.colors, &parts.clique);
        if !on_c[1] {
            let mut colors = self.colors.clone();
            self.clear_stable(&mut colors, parts)?;
            self.colors = colors;
            self.record_changes(&before, xf, RecolorRule::SpiderStable);
            return Ok(());
        }
        let on_s = self.palette(&self.colors, &parts.stable);
        let on_head = self.palette(&self.colors, head);
        let candidates: Vec<u32> = (2..=self.k)
            .filter(|&c| on_s[c as usize] && !on_c[c as usize] && !on_head[c as usize])
            .collect();
        for &c in &candidates {
            let mut colors = self.colors.clone();
            for &v in xf {
                for w in self.copies(v) {
                    colors[w] = match colors[w] {
                        1 => c,
                        x if x == c => 1,
                        x => x,
                    };
                }
            }
            self.clear_stable(&mut colors, parts)?;
            if self.miss1_holds(&colors)? {
                self.colors = colors;
                self.record_changes(&before, xf, RecolorRule::SpiderSwap { c });
                return Ok(());
            }
        }
        if !candidates.is_empty() {
            return Err(self.breach(format!("no swap color among {candidates:?} keeps the b*-vertices")));
        }
        let sources = parts
            .stable
            .iter()
            .map(|&s| match head.first() {
                Some(&u) => u,
                None => self.non_neighbor(parts, s),
            })
            .collect();
        self.kill(&parts.stable);
        self.records.push(TraceRecord::PReduction {
            step: self.step,
            leaf: xf.to_vec(),
            removed: parts.stable.clone(),
            sources,
        });
        Ok(())
    }

    fn clique_leaf(
        &mut self,
        xf: &[usize],
        op: Operation,
        sib: &[usize],
        parent: &[usize],
    ) -> Result<(), DescentError> {
        let before = self.colors.clone();
        let on_sib = self.palette(&self.colors, sib);
        if op == Operation::Join {
            if self.g.is_clique(sib) {
                return Err(self.breach("join of two cliques in a minimal decomposition"));
            }
            for c in (2..=self.k).filter(|&c| on_sib[c as usize]) {
                let mut colors = self.colors.clone();
                for &v in parent {
                    for w in self.copies(v) {
                        colors[w] = match colors[w] {
                            1 => c,
                            x if x == c => 1,
                            x => x,
                        };
                    }
                }
                if self.miss1_holds(&colors)? {
                    self.colors = colors;
                    self.record_changes(&before, xf, RecolorRule::CliqueJoin { c });
                    return Ok(());
                }
            }
            return Err(self.breach("no join swap color keeps the b*-vertices"));
        }
        // The leaf is a module, so adjacency to one vertex decides.
        let near: Vec<usize> = sib.iter().copied().filter(|&v| self.g.has_edge(v, xf[0])).collect();
        let mut blocked = self.palette(&self.colors, xf);
        for (b, n) in blocked.iter_mut().zip(self.palette(&self.colors, &near)) {
            *b |= n;
        }
        if let Some(c) = (2..=self.k).find(|&c| on_sib[c as usize] && !blocked[c as usize]) {
            for &v in xf {
                for w in self.copies(v) {
                    if self.colors[w] == 1 {
                        self.colors[w] = c;
                    }
                }
            }
            self.record_changes(&before, xf, RecolorRule::CliqueFree { c });
            return Ok(());
        }
        let removed: Vec<usize> = sib.iter().copied().filter(|v| !near.contains(v)).collect();
        if removed.is_empty() {
            return Err(self.breach("c-reduction would remove nothing"));
        }
        let lift = match op {
            Operation::Spider => CLift::Copy { source: xf[0] },
            Operation::Union => {
                let pairs = |vs: &[usize]| -> Vec<(usize, u32)> {
                    vs.iter()
                        .flat_map(|&v| self.copies(v))
                        .map(|w| (w, self.colors[w]))
                        .collect()
                };
                CLift::Transfer {
                    anchors: pairs(xf),
                    removed_colors: pairs(&removed),
                }
            }
            Operation::Join => unreachable!("handled above"),
        };
        self.kill(&removed);
        self.records.push(TraceRecord::CReduction {
            step: self.step,
            leaf: xf.to_vec(),
            removed,
            lift,
        });
        Ok(())
    }

    /// `G_i` is a spider with empty head: either `k = omega` and `C[K_l]` is
    /// the certificate, or `k = omega + 1` and `C'` rainbow plus copied
    /// stable vertices is a b-coloring with `k - 1` colors.
    fn whole_spider(&mut self, parts: &SpiderParts) -> Result<Finish, DescentError> {
        let omega = (self.l * parts.clique.len()) as u32;
        if self.k == omega {
            let vertices = parts.clique.iter().flat_map(|&v| self.copies(v)).collect();
            return Ok(Finish::Clique(CliqueCertificate { vertices }));
        }
        if self.k != omega + 1 {
            return Err(self.breach(format!("spider with k = {} but omega = {omega}", self.k)));
        }
        let mut colors = vec![0; self.colors.len()];
        let mut next = 2;
        for &c in &parts.clique {
            for w in self.copies(c) {
                colors[w] = next;
                next += 1;
            }
        }
        for &s in &parts.stable {
            let src = self.non_neighbor(parts, s);
            for j in 0..self.l {
                colors[s * self.l + j] = colors[src * self.l + j];
            }
        }
        Ok(Finish::Base(colors))
    }
}

/// Replays `records` backwards from `gamma`, a coloring of `G_p[K_l]` with
/// internal colors `2..=k`; every intermediate product is checked to be
/// b-colored with `k - 1` colors.
fn lift_internal(
    g: &Graph,
    l: usize,
    k: u32,
    records: &[TraceRecord],
    final_vertices: &[usize],
    mut gamma: Vec<u32>,
) -> Result<Vec<u32>, DescentError> {
    let mut st = Descent {
        g,
        l,
        k,
        alive: vec![false; g.n()],
        colors: Vec::new(),
        records: Vec::new(),
        step: records.last().map_or(0, TraceRecord::step),
    };
    for &v in final_vertices {
        st.alive[v] = true;
    }
    let check = |st: &Descent, gamma: &[u32]| -> Result<(), DescentError> {
        if let Some(v) = st
            .alive_list()
            .into_iter()
            .find(|&v| st.copies(v).any(|w| !(2..=k).contains(&gamma[w])))
        {
            return Err(st.breach(format!("vertex {v} left without a color in 2..={k}")));
        }
        let (product, c) = st.restrict(gamma, k - 1, 1)?;
        match is_b_coloring(&product, &c) {
            Ok(None) => Ok(()),
            Ok(Some(i)) => Err(st.breach(format!("lifted color {} has no b-vertex", i + 1))),
            Err(e) => Err(st.breach(e.to_string())),
        }
    };
    check(&st, &gamma)?;
    for rec in records.iter().rev() {
        st.step = rec.step();
        let copy_from = |gamma: &mut Vec<u32>, v: usize, src: usize| {
            for j in 0..l {
                gamma[v * l + j] = gamma[src * l + j];
            }
        };
        match rec {
            TraceRecord::Recolor { .. } => continue,
            TraceRecord::SReduction { kept, removed, .. } => {
                for &v in removed {
                    copy_from(&mut gamma, v, *kept);
                }
                st.kill_undo(removed);
            }
            TraceRecord::PReduction { removed, sources, .. } => {
                for (&v, &src) in removed.iter().zip(sources) {
                    copy_from(&mut gamma, v, src);
                }
                st.kill_undo(removed);
            }
            TraceRecord::CReduction { removed, lift, .. } => {
                match lift {
                    CLift::Copy { source } => {
                        for &v in removed {
                            copy_from(&mut gamma, v, *source);
                        }
                    }
                    CLift::Transfer {
                        anchors,
                        removed_colors,
                    } => {
                        let mut sigma = vec![0u32; k as usize + 1];
                        for &(w, old) in anchors {
                            sigma[old as usize] = gamma[w];
                        }
                        for &(w, old) in removed_colors {
                            if sigma[old as usize] == 0 {
                                return Err(st.breach(format!("removed color {old} not on the anchor clique")));
                            }
                            gamma[w] = sigma[old as usize];
                        }
                    }
                }
                st.kill_undo(removed);
            }
        }
        check(&st, &gamma)?;
    }
    Ok(gamma)
}

impl Descent<'_> {
    fn kill_undo(&mut self, vs: &[usize]) {
        for &v in vs {
            self.alive[v] = true;
        }
    }
}

fn product_of(g: &Graph, l: usize) -> Result<Graph, DescentError> {
    blow_up(g, l)
        .map(|p| p.graph)
        .map_err(|e| DescentError::Precondition(e.to_string()))
}

/// From a b-coloring `psi` of `g[K_l]` with `k` colors, either a b-coloring
/// with `k - 1` colors (color `eliminate` removed, larger colors shifted
/// down) or a clique of size `k` in `g[K_l]`.
pub fn descend_p4sparse(g: &Graph, l: usize, psi: &Coloring, eliminate: u32) -> Result<DescentOutcome, DescentError> {
    if let P4Sparseness::Witness(w) = is_p4_sparse(g) {
        return Err(DescentError::NotP4Sparse(w.to_vec()));
    }
    if l == 0 {
        return Err(DescentError::Precondition("l must be at least 1".into()));
    }
    let product = product_of(g, l)?;
    if psi.len() != product.n() {
        return Err(DescentError::Precondition(format!(
            "coloring has {} entries, g[K_{l}] has {} vertices",
            psi.len(),
            product.n()
        )));
    }
    let k = psi.k();
    if let Some(i) = is_b_coloring(&product, psi)? {
        return Err(DescentError::NotBColoring(format!("color {i} has no b-vertex")));
    }
    if eliminate == 0 || eliminate > k {
        return Err(DescentError::Precondition(format!("color {eliminate} not in 1..={k}")));
    }
    let swap = |c: u32| match c {
        1 => eliminate,
        c if c == eliminate => 1,
        c => c,
    };
    let mut st = Descent {
        g,
        l,
        k,
        alive: vec![true; g.n()],
        colors: psi.colors().iter().map(|&c| swap(c)).collect(),
        records: Vec::new(),
        step: 0,
    };
    let finish = st.run()?;
    let final_vertices = st.alive_list();
    let trace = ReductionTrace {
        graph_id: format!("{:016x}", g.fingerprint()),
        n: g.n(),
        l,
        k,
        eliminated: eliminate,
        records: std::mem::take(&mut st.records),
        final_vertices,
    };
    let gamma = match finish {
        Finish::Clique(certificate) => {
            if !certificate.verify(&product, k as usize) {
                return Err(st.breach("clique certificate does not verify"));
            }
            return Ok(DescentOutcome::Clique { certificate, trace });
        }
        Finish::Done => st.colors.clone(),
        Finish::Base(gamma) => gamma,
    };
    let lifted = lift_internal(g, l, k, &trace.records, &trace.final_vertices, gamma)?;
    // internal x: swap back to the caller's label, then close the gap
    let out: Vec<u32> = lifted
        .iter()
        .map(|&x| {
            let orig = swap(x);
            if orig > eliminate {
                orig - 1
            } else {
                orig
            }
        })
        .collect();
    let coloring = Coloring::new(out, k - 1)?;
    if let Some(i) = is_b_coloring(&product, &coloring)? {
        return Err(st.breach(format!("output color {i} has no b-vertex")));
    }
    Ok(DescentOutcome::Reduced { coloring, trace })
}

/// Lifts a b-coloring of the final reduced product `G_p[K_l]` (vertices of
/// `G_p` in ascending order) back to `g[K_l]`, keeping its color names.
pub fn lift_coloring(g: &Graph, trace: &ReductionTrace, gamma: &Coloring) -> Result<Coloring, DescentError> {
    if format!("{:016x}", g.fingerprint()) != trace.graph_id || g.n() != trace.n {
        return Err(DescentError::TraceMismatch("graph differs from the traced one".into()));
    }
    let l = trace.l;
    if gamma.len() != trace.final_vertices.len() * l || gamma.k() + 1 != trace.k {
        return Err(DescentError::TraceMismatch(format!(
            "expected {} vertices and {} colors",
            trace.final_vertices.len() * l,
            trace.k - 1
        )));
    }
    if trace.final_vertices.iter().any(|&v| v >= g.n()) {
        return Err(DescentError::TraceMismatch("final vertex out of range".into()));
    }
    let mut full = vec![0u32; g.n() * l];
    for (pos, &v) in trace.final_vertices.iter().enumerate() {
        for j in 0..l {
            full[v * l + j] = gamma.color(pos * l + j) + 1;
        }
    }
    let lifted = lift_internal(g, l, trace.k, &trace.records, &trace.final_vertices, full)?;
    Ok(Coloring::new(lifted.iter().map(|&x| x - 1).collect(), trace.k - 1)?)
}
