//! Colorings, b-vertices and miss-1-b-colorings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::ColoringError;
use crate::graph::Graph;

/// Total map from vertices to colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
    k: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, k: u32) -> Result<Self, ColoringError> {
        for (vertex, &color) in colors.iter().enumerate() {
            if color == 0 || color > k {
                return Err(ColoringError::ColorOutOfRange { vertex, color, k });
            }
        }
        Ok(Coloring { colors, k })
    }

    /// Palette size is the largest color present.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(0);
        Self::new(colors, k)
    }

    /// Whitespace-separated colors aligned with vertex indices.
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let colors = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| ColoringError::Malformed(format!("`{t}` is not a color")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_colors(colors)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.colors.iter().map(u32::to_string).collect();
        parts.join(" ")
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Vertices of color `i`.
    pub fn class(&self, i: u32) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == i).collect()
    }

    /// Number of distinct colors actually used.
    pub fn used(&self) -> usize {
        let mut seen = vec![false; self.k as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    /// Relabels colors by first occurrence in vertex order; the palette
    /// shrinks to the number of used colors.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![0u32; self.k as usize + 1];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c as usize] == 0 {
                    next += 1;
                    map[c as usize] = next;
                }
                map[c as usize]
            })
            .collect();
        Coloring { colors, k: next }
    }

    /// Applies `map[c]` to every color; `map` must be injective on used colors.
    pub fn relabel(&self, map: impl Fn(u32) -> u32, k: u32) -> Result<Coloring, ColoringError> {
        Coloring::new(self.colors.iter().map(|&c| map(c)).collect(), k)
    }
}

fn check_len(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    if g.n() != c.len() {
        return Err(ColoringError::LengthMismatch {
            expected: g.n(),
            got: c.len(),
        });
    }
    Ok(())
}

/// `Ok(None)` when proper, otherwise the first monochromatic edge.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>, ColoringError> {
    check_len(g, c)?;
    Ok(g.edges().find(|&(u, v)| c.color(u) == c.color(v)))
}

fn require_proper(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    match is_proper(g, c)? {
        Some((u, v)) => Err(ColoringError::Improper(u, v)),
        None => Ok(()),
    }
}

/// Number of distinct colors in `N(v)`.
fn sees(g: &Graph, c: &Coloring, v: usize, stamp: &mut [usize], tick: usize) -> usize {
    let mut count = 0;
    for &w in g.neighbors(v) {
        let cw = c.color(w) as usize;
        if stamp[cw] != tick {
            stamp[cw] = tick;
            count += 1;
        }
    }
    count
}

/// Whether `v` is adjacent to every color of `1..=k` except its own and
/// `ignored` (pass 0 to ignore nothing).
fn sees_all_but(g: &Graph, c: &Coloring, v: usize, ignored: u32, stamp: &mut [usize], tick: usize) -> bool {
    let own = c.color(v);
    let mut count = sees(g, c, v, stamp, tick);
    if ignored != 0 && ignored != own && stamp[ignored as usize] == tick {
        count -= 1;
    }
    let needed = c.k() as usize - 1 - usize::from(ignored != 0 && ignored != own);
    count == needed
}

/// For every color `1..=k`, its b-vertices.
pub fn b_vertices(g: &Graph, c: &Coloring) -> Result<BTreeMap<u32, Vec<usize>>, ColoringError> {
    require_proper(g, c)?;
    let mut out: BTreeMap<u32, Vec<usize>> = (1..=c.k()).map(|i| (i, Vec::new())).collect();
    let mut stamp = vec![0usize; c.k() as usize + 1];
    for v in 0..g.n() {
        if sees_all_but(g, c, v, 0, &mut stamp, v + 1) {
            out.get_mut(&c.color(v)).expect("color in palette").push(v);
        }
    }
    Ok(out)
}

/// `Ok(None)` for a b-coloring; otherwise the first color without a b-vertex
/// (an unused color counts as lacking one).
pub fn is_b_coloring(g: &Graph, c: &Coloring) -> Result<Option<u32>, ColoringError> {
    let bv = b_vertices(g, c)?;
    Ok(bv.iter().find(|(_, vs)| vs.is_empty()).map(|(&i, _)| i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Miss1Check {
    /// One b*-vertex per color `2..=k` that has one (smallest index).
    pub witnesses: BTreeMap<u32, usize>,
    /// First color `!= 1` without a b*-vertex.
    pub missing: Option<u32>,
}

impl Miss1Check {
    pub fn holds(&self) -> bool {
        self.missing.is_none()
    }
}

/// Miss-`d` check: every color other than `d` needs a vertex seeing every
/// color except `d` and its own. Class `d` may be empty.
pub fn miss_b_check(g: &Graph, c: &Coloring, d: u32) -> Result<Miss1Check, ColoringError> {
    require_proper(g, c)?;
    let mut witnesses = BTreeMap::new();
    let mut stamp = vec![0usize; c.k() as usize + 1];
    for v in 0..g.n() {
        let own = c.color(v);
        if own == d || witnesses.contains_key(&own) {
            continue;
        }
        if sees_all_but(g, c, v, d, &mut stamp, v + 1) {
            witnesses.insert(own, v);
        }
    }
    let missing = (1..=c.k()).find(|&i| i != d && !witnesses.contains_key(&i));
    Ok(Miss1Check { witnesses, missing })
}

pub fn is_miss1_b_coloring(g: &Graph, c: &Coloring) -> Result<Miss1Check, ColoringError> {
    miss_b_check(g, c, 1)
}

/// Recolors every vertex of class `i` with the smallest color absent from its
/// neighborhood, then relabels canonically onto `k - 1` colors.
pub fn eliminate_colorless_class(g: &Graph, c: &Coloring, i: u32) -> Result<Coloring, ColoringError> {
    let bv = b_vertices(g, c)?;
    if i == 0 || i > c.k() {
        return Err(ColoringError::ColorOutOfRange {
            vertex: 0,
            color: i,
            k: c.k(),
        });
    }
    if !bv[&i].is_empty() {
        return Err(ColoringError::HasBVertex(i));
    }
    let k = c.k();
    let mut colors = c.colors().to_vec();
    for v in c.class(i) {
        let mut present = vec![false; k as usize + 1];
        for &w in g.neighbors(v) {
            present[colors[w] as usize] = true;
        }
        let free = (1..=k)
            .find(|&d| d != i && !present[d as usize])
            .expect("a vertex without b-status misses some color");
        colors[v] = free;
    }
    let recolored = Coloring { colors, k };
    let canon = recolored.canonical();
    Ok(Coloring {
        colors: canon.colors,
        k: k - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn col(v: &[u32]) -> Coloring {
        Coloring::from_colors(v.to_vec()).unwrap()
    }
    fn path(n: u64) -> Graph {
        generate(Family::Path, &[n]).unwrap()
    }
    fn k(n: u64) -> Graph {
        generate(Family::Complete, &[n]).unwrap()
    }

    #[test]
    fn properness() {
        assert_eq!(is_proper(&k(2), &col(&[1, 2])).unwrap(), None);
        assert_eq!(is_proper(&k(2), &col(&[1, 1])).unwrap(), Some((0, 1)));
        assert_eq!(is_proper(&path(3), &col(&[1, 2, 1])).unwrap(), None);
        assert!(is_proper(&path(3), &col(&[1, 2])).is_err());
        assert!(Coloring::new(vec![0, 1], 2).is_err());
    }

    #[test]
    fn b_vertex_examples() {
        let bv = b_vertices(&k(3), &col(&[1, 2, 3])).unwrap();
        assert!(bv.values().all(|vs| vs.len() == 1));
        let bv = b_vertices(&path(5), &col(&[1, 2, 3, 1, 2])).unwrap();
        assert_eq!(bv[&1], vec![3]);
        assert_eq!(bv[&2], vec![1]);
        assert_eq!(bv[&3], vec![2]);
        let c4 = generate(Family::Cycle, &[4]).unwrap();
        let bv = b_vertices(&c4, &col(&[1, 2, 1, 2])).unwrap();
        assert_eq!(bv[&1].len(), 2);
        assert_eq!(bv[&2].len(), 2);
    }

    #[test]
    fn b_coloring_examples() {
        assert_eq!(is_b_coloring(&k(3), &col(&[1, 2, 3])).unwrap(), None);
        // v2 and v3 are b-vertices of colors 2 and 3; color 1 has none
        assert_eq!(is_b_coloring(&path(4), &col(&[1, 2, 3, 1])).unwrap(), Some(1));
        assert_eq!(is_b_coloring(&path(5), &col(&[1, 2, 3, 1, 2])).unwrap(), None);
        assert!(is_b_coloring(&k(2), &col(&[1, 1])).is_err());
        // with an unused color no vertex can see all others
        let c = Coloring::new(vec![1, 2], 3).unwrap();
        assert_eq!(is_b_coloring(&k(2), &c).unwrap(), Some(1));
    }

    #[test]
    fn miss1_examples() {
        let p4 = path(4);
        let chk = is_miss1_b_coloring(&p4, &col(&[2, 3, 2, 1])).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.witnesses[&2], 0);
        assert_eq!(chk.witnesses[&3], 1);
        // class 1 empty: a b-coloring on 2..=k
        let c = Coloring::new(vec![2, 3, 2, 3], 3).unwrap();
        assert!(is_miss1_b_coloring(&p4, &c).unwrap().holds());
        let shifted = c.relabel(|x| x - 1, 2).unwrap();
        assert_eq!(is_b_coloring(&p4, &shifted).unwrap(), None);
    }

    #[test]
    fn elimination() {
        let out = eliminate_colorless_class(&path(4), &col(&[1, 2, 3, 1]), 1).unwrap();
        assert_eq!(out.k(), 2);
        assert_eq!(is_proper(&path(4), &out).unwrap(), None);
        assert_eq!(out.colors(), &[1, 2, 1, 2]);
        assert_eq!(
            eliminate_colorless_class(&path(4), &col(&[1, 2, 3, 1]), 3),
            Err(ColoringError::HasBVertex(3))
        );
        let c = Coloring::new(vec![1, 2, 1, 2], 3).unwrap();
        let out = eliminate_colorless_class(&path(4), &c, 3).unwrap();
        assert_eq!(out.colors(), &[1, 2, 1, 2]);
        assert_eq!(out.k(), 2);
        for i in 1..=3 {
            assert_eq!(
                eliminate_colorless_class(&k(3), &col(&[1, 2, 3]), i),
                Err(ColoringError::HasBVertex(i))
            );
        }
    }

    #[test]
    fn text_round_trip() {
        let c = Coloring::parse("3 1\n2  1").unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(Coloring::parse(&c.to_text()).unwrap(), c);
        assert!(Coloring::parse("1 x").is_err());
        assert_eq!(col(&[3, 3, 1]).canonical().colors(), &[1, 1, 2]);
    }

    /// Every proper coloring of every graph on <= 5 vertices with k <= 4.
    #[test]
    fn b_coloring_implies_miss1_and_bvertex_shape() {
        for n in 1..=5 {
            for g in crate::graph::all_labeled_graphs(n) {
                for k in 1..=4u32 {
                    let total = (k as usize).pow(n as u32);
                    for code in 0..total {
                        let mut x = code;
                        let colors: Vec<u32> = (0..n)
                            .map(|_| {
                                let c = (x % k as usize) as u32 + 1;
                                x /= k as usize;
                                c
                            })
                            .collect();
                        let c = Coloring::new(colors, k).unwrap();
                        if is_proper(&g, &c).unwrap().is_some() {
                            continue;
                        }
                        let bv = b_vertices(&g, &c).unwrap();
                        for (&i, vs) in &bv {
                            for &v in vs {
                                assert_eq!(c.color(v), i);
                                let mut seen: Vec<u32> = g.neighbors(v).iter().map(|&w| c.color(w)).collect();
                                seen.sort_unstable();
                                seen.dedup();
                                assert_eq!(seen.len(), k as usize - 1);
                            }
                        }
                        if is_b_coloring(&g, &c).unwrap().is_none() {
                            assert!(is_miss1_b_coloring(&g, &c).unwrap().holds());
                        }
                    }
                }
            }
        }
    }
}
