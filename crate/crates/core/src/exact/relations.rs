//! Relations between chromatic and b-chromatic numbers of `G[H]`, `G[K_p]`
//! and `K_q[H]`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{b_spectrum, ExactError, SpectrumOptions, SpectrumReport};
use crate::graph::{generate, Family, Graph};
use crate::lexprod::{blow_up, lex_product};

/// Memoizes spectra by exact edge set.
#[derive(Default)]
pub struct SpectrumCache {
    map: HashMap<(usize, Vec<(usize, usize)>), SpectrumReport>,
}

impl SpectrumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spectrum(&mut self, g: &Graph, opts: SpectrumOptions) -> Result<SpectrumReport, ExactError> {
        let key = (g.n(), g.edges().collect::<Vec<_>>());
        if let Some(rep) = self.map.get(&key) {
            return Ok(rep.clone());
        }
        let rep = b_spectrum(g, opts)?;
        self.map.insert(key, rep.clone());
        Ok(rep)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub quantities: BTreeMap<String, Option<usize>>,
    pub clauses: Vec<Clause>,
}

impl RelationsReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

fn complete(n: usize) -> Graph {
    generate(Family::Complete, &[n as u64]).expect("complete graph")
}

/// Checks, with `h = chi(H)`, `g = chi(G)`, `p = chi_b(H)`, `q = chi_b(G)`:
///
/// 1. `chi_b(G[H]) >= chi_b(G[K_p]) >= p*q = chi_b(K_q[H])`
/// 2. `chi(G[H]) = chi(G[K_h]) <= g*h = chi(K_g[H]) <= p*q`
/// 3. `S_b(G[K_x])` is contained in `S_b(G[H])` for every `x` in `S_b(H)`
pub fn check_relations(
    g: &Graph,
    h: &Graph,
    opts: SpectrumOptions,
    cache: &mut SpectrumCache,
) -> Result<RelationsReport, ExactError> {
    let sg = cache.spectrum(g, opts)?;
    let sh = cache.spectrum(h, opts)?;
    let gh = lex_product(g, h).map_err(|_| ExactError::ZeroColors)?.graph;
    let sgh = cache.spectrum(&gh, opts)?;

    let (chi_h, chi_g, p, q) = (sh.chi, sg.chi, sh.chi_b, sg.chi_b);
    let mut qty = BTreeMap::new();
    qty.insert("chi(H)".to_string(), chi_h);
    qty.insert("chi(G)".to_string(), chi_g);
    qty.insert("chi_b(H)".to_string(), p);
    qty.insert("chi_b(G)".to_string(), q);
    qty.insert("chi_b(G[H])".to_string(), sgh.chi_b);
    qty.insert("chi(G[H])".to_string(), sgh.chi);

    let mut spectrum_of = |x: usize, left: bool| -> Result<SpectrumReport, ExactError> {
        let prod = if left {
            blow_up(g, x).expect("nonempty").graph
        } else {
            lex_product(&complete(x), h).expect("nonempty").graph
        };
        cache.spectrum(&prod, opts)
    };

    let chib_gkp = p.map(|p| spectrum_of(p, true)).transpose()?.and_then(|r| r.chi_b);
    let chib_kqh = q.map(|q| spectrum_of(q, false)).transpose()?.and_then(|r| r.chi_b);
    let chi_gkh = chi_h.map(|x| spectrum_of(x, true)).transpose()?.and_then(|r| r.chi);
    let chi_kgh = chi_g.map(|x| spectrum_of(x, false)).transpose()?.and_then(|r| r.chi);
    qty.insert("chi_b(G[K_p])".to_string(), chib_gkp);
    qty.insert("chi_b(K_q[H])".to_string(), chib_kqh);
    qty.insert("chi(G[K_h])".to_string(), chi_gkh);
    qty.insert("chi(K_g[H])".to_string(), chi_kgh);

    let mut clauses = Vec::new();

    let c1 = match (sgh.chi_b, chib_gkp, p, q, chib_kqh) {
        (Some(a), Some(b), Some(p), Some(q), Some(d)) => {
            let ok = a >= b && b >= p * q && p * q == d;
            (ok, format!("{a} >= {b} >= {}*{} = {} = {d}", p, q, p * q))
        }
        _ => (false, "undecided quantity".to_string()),
    };
    clauses.push(clause(
        "(1)",
        c1,
        [sgh.chi_b, chib_gkp, p, q, chib_kqh].iter().any(Option::is_none),
    ));

    let c2 = match (sgh.chi, chi_gkh, chi_g, chi_h, chi_kgh, p, q) {
        (Some(a), Some(b), Some(g), Some(h), Some(d), Some(p), Some(q)) => {
            let ok = a == b && b <= g * h && g * h == d && d <= p * q;
            (ok, format!("{a} = {b} <= {g}*{h} = {d} <= {}", p * q))
        }
        _ => (false, "undecided quantity".to_string()),
    };
    clauses.push(clause(
        "(2)",
        c2,
        [sgh.chi, chi_gkh, chi_g, chi_h, chi_kgh, p, q]
            .iter()
            .any(Option::is_none),
    ));

    // (3): decided only where both sides are fully decided.
    let mut undecided = !sh.unknown.is_empty() || !sgh.unknown.is_empty();
    let mut offending = Vec::new();
    for &x in &sh.spectrum {
        let sx = spectrum_of(x, true)?;
        undecided |= !sx.unknown.is_empty();
        for &y in &sx.spectrum {
            if !sgh.spectrum.contains(&y) && !sgh.unknown.contains(&y) {
                offending.push((x, y));
            }
        }
    }
    let detail = if offending.is_empty() {
        format!("S_b(G[H]) = {:?}", sgh.spectrum)
    } else {
        format!("(x, y) with y in S_b(G[K_x]) but not in S_b(G[H]): {offending:?}")
    };
    let verdict = if !offending.is_empty() {
        Verdict::Fail
    } else if undecided {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    clauses.push(Clause {
        name: "(3)".into(),
        verdict,
        detail,
    });

    Ok(RelationsReport {
        quantities: qty,
        clauses,
    })
}

fn clause(name: &str, (ok, detail): (bool, String), undecided: bool) -> Clause {
    let verdict = if undecided {
        Verdict::Inconclusive
    } else if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Clause {
        name: name.into(),
        verdict,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tree_t;

    #[test]
    fn p3_k2_passes() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let rep = check_relations(&p3, &complete(2), SpectrumOptions::default(), &mut SpectrumCache::new()).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn k2_k2_equalities() {
        let rep = check_relations(
            &complete(2),
            &complete(2),
            SpectrumOptions::default(),
            &mut SpectrumCache::new(),
        )
        .unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.quantities["chi_b(G[H])"], Some(4));
        assert_eq!(rep.quantities["chi_b(K_q[H])"], Some(4));
    }

    #[test]
    fn tree_t_clause_one_is_strict() {
        let rep = check_relations(
            &tree_t(),
            &complete(2),
            SpectrumOptions::default(),
            &mut SpectrumCache::new(),
        )
        .unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let q = &rep.quantities;
        assert!(q["chi_b(G[H])"].unwrap() >= 7);
        assert_eq!(q["chi_b(H)"].unwrap() * q["chi_b(G)"].unwrap(), 6);
    }
}
