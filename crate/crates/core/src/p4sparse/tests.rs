use super::*;
use crate::coloring::{is_b_coloring, Coloring};
use crate::exact::{b_spectrum, exists_b_coloring, Budget, Solve, SpectrumOptions};
use crate::graph::{generate, is_p4_sparse, nonisomorphic_graphs, Family, Graph};
use crate::lexprod::blow_up;
use crate::reference::for_each_partition;

fn check_outcome(g: &Graph, l: usize, psi: &Coloring, e: u32) -> DescentOutcome {
    let product = blow_up(g, l).unwrap().graph;
    let out = descend_p4sparse(g, l, psi, e).unwrap_or_else(|err| panic!("{g:?} l={l} psi={psi:?} e={e}: {err}"));
    match &out {
        DescentOutcome::Reduced { coloring, .. } => {
            assert_eq!(coloring.k() + 1, psi.k());
            assert_eq!(is_b_coloring(&product, coloring).unwrap(), None);
        }
        DescentOutcome::Clique { certificate, .. } => {
            assert!(certificate.verify(&product, psi.k() as usize));
        }
    }
    out
}

#[test]
fn k4_gives_certificate() {
    let k4 = generate(Family::Complete, &[4]).unwrap();
    let psi = Coloring::new(vec![1, 2, 3, 4], 4).unwrap();
    let out = check_outcome(&k4, 1, &psi, 1);
    assert!(matches!(out, DescentOutcome::Clique { ref certificate, .. } if certificate.size() == 4));
}

#[test]
fn thick_spider_gives_certificate() {
    let s = generate(Family::Spider, &[4, 1]).unwrap();
    // C rainbow; each stable vertex takes its non-neighbor's color
    let psi = Coloring::new(vec![1, 2, 3, 4, 1, 2, 3, 4], 4).unwrap();
    assert_eq!(is_b_coloring(&s, &psi).unwrap(), None);
    for e in 1..=4 {
        let out = check_outcome(&s, 1, &psi, e);
        let DescentOutcome::Clique { certificate, .. } = out else {
            panic!("expected a certificate")
        };
        assert_eq!(certificate.vertices, vec![0, 1, 2, 3]);
    }
}

#[test]
fn rejects_bad_input() {
    let c5 = generate(Family::Cycle, &[5]).unwrap();
    let psi = Coloring::new(vec![1, 2, 1, 2, 3], 3).unwrap();
    assert!(matches!(
        descend_p4sparse(&c5, 1, &psi, 1),
        Err(crate::error::DescentError::NotP4Sparse(_))
    ));
    let p4 = generate(Family::Path, &[4]).unwrap();
    let not_b = Coloring::new(vec![1, 2, 1, 3], 3).unwrap();
    assert!(matches!(
        descend_p4sparse(&p4, 1, &not_b, 1),
        Err(crate::error::DescentError::NotBColoring(_))
    ));
    let ok = Coloring::new(vec![2, 1, 3, 2], 3).unwrap();
    assert!(descend_p4sparse(&p4, 1, &ok, 4).is_err());
    assert!(descend_p4sparse(&p4, 0, &ok, 1).is_err());
}

#[test]
fn stable_leaf_steps_recorded() {
    // a stable pair {2, 3} joined to the edge {0, 1}, blown up by K_2
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    let product = blow_up(&g, 2).unwrap().graph;
    let mut seen = false;
    for psi in all_b_colorings(&product) {
        for e in 1..=psi.k() {
            let out = check_outcome(&g, 2, &psi, e);
            seen |= out.trace().records.iter().any(|r| {
                matches!(
                    r,
                    TraceRecord::SReduction { .. }
                        | TraceRecord::Recolor {
                            rule: RecolorRule::StableLeaf,
                            ..
                        }
                )
            });
        }
    }
    assert!(seen);
}

#[test]
fn empty_trace_lift_is_identity() {
    let p4 = generate(Family::Path, &[4]).unwrap();
    let trace = ReductionTrace {
        graph_id: format!("{:016x}", p4.fingerprint()),
        n: 4,
        l: 1,
        k: 3,
        eliminated: 1,
        records: Vec::new(),
        final_vertices: vec![0, 1, 2, 3],
    };
    let gamma = Coloring::new(vec![1, 2, 1, 2], 2).unwrap();
    assert_eq!(lift_coloring(&p4, &trace, &gamma).unwrap(), gamma);
    let other = generate(Family::Path, &[5]).unwrap();
    assert!(lift_coloring(&other, &trace, &gamma).is_err());
}

#[test]
fn single_s_reduction_lift() {
    // stable leaf {0, 1} reduced to 0; vertex 1 copies it
    let g = Graph::empty(2);
    let trace = ReductionTrace {
        graph_id: format!("{:016x}", g.fingerprint()),
        n: 2,
        l: 2,
        k: 3,
        eliminated: 1,
        records: vec![TraceRecord::SReduction {
            step: 1,
            leaf: vec![0, 1],
            kept: 0,
            removed: vec![1],
        }],
        final_vertices: vec![0],
    };
    let gamma = Coloring::new(vec![2, 1], 2).unwrap();
    assert_eq!(lift_coloring(&g, &trace, &gamma).unwrap().colors(), &[2, 1, 2, 1]);
}

/// Every b-coloring of `g[K_l]` (as partitions), descended with every color.
fn all_b_colorings(product: &Graph) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_partition(product.n(), |cs, k| {
        let c = Coloring::new(cs.iter().map(|&x| x + 1).collect(), k).unwrap();
        if matches!(is_b_coloring(product, &c), Ok(None)) {
            out.push(c);
        }
    });
    out
}

fn small_p4_sparse(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(nonisomorphic_graphs)
        .filter(|g| is_p4_sparse(g).is_sparse())
        .collect()
}

#[test]
fn every_b_coloring_descends_small() {
    for (max_n, l) in [(6, 1), (4, 2)] {
        for g in small_p4_sparse(max_n) {
            let product = blow_up(&g, l).unwrap().graph;
            let chi = crate::reference::naive_chromatic_number(&product) as u32;
            for psi in all_b_colorings(&product) {
                for e in 1..=psi.k() {
                    let out = check_outcome(&g, l, &psi, e);
                    // perfect products: a certificate exactly at k = chi
                    assert_eq!(out.coloring().is_none(), psi.k() == chi, "{g:?} {psi:?}");
                }
            }
        }
    }
}

#[test]
fn spectra_are_intervals_and_descent_walks_them() {
    for l in 1..=2 {
        for g in small_p4_sparse(6) {
            let product = blow_up(&g, l).unwrap().graph;
            let rep = b_spectrum(&product, SpectrumOptions::default()).unwrap();
            let (chi, chi_b) = (rep.chi.unwrap(), rep.chi_b.unwrap());
            assert_eq!(rep.continuous, Some(true));
            let mut psi = Coloring::new(rep.witnesses[&chi_b].clone(), chi_b as u32).unwrap();
            for k in (chi + 1..=chi_b).rev() {
                assert_eq!(psi.k() as usize, k);
                let out = check_outcome(&g, l, &psi, 1);
                psi = out.coloring().expect("k above chi").clone();
            }
            let out = check_outcome(&g, l, &psi, 1);
            let DescentOutcome::Clique { certificate, .. } = out else {
                panic!("expected a certificate at chi")
            };
            assert_eq!(certificate.size(), chi);
            assert!(matches!(
                exists_b_coloring(&product, chi - 1, None, Budget::UNLIMITED),
                Ok(Solve::None) | Err(_)
            ));
        }
    }
}

#[test]
fn random_instances_descend_and_lift() {
    for seed in 0..40u64 {
        let n = 5 + seed % 4;
        let g = generate(Family::RandomP4Sparse, &[n, seed]).unwrap();
        for l in 1..=2 {
            let product = blow_up(&g, l).unwrap().graph;
            let Ok(opt) = crate::exact::b_chromatic_number(&product, Budget::nodes(2_000_000)) else {
                continue;
            };
            let Some(psi) = opt.witness().cloned() else { continue };
            check_outcome(&g, l, &psi, psi.k());
        }
    }
}

fn disjoint(a: &Graph, b: &Graph, join: bool) -> Graph {
    let mut e: Vec<(usize, usize)> = a.edges().collect();
    e.extend(b.edges().map(|(u, v)| (u + a.n(), v + a.n())));
    if join {
        for u in 0..a.n() {
            for v in 0..b.n() {
                e.push((u, a.n() + v));
            }
        }
    }
    Graph::from_edges(a.n() + b.n(), &e).unwrap()
}

/// Spider with clique `0..c`, stable set `c..2c` and the given head.
fn spider_with_head(c: usize, thick: bool, head: &Graph) -> Graph {
    let mut e = Vec::new();
    for i in 0..c {
        for j in 0..c {
            if i < j {
                e.push((i, j));
            }
            if (i == j) != thick {
                e.push((i, c + j));
            }
        }
        e.extend((0..head.n()).map(|h| (i, 2 * c + h)));
    }
    e.extend(head.edges().map(|(u, v)| (u + 2 * c, v + 2 * c)));
    Graph::from_edges(2 * c + head.n(), &e).unwrap()
}

/// P4-sparse graphs whose products have `chi_b > chi`, built from three
/// disjoint copies of `P_3`.
fn graphs_with_gaps() -> Vec<Graph> {
    let p3 = generate(Family::Path, &[3]).unwrap();
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let two = disjoint(&p3, &p3, false);
    let three = disjoint(&two, &p3, false);
    vec![
        three.clone(),
        disjoint(&three, &Graph::empty(1), false),
        disjoint(&Graph::empty(1), &three, true),
        disjoint(&two, &star, false),
        disjoint(&generate(Family::Complete, &[2]).unwrap(), &three, true),
        spider_with_head(2, false, &three),
        spider_with_head(3, true, &three),
    ]
}

#[test]
fn walks_through_real_intervals() {
    for g in graphs_with_gaps() {
        assert!(is_p4_sparse(&g).is_sparse());
        for l in 1..=2 {
            let product = blow_up(&g, l).unwrap().graph;
            let rep = b_spectrum(&product, SpectrumOptions::default()).unwrap();
            let chi = rep.chi.unwrap();
            assert_eq!(rep.continuous, Some(true));
            assert!(rep.chi_b.unwrap() > chi);
            for (&k, w) in rep.witnesses.iter().filter(|(&k, _)| k > chi) {
                // eliminate each color once, cycling the choice on the way down
                for first in 1..=k as u32 {
                    let mut psi = Coloring::new(w.clone(), k as u32).unwrap();
                    let mut e = first;
                    while psi.k() as usize > chi {
                        psi = check_outcome(&g, l, &psi, e).coloring().expect("above chi").clone();
                        e = e % psi.k() + 1;
                    }
                }
            }
        }
    }
}

#[test]
fn every_b_coloring_of_gap_graphs_descends() {
    for g in graphs_with_gaps().into_iter().filter(|g| g.n() <= 10) {
        let chi = crate::reference::naive_chromatic_number(&g) as u32;
        let mut reduced = 0;
        for psi in all_b_colorings(&g).into_iter().filter(|c| c.k() > chi) {
            for e in 1..=psi.k() {
                check_outcome(&g, 1, &psi, e);
                reduced += 1;
            }
        }
        assert!(reduced > 0);
    }
}
