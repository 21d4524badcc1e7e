//! Core results against direct, deliberately naive computations.

use std::collections::BTreeSet;

use specturan_core::count::{count_copies, is_free};
use specturan_core::enumerate::enumerate_graphs;
use specturan_core::spectral::{poly_eval, poly_grad};
use specturan_core::{canonical_form, FamilySpec, Generator, Hypergraph, WeightedSGraph};

fn pairs(n: usize) -> Vec<[u32; 2]> {
    let mut out = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            out.push([u, v]);
        }
    }
    out
}

fn graph_from_mask(n: usize, mask: u64) -> Hypergraph {
    let edges: Vec<[u32; 2]> = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Hypergraph::build(n, 2, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, (n - 1) as u32);
            out.push(q);
        }
    }
    out
}

/// The lexicographically least edge mask over all relabelings.
fn brute_canonical(g: &Hypergraph, perms: &[Vec<u32>]) -> Vec<[u32; 2]> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<[u32; 2]> = g
                .edges()
                .map(|e| {
                    let (a, b) = (p[e[0] as usize], p[e[1] as usize]);
                    [a.min(b), a.max(b)]
                })
                .collect();
            e.sort();
            e
        })
        .min()
        .unwrap()
}

#[test]
fn orderly_generation_matches_brute_force_dedup() {
    for n in 0..=6 {
        let perms = permutations(n);
        let m = pairs(n).len();
        let mut classes = BTreeSet::new();
        for mask in 0..1u64 << m {
            classes.insert(brute_canonical(&graph_from_mask(n, mask), &perms));
        }
        let generated: BTreeSet<Vec<[u32; 2]>> = enumerate_graphs(n, 2, |_| true, false, None)
            .unwrap()
            .map(|m| brute_canonical(&m.graph, &perms))
            .collect();
        let count = enumerate_graphs(n, 2, |_| true, false, None).unwrap().count();
        assert_eq!(count, classes.len(), "n={n}: duplicates or gaps");
        assert_eq!(generated, classes, "n={n}");
    }
}

#[test]
fn three_vertex_graphs_by_orbit_counting() {
    // Burnside over S_3 acting on the 8 edge sets
    let perms = permutations(3);
    let mut fixed = 0;
    for p in &perms {
        for mask in 0..8u64 {
            let g = graph_from_mask(3, mask);
            if g.relabel(p).unwrap() == g {
                fixed += 1;
            }
        }
    }
    assert_eq!(fixed / perms.len(), 4);
    assert_eq!(enumerate_graphs(3, 2, |_| true, false, None).unwrap().count(), 4);
}

#[test]
fn triangle_free_on_four_vertices_by_filtering() {
    let tri = FamilySpec::new(vec![Generator::Complete { n: 3, r: 2 }.build().unwrap()]).unwrap();
    let all: Vec<_> = enumerate_graphs(4, 2, |_| true, false, None).unwrap().collect();
    assert_eq!(all.len(), 11);
    let filtered = all.iter().filter(|m| is_free(&m.graph, &tri).unwrap()).count();
    let direct = enumerate_graphs(4, 2, |h| is_free(h, &tri).unwrap(), true, None).unwrap().count();
    assert_eq!(filtered, 7);
    assert_eq!(direct, 7);
}

#[test]
fn pentagon_containing_classes_on_five_vertices() {
    let c5 = FamilySpec::new(vec![Generator::Cycle { n: 5 }.build().unwrap()]).unwrap();
    let contains = |h: &Hypergraph| !is_free(h, &c5).unwrap();
    let with: BTreeSet<_> =
        enumerate_graphs(5, 2, contains, false, None).unwrap().map(|m| m.label).collect();
    let without: BTreeSet<_> =
        enumerate_graphs(5, 2, |h| is_free(h, &c5).unwrap(), true, None).unwrap().map(|m| m.label).collect();
    assert!(with.is_disjoint(&without));
    assert_eq!(with.len() + without.len(), 34);
    // brute force: classes of 5-vertex graphs holding a Hamiltonian cycle
    let perms = permutations(5);
    let mut classes = BTreeSet::new();
    for mask in 0..1u64 << 10 {
        let g = graph_from_mask(5, mask);
        let ham = perms.iter().any(|p| (0..5).all(|i| g.contains_edge(&sorted(p[i], p[(i + 1) % 5]))));
        if ham {
            classes.insert(canonical_form(&g));
        }
    }
    assert_eq!(with, classes);
}

fn sorted(a: u32, b: u32) -> [u32; 2] {
    [a.min(b), a.max(b)]
}

#[test]
fn counts_against_injections() {
    let c5 = Generator::Cycle { n: 5 }.build().unwrap();
    let k5 = Generator::Complete { n: 5, r: 2 }.build().unwrap();
    assert_eq!(count_copies(&c5, &k5).unwrap(), 12);
    let petersen = Hypergraph::build(
        10,
        2,
        [[0u32, 1], [1, 2], [2, 3], [3, 4], [0, 4], [0, 5], [1, 6], [2, 7], [3, 8], [4, 9], [5, 7], [7, 9], [6, 9], [6, 8], [5, 8]],
    )
    .unwrap();
    assert_eq!(count_copies(&c5, &petersen).unwrap(), 12);
}

#[test]
fn gradient_against_central_differences() {
    let c5 = Generator::Cycle { n: 5 }.build().unwrap();
    let l7 = Generator::C5Blowup { n: 7 }.build().unwrap();
    let w = specturan_core::count::derive_weighted(&c5, &l7).unwrap();
    let weighted = WeightedSGraph::new(4, 3, vec![(vec![0, 1, 2], 3), (vec![1, 2, 3], 5), (vec![0, 2, 3], 1)]).unwrap();
    for (w, x) in [
        (&w, vec![0.3, 0.5, 0.2, 0.7, 0.1, 0.4, 0.6]),
        (&weighted, vec![0.9, 0.2, 0.4, 0.3]),
    ] {
        let g = poly_grad(w, &x).unwrap();
        for i in 0..x.len() {
            let h = 1e-6;
            let (mut a, mut b) = (x.clone(), x.clone());
            a[i] += h;
            b[i] -= h;
            let fd = (poly_eval(w, &a).unwrap() - poly_eval(w, &b).unwrap()) / (2.0 * h);
            assert!((fd - g[i]).abs() <= 1e-6 * g[i].abs().max(1e-3), "i={i}: {fd} vs {}", g[i]);
        }
    }
}
