mod common;

use std::collections::BTreeSet;

use almostline::analysis::classify;
use almostline::gen::{gen_gk, gen_random};
use almostline::transform::{augment, build_lr, check_maximal, choose_external, safe_block_order, split, walk};
use almostline::TopoGraph;
use common::{fixture, names};
use proptest::prelude::*;

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|k| b[k..].iter().chain(&b[..k]).eq(a.iter())))
}

/// The rotation system of `g` is the restriction of that of `aug`, and the
/// crossings of `g` appear in `aug` in the same order.
fn extends(g: &TopoGraph, aug: &TopoGraph) -> bool {
    let id = |v: usize| aug.id(g.name(v)).unwrap();
    let same_rotations = (0..g.n()).all(|v| {
        let want: Vec<usize> = g.rotation(v).iter().map(|&w| id(w)).collect();
        let kept: Vec<usize> = aug.rotation(id(v)).iter().copied().filter(|w| want.contains(w)).collect();
        cyclic_eq(&want, &kept)
    });
    let mut rest = aug.crossings().iter();
    let ordered = g.crossings().iter().all(|c| rest.any(|d| d.left == id(c.left) && d.right == id(c.right)));
    same_rotations && ordered && (aug.s(), aug.t()) == (id(g.s()), id(g.t()))
}

#[test]
fn augment_rejects_inconsistent() {
    assert!(augment(&fixture("fig1c.json")).is_err());
}

#[test]
fn maximal_fixture_unchanged() {
    let g = fixture("fig1a.json");
    assert!(check_maximal(&g).maximal);
    let aug = augment(&g).unwrap();
    assert_eq!(aug.edge_count(), g.edge_count());
    assert!(extends(&g, &aug));
}

#[test]
fn fig9_walk() {
    let g = fixture("fig9.json");
    assert_eq!(names(&g, &walk(&g)).join(","), "s,e,d,c,b,a,t,g,h,i,h,j,k");
}

#[test]
fn fig10_side_graphs() {
    let dec = split(&fixture("fig10.json")).unwrap();
    let g = &dec.graph;
    assert_eq!(names(g, &dec.cycle), ["b", "c", "q", "d", "m", "k", "g", "h"]);
    let labels: Vec<usize> = dec.side_graphs.iter().map(|sg| sg.label).collect();
    assert_eq!(labels, (1..=8).collect::<Vec<_>>());
    let caps: Vec<usize> = dec.side_graphs.iter().filter(|sg| sg.is_cap).map(|sg| sg.label).collect();
    assert_eq!(caps, [4, 8]);
    let cap = &dec.side_graphs[3];
    let got: BTreeSet<String> = names(g, &cap.vertices).into_iter().collect();
    let want: BTreeSet<String> = ["d", "e", "t", "m"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
    for (i, sg) in dec.side_graphs.iter().enumerate() {
        let m = dec.cycle.len();
        assert_eq!(sg.edge, (dec.cycle[i], dec.cycle[(i + 1) % m]));
    }
}

#[test]
fn gk_splits() {
    for k in 2..=6 {
        let aug = augment(&gen_gk(k).unwrap()).unwrap();
        let ext = choose_external(&aug, &build_lr(&aug)).unwrap();
        let dec = split(&ext).unwrap();
        assert!(safe_block_order(&dec).is_ok(), "G_{k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn augment_postconditions(n in 4usize..50, seed in 0u64..100_000) {
        let g = gen_random(n, seed, true).unwrap();
        let aug = augment(&g).unwrap();
        prop_assert!(extends(&g, &aug));
        prop_assert!(classify(&aug).is_vertex_consistent());
        prop_assert!(check_maximal(&aug).maximal);
        let (n, m) = (aug.n(), aug.edge_count());
        prop_assert!(m + 6 == 3 * n || m + 5 == 3 * n);
        prop_assert_eq!(check_maximal(&aug).f4.is_some(), m + 6 == 3 * n);
        let again = augment(&aug).unwrap();
        prop_assert_eq!(again.edge_count(), m);
    }

    #[test]
    fn safe_blocks_cover_every_block(n in 4usize..50, seed in 0u64..100_000) {
        let g = gen_random(n, seed, true).unwrap();
        let aug = augment(&g).unwrap();
        prop_assume!(aug.p() > 0);
        let ext = choose_external(&aug, &build_lr(&aug)).unwrap();
        let dec = split(&ext).unwrap();
        let order = safe_block_order(&dec).unwrap();
        let mut seen = BTreeSet::new();
        for &(i, b) in &order {
            prop_assert!(seen.insert((i, b)));
            prop_assert_ne!(b, dec.side_graphs[i].tree.root);
        }
        let w = walk(&dec.graph);
        prop_assert!(dec.cycle.iter().all(|v| w.contains(v) || dec.outer_vertices.contains(v)));
    }
}
