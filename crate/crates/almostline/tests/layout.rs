mod common;

use std::collections::HashMap;

use almostline::gen::{gen_gk, gen_random};
use almostline::geom::{dist2, q, Point};
use almostline::layout::{barycentric, circle_points, draw, draw_augmented, LayoutError};
use almostline::{verify, Surface};
use common::{fixture, oracle_ok};
use proptest::prelude::*;

#[test]
fn fig1c_refused() {
    assert_eq!(draw(&fixture("fig1c.json")).unwrap_err(), LayoutError::Inconsistent("v".into()));
}

#[test]
fn fig1a_sphere_and_faces() {
    let g = fixture("fig1a.json");
    let d = draw(&g).unwrap();
    assert!(verify(&g, &d).ok());
    assert!(oracle_ok(&g, &d));
    assert_eq!(draw(&fixture("fig1a_plane_a.json")).unwrap_err(), LayoutError::ExternalFace);
    let b = fixture("fig1a_plane_b.json");
    let d = draw(&b).unwrap();
    assert!(verify(&b, &d).ok(), "{}", verify(&b, &d));
}

#[test]
fn fig10_plane() {
    let g = fixture("fig10.json");
    let d = draw(&g).unwrap();
    assert!(verify(&g, &d).ok());
}

#[test]
fn non_maximal_plane_drawn_or_undecided() {
    let g = gen_gk(3).unwrap();
    let pg = almostline::planarize(&g).unwrap();
    let f = pg.face_vertices(0).iter().map(|&v| pg.name(v).to_string()).collect();
    let plane = g.with_surface(Surface::Plane(f));
    match draw(&plane) {
        Ok(d) => assert!(verify(&plane, &d).ok()),
        Err(e) => assert_eq!(e, LayoutError::Undecided),
    }
}

#[test]
fn gk_drawings() {
    for k in 1..=6 {
        let g = gen_gk(k).unwrap();
        let (aug, d) = draw_augmented(&g).unwrap();
        assert!(verify(&aug, &d).ok(), "G_{k} augmented");
        let d = draw(&g).unwrap();
        assert!(oracle_ok(&g, &d), "G_{k}");
    }
}

#[test]
fn deterministic() {
    let g = gen_random(30, 7, true).unwrap();
    assert_eq!(draw(&g).unwrap().to_json(), draw(&g).unwrap().to_json());
}

#[test]
fn circle_points_distinct_convex() {
    let pts = circle_points(7);
    assert_eq!(pts.len(), 7);
    for i in 0..7 {
        let (a, b, c) = (&pts[i], &pts[(i + 1) % 7], &pts[(i + 2) % 7]);
        assert_ne!(almostline::geom::orient(a, b, c), q(0, 1));
    }
}

#[test]
fn barycentric_centre() {
    let corners = [(0, 0), (4, 0), (4, 4), (0, 4)];
    let fixed: HashMap<usize, Point> = corners.iter().enumerate().map(|(i, &(x, y))| (i, Point::from_ints(x, y))).collect();
    let mut adj: HashMap<usize, Vec<usize>> = (0..4).map(|i| (i, vec![(i + 1) % 4, (i + 3) % 4, 4])).collect();
    adj.insert(4, vec![0, 1, 2, 3]);
    let pos = barycentric(&adj, &fixed);
    assert_eq!(dist2(&pos[&4], &Point::from_ints(2, 2)), q(0, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn drawings_pass_oracle(n in 4usize..24, seed in 0u64..100_000) {
        let g = gen_random(n, seed, true).unwrap();
        let d = draw(&g).unwrap();
        prop_assert!(verify(&g, &d).ok());
        prop_assert!(oracle_ok(&g, &d));
    }
}
