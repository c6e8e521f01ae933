mod common;

use almostline::gen::gen_random;
use almostline::{load_topology, parse_topology, planarize, validate, Surface};
use common::{fixture, fixture_path};
use proptest::prelude::*;

fn fig1c_text() -> String {
    std::fs::read_to_string(fixture_path("fig1c.json")).unwrap()
}

#[test]
fn fixtures_validate() {
    for name in ["fig1a", "fig1c", "fig1a_plane_a", "fig1a_plane_b", "fig9", "fig10"] {
        let g = fixture(&format!("{name}.json"));
        assert!(validate(&g).is_ok(), "{name}");
    }
}

#[test]
fn json_round_trip() {
    let g = fixture("fig10.json");
    let again = load_topology(&g.to_json()).unwrap();
    assert_eq!(g.to_json(), again.to_json());
    assert_eq!(g.rotations(), again.rotations());
    assert!(matches!(again.surface(), Surface::Plane(f) if f == &["o", "b", "c"]));
}

#[test]
fn fig1c_shape() {
    let g = fixture("fig1c.json");
    assert_eq!((g.n(), g.edge_count(), g.p()), (5, 6, 2));
    assert_eq!((g.name(g.s()), g.name(g.t())), ("s", "t"));
    let c = &g.crossings()[0];
    assert_eq!((g.name(c.left), g.name(c.right)), ("v", "a"));
    let c = &g.crossings()[1];
    assert_eq!((g.name(c.left), g.name(c.right)), ("b", "v"));
}

#[test]
fn missing_rotation_entry() {
    let mut v: serde_json::Value = serde_json::from_str(&fig1c_text()).unwrap();
    v["rotation"]["v"].as_array_mut().unwrap().retain(|e| e[1] != "s");
    let text = v.to_string();
    let g = parse_topology(&text).unwrap();
    assert!(validate(&g).has("rotation incomplete"));
    assert!(load_topology(&text).is_err());
}

#[test]
fn crossing_at_endpoint() {
    let mut v: serde_json::Value = serde_json::from_str(&fig1c_text()).unwrap();
    v["crossings"][0] = serde_json::json!({"edge": ["s", "a"], "left": "a"});
    let g = parse_topology(&v.to_string()).unwrap();
    assert!(validate(&g).has("crossing edge incident to endpoint"));
}

#[test]
fn nonplanar_rotation() {
    let k4 = serde_json::json!({
        "vertices": ["s", "t", "a", "b"],
        "edges": [["s","t"],["s","a"],["s","b"],["t","a"],["t","b"],["a","b"]],
        "rotation": {
            "s": [["s","t"],["s","a"],["s","b"]],
            "t": [["t","s"],["t","a"],["t","b"]],
            "a": [["a","s"],["a","t"],["a","b"]],
            "b": [["b","s"],["b","t"],["b","a"]]
        },
        "crossing_edge": ["s","t"],
        "crossings": []
    });
    let g = parse_topology(&k4.to_string()).unwrap();
    assert!(validate(&g).has("nonplanar rotation system"));
}

#[test]
fn euler_on_planarization() {
    let g = fixture("fig1a.json");
    let pg = planarize(&g).unwrap();
    let (n, m, p) = (g.n(), g.edge_count(), g.p());
    assert_eq!(pg.vertex_count(), n + p);
    assert_eq!(pg.edge_count(), m + 2 * p);
    assert_eq!(pg.vertex_count() + pg.face_count(), pg.edge_count() + 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_graphs_round_trip(n in 4usize..30, seed in 0u64..10_000) {
        let g = gen_random(n, seed, false).unwrap();
        prop_assert!(validate(&g).is_ok());
        let again = load_topology(&g.to_json()).unwrap();
        prop_assert_eq!(g.to_json(), again.to_json());
        prop_assert_eq!(g.crossings(), again.crossings());
        let pg = planarize(&g).unwrap();
        prop_assert_eq!(pg.vertex_count() + pg.face_count(), pg.edge_count() + 2);
    }
}
