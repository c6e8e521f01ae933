#![allow(dead_code)]

use std::path::PathBuf;

use almostline::gen::gen_random;
use almostline::geom::{Point, Q};
use almostline::{load_topology, Drawing, TopoGraph};
use num_traits::{Signed, Zero};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> TopoGraph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    load_topology(&text).expect("fixture loads")
}

/// Random consistent instance number `seed` of the end-to-end suite.
pub fn suite_instance(seed: u64) -> TopoGraph {
    gen_random(4 + (seed as usize % 47), seed, true).expect("generator succeeds")
}

pub fn names(g: &TopoGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

fn sub(a: &Point, b: &Point) -> (Q, Q) {
    (&a.x - &b.x, &a.y - &b.y)
}

fn cross(u: &(Q, Q), v: &(Q, Q)) -> Q {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn dot(u: &(Q, Q), v: &(Q, Q)) -> Q {
    &u.0 * &v.0 + &u.1 * &v.1
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    let between = |x: &Q, l: &Q, r: &Q| (l <= x && x <= r) || (r <= x && x <= l);
    cross(&sub(b, a), &sub(p, a)).is_zero() && between(&p.x, &a.x, &b.x) && between(&p.y, &a.y, &b.y)
}

/// Parameter along `a -> b` of a crossing with `c -> d` interior to both
/// segments.
fn interior_hit(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Q> {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let ca = sub(c, a);
    let t = cross(&ca, &s) / &den;
    let u = cross(&ca, &r) / &den;
    let open = |x: &Q| x.is_positive() && *x < Q::from_integer(1.into());
    (open(&t) && open(&u)).then_some(t)
}

/// `x` lies strictly inside the clockwise sweep from direction `a` to `b`.
fn inside_sweep(a: &(Q, Q), b: &(Q, Q), x: &(Q, Q)) -> bool {
    let c = cross(a, b);
    if c.is_negative() {
        cross(a, x).is_negative() && cross(x, b).is_negative()
    } else if c.is_positive() {
        !(cross(a, x).is_positive() && cross(x, b).is_positive())
    } else {
        cross(a, x).is_negative()
    }
}

/// Brute-force check that `d` is an embedding-preserving straight-line
/// drawing of the sphere graph `g`.
pub fn oracle_ok(g: &TopoGraph, d: &Drawing) -> bool {
    let p = &d.coords;
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            if p[i] == p[j] {
                return false;
            }
        }
    }
    let edges = g.edges();
    for v in 0..n {
        for &(a, b) in edges {
            if v != a && v != b && on_segment(&p[v], &p[a], &p[b]) {
                return false;
            }
        }
    }
    let (s, t) = (g.s(), g.t());
    let mut hits = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            let shared = [a, b].into_iter().find(|&x| x == c || x == e);
            if let Some(m) = shared {
                let x = if a == m { b } else { a };
                let y = if c == m { e } else { c };
                let (u, w) = (sub(&p[x], &p[m]), sub(&p[y], &p[m]));
                if cross(&u, &w).is_zero() && dot(&u, &w).is_positive() {
                    return false;
                }
                continue;
            }
            let st_pair = |x: usize, y: usize| (x == s && y == t) || (x == t && y == s);
            let (other, hit) = if st_pair(a, b) {
                ((c, e), interior_hit(&p[s], &p[t], &p[c], &p[e]))
            } else if st_pair(c, e) {
                ((a, b), interior_hit(&p[s], &p[t], &p[a], &p[b]))
            } else {
                if interior_hit(&p[a], &p[b], &p[c], &p[e]).is_some() {
                    return false;
                }
                continue;
            };
            let Some(lam) = hit else { continue };
            let k = g.crossings().iter().position(|cr| {
                (cr.left, cr.right) == other || (cr.right, cr.left) == other
            });
            match k {
                Some(k) => hits.push((lam, k)),
                None => return false,
            }
        }
    }
    hits.sort_by(|x, y| x.0.cmp(&y.0));
    if hits.len() != g.p() || hits.iter().enumerate().any(|(i, &(_, k))| i != k) {
        return false;
    }
    let st = sub(&p[t], &p[s]);
    for c in g.crossings() {
        if !cross(&st, &sub(&p[c.left], &p[s])).is_positive() || !cross(&st, &sub(&p[c.right], &p[s])).is_negative() {
            return false;
        }
    }
    for v in 0..n {
        let rot = g.rotation(v);
        if rot.len() < 3 {
            continue;
        }
        let dirs: Vec<(Q, Q)> = rot.iter().map(|&w| sub(&p[w], &p[v])).collect();
        for i in 0..dirs.len() {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % dirs.len()]);
            if dirs.iter().enumerate().any(|(j, x)| j != i && j != (i + 1) % dirs.len() && inside_sweep(a, b, x)) {
                return false;
            }
        }
    }
    true
}

/// Drawing with the given integer coordinates.
pub fn grid_drawing(g: &TopoGraph, xy: &[(i64, i64)]) -> Drawing {
    Drawing::new(g, xy.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
}
