//! Independent checking of a straight-line drawing against a topological
//! graph, and area metrics.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::drawing::Drawing;
use crate::geom::{cmp_clockwise, seg_dist2, to_f64, dist2, Point, Q};
use crate::plane::{cyclic_eq, planarize};
use crate::topo::{Surface, TopoGraph};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub coincident: Vec<(String, String)>,
    pub vertex_on_edge: Vec<(String, (String, String))>,
    pub overlapping: Vec<((String, String), (String, String))>,
    pub unexpected_crossings: Vec<((String, String), (String, String))>,
    pub missing_crossings: Vec<(String, String)>,
    pub wrong_side: Vec<String>,
    pub order_ok: bool,
    pub rotation_mismatches: Vec<String>,
    /// `None` when the graph has no external face or earlier checks failed.
    pub external_face_ok: Option<bool>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.coincident.is_empty()
            && self.vertex_on_edge.is_empty()
            && self.overlapping.is_empty()
            && self.unexpected_crossings.is_empty()
            && self.missing_crossings.is_empty()
            && self.wrong_side.is_empty()
            && self.order_ok
            && self.rotation_mismatches.is_empty()
            && self.external_face_ok != Some(false)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "OK");
        }
        let mut parts = Vec::new();
        if let Some((a, b)) = self.coincident.first() {
            parts.push(format!("coincident vertices {a} {b}"));
        }
        if let Some((v, (a, b))) = self.vertex_on_edge.first() {
            parts.push(format!("vertex {v} on edge ({a},{b})"));
        }
        if let Some(((a, b), (c, d))) = self.overlapping.first() {
            parts.push(format!("edges ({a},{b}) and ({c},{d}) overlap"));
        }
        if let Some(((a, b), (c, d))) = self.unexpected_crossings.first() {
            parts.push(format!("unexpected crossing ({a},{b}) x ({c},{d})"));
        }
        if let Some((a, b)) = self.missing_crossings.first() {
            parts.push(format!("missing crossing ({a},{b})"));
        }
        if let Some(v) = self.wrong_side.first() {
            parts.push(format!("vertex {v} on the wrong side of the crossing edge"));
        }
        if !self.order_ok {
            parts.push("crossing order differs".into());
        }
        if let Some(v) = self.rotation_mismatches.first() {
            parts.push(format!("rotation differs at {v}"));
        }
        if self.external_face_ok == Some(false) {
            parts.push("external face differs".into());
        }
        write!(f, "FAIL: {}", parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct IPoint {
    x: BigInt,
    y: BigInt,
}

fn sub(a: &IPoint, b: &IPoint) -> IPoint {
    IPoint { x: &a.x - &b.x, y: &a.y - &b.y }
}

fn icross(a: &IPoint, b: &IPoint) -> BigInt {
    &a.x * &b.y - &a.y * &b.x
}

fn iorient(a: &IPoint, b: &IPoint, c: &IPoint) -> Ordering {
    icross(&sub(b, a), &sub(c, a)).cmp(&BigInt::zero())
}

fn idot_sign(a: &IPoint, b: &IPoint) -> Ordering {
    (&a.x * &b.x + &a.y * &b.y).cmp(&BigInt::zero())
}

fn on_closed(p: &IPoint, a: &IPoint, b: &IPoint) -> bool {
    iorient(a, b, p) == Ordering::Equal && idot_sign(&sub(p, a), &sub(p, b)) != Ordering::Greater
}

/// Scales all coordinates by a common denominator; every predicate used
/// here is invariant under positive scaling.
fn to_integer(coords: &[Point]) -> Vec<IPoint> {
    let mut den = BigInt::one();
    for p in coords {
        den = den.lcm(p.x.denom()).lcm(p.y.denom());
    }
    coords
        .iter()
        .map(|p| IPoint {
            x: p.x.numer() * (&den / p.x.denom()),
            y: p.y.numer() * (&den / p.y.denom()),
        })
        .collect()
}

struct BBox {
    lo: (BigInt, BigInt),
    hi: (BigInt, BigInt),
}

fn bbox(a: &IPoint, b: &IPoint) -> BBox {
    BBox {
        lo: (a.x.clone().min(b.x.clone()), a.y.clone().min(b.y.clone())),
        hi: (a.x.clone().max(b.x.clone()), a.y.clone().max(b.y.clone())),
    }
}

fn boxes_meet(p: &BBox, q: &BBox) -> bool {
    p.lo.0 <= q.hi.0 && q.lo.0 <= p.hi.0 && p.lo.1 <= q.hi.1 && q.lo.1 <= p.hi.1
}

/// Checks that `d` realises `g`: straight edges, `(s,t)` crossing exactly
/// the listed edges in order with the listed sides, no other contact,
/// matching rotations and, for plane graphs, the external face.
pub fn verify(g: &TopoGraph, d: &Drawing) -> VerifyReport {
    let pts = to_integer(&d.coords);
    let name = |v: usize| g.name(v).to_string();
    let ename = |e: (usize, usize)| (name(e.0), name(e.1));
    let mut rep = VerifyReport { order_ok: true, ..Default::default() };

    let mut seen: HashMap<&IPoint, usize> = HashMap::new();
    for (v, p) in pts.iter().enumerate() {
        if let Some(&w) = seen.get(p) {
            rep.coincident.push((name(w), name(v)));
        } else {
            seen.insert(p, v);
        }
    }

    let edges = g.edges();
    let boxes: Vec<BBox> = edges.iter().map(|&(a, b)| bbox(&pts[a], &pts[b])).collect();
    for v in 0..g.n() {
        let pb = bbox(&pts[v], &pts[v]);
        for (i, &(a, b)) in edges.iter().enumerate() {
            if v != a && v != b && boxes_meet(&pb, &boxes[i]) && on_closed(&pts[v], &pts[a], &pts[b]) {
                rep.vertex_on_edge.push((name(v), ename((a, b))));
            }
        }
    }

    let (s, t) = (g.s(), g.t());
    let is_st = |e: (usize, usize)| e == (s, t) || e == (t, s);
    let expected: HashMap<(usize, usize), usize> = g
        .crossings()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| [((c.left, c.right), i), ((c.right, c.left), i)])
        .collect();
    let mut hits: Vec<(Q, usize)> = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !boxes_meet(&boxes[i], &boxes[j]) {
                continue;
            }
            let (e, f) = (edges[i], edges[j]);
            let shared = [e.0, e.1].into_iter().find(|&x| x == f.0 || x == f.1);
            if let Some(c) = shared {
                let a = if e.0 == c { e.1 } else { e.0 };
                let b = if f.0 == c { f.1 } else { f.0 };
                let (pc, pa, pb) = (&pts[c], &pts[a], &pts[b]);
                if iorient(pc, pa, pb) == Ordering::Equal && idot_sign(&sub(pa, pc), &sub(pb, pc)) == Ordering::Greater {
                    rep.overlapping.push((ename(e), ename(f)));
                }
                continue;
            }
            let (a, b, c, dd) = (&pts[e.0], &pts[e.1], &pts[f.0], &pts[f.1]);
            let o = [iorient(a, b, c), iorient(a, b, dd), iorient(c, dd, a), iorient(c, dd, b)];
            if o.contains(&Ordering::Equal) || o[0] == o[1] || o[2] == o[3] {
                // Touching is reported through vertex_on_edge.
                continue;
            }
            let (st_edge, other) = if is_st(e) { (e, f) } else if is_st(f) { (f, e) } else { (e, f) };
            match (is_st(st_edge), expected.get(&other)) {
                (true, Some(&k)) => {
                    let (ps, pt) = (&pts[st_edge.0], &pts[st_edge.1]);
                    let (ps, pt) = if st_edge.0 == s { (ps, pt) } else { (pt, ps) };
                    let (pc, pd) = (&pts[other.0], &pts[other.1]);
                    let dir = sub(pd, pc);
                    let lam = Q::new(icross(&sub(pc, ps), &dir), icross(&sub(pt, ps), &dir));
                    hits.push((lam, k));
                }
                _ => rep.unexpected_crossings.push((ename(e), ename(f))),
            }
        }
    }
    let crossed: HashSet<usize> = hits.iter().map(|&(_, k)| k).collect();
    for (k, c) in g.crossings().iter().enumerate() {
        if !crossed.contains(&k) {
            rep.missing_crossings.push(ename((c.left, c.right)));
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    rep.order_ok = hits.iter().enumerate().all(|(i, &(_, k))| i == k) && hits.len() == g.p();
    for c in g.crossings() {
        if iorient(&pts[s], &pts[t], &pts[c.left]) != Ordering::Greater {
            rep.wrong_side.push(name(c.left));
        }
        if iorient(&pts[s], &pts[t], &pts[c.right]) != Ordering::Less {
            rep.wrong_side.push(name(c.right));
        }
    }
    rep.wrong_side.sort();
    rep.wrong_side.dedup();

    let dir = |v: usize, w: usize| {
        let q = sub(&pts[w], &pts[v]);
        Point::new(Q::from_integer(q.x), Q::from_integer(q.y))
    };
    for v in 0..g.n() {
        let rot = g.rotation(v);
        if rot.len() < 3 {
            continue;
        }
        let mut observed = rot.to_vec();
        observed.sort_by(|&a, &b| cmp_clockwise(&dir(v, a), &dir(v, b)));
        if !cyclic_eq(&observed, rot) {
            rep.rotation_mismatches.push(name(v));
        }
    }

    if let Surface::Plane(_) = g.surface() {
        if rep.ok() {
            rep.external_face_ok = Some(external_face_matches(g, &pts, &dir));
        }
    }
    rep
}

fn external_face_matches(g: &TopoGraph, pts: &[IPoint], dir: &dyn Fn(usize, usize) -> Point) -> bool {
    let Ok(pg) = planarize(g) else { return false };
    let low = (0..g.n())
        .min_by(|&a, &b| pts[a].y.cmp(&pts[b].y).then_with(|| pts[a].x.cmp(&pts[b].x)))
        .expect("nonempty");
    let rot = g.rotation(low);
    let half = |p: &Point| if p.x.is_positive() || (p.x.is_zero() && p.y.is_positive()) { 0 } else { 1 };
    let k = (0..rot.len()).find(|&k| {
        let a = dir(low, rot[k]);
        let b = dir(low, rot[(k + 1) % rot.len()]);
        rot.len() == 1 || (half(&a) == 0 && (half(&b) == 1 || cmp_clockwise(&b, &a) != Ordering::Greater))
    });
    match k {
        Some(k) => Some(pg.face_of(pg.half_edge(low, k))) == pg.external_face(),
        None => false,
    }
}

/// Size of a drawing after scaling so that the smallest vertex-vertex or
/// vertex-edge distance is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaMetrics {
    pub width: Q,
    pub height: Q,
    pub min_dist2: Q,
    /// `width * height / min_dist2`.
    pub normalized_area: Q,
}

impl AreaMetrics {
    pub fn log2_area(&self) -> f64 {
        let a = &self.normalized_area;
        let bits = a.numer().bits() as f64 - a.denom().bits() as f64;
        if bits.abs() < 1000.0 {
            to_f64(a).log2()
        } else {
            bits
        }
    }
}

pub fn area_metrics(g: &TopoGraph, d: &Drawing) -> AreaMetrics {
    let (lo, hi) = d.bbox();
    let mut best: Option<Q> = None;
    let mut consider = |x: Q| {
        if best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x);
        }
    };
    for v in 0..g.n() {
        for w in v + 1..g.n() {
            consider(dist2(&d.coords[v], &d.coords[w]));
        }
        for &(a, b) in g.edges() {
            if v != a && v != b {
                consider(seg_dist2(&d.coords[v], &d.coords[a], &d.coords[b]));
            }
        }
    }
    let min_dist2 = best.unwrap_or_else(Q::one);
    let width = &hi.x - &lo.x;
    let height = &hi.y - &lo.y;
    let normalized_area = if min_dist2.is_zero() { Q::zero() } else { &width * &height / &min_dist2 };
    AreaMetrics { width, height, min_dist2, normalized_area }
}
