//! Drawing an internally triangulated disk with a fixed convex boundary and
//! a prescribed crossing edge, by contracting edges down to the boundary and
//! then undoing the contractions one vertex at a time.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{orient, Point, Q};

use super::LayoutError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    S,
    T,
    L,
    R,
    N,
}

#[derive(Clone, Debug)]
struct State {
    rot: Vec<Vec<usize>>,
    cross: Vec<(usize, usize)>,
    s: usize,
    t: usize,
    /// Side of `(s,t)` each vertex must keep. A vertex keeps its side after
    /// its crossings are absorbed into `s` or `t`.
    side: Vec<Option<Class>>,
}

impl State {
    fn class(&self, v: usize) -> Class {
        if v == self.s {
            Class::S
        } else if v == self.t {
            Class::T
        } else {
            self.side[v].unwrap_or(Class::N)
        }
    }

    fn is_crossing(&self, a: usize, b: usize) -> bool {
        self.cross.iter().any(|&(l, r)| (l == a && r == b) || (l == b && r == a))
    }
}

/// Input to [`Engine::run`]: rotations of the disk without `(s,t)`
/// (empty lists for vertices outside it), the boundary with positions, and
/// the crossing sequence as `(left, right)` pairs.
pub(crate) struct Disk {
    pub rot: Vec<Vec<usize>>,
    pub fixed: Vec<Option<Point>>,
    /// Half-edges `a -> b` whose face is the outer face.
    pub outer: HashSet<(usize, usize)>,
    pub cross: Vec<(usize, usize)>,
    pub s: usize,
    pub t: usize,
}

pub(crate) struct Engine {
    state: State,
    fixed: Vec<bool>,
    anchor: Vec<Option<Point>>,
    outer: HashSet<(usize, usize)>,
    history: Vec<(usize, usize, State)>,
}

fn initial_sides(n: usize, cross: &[(usize, usize)]) -> Vec<Option<Class>> {
    let mut side = vec![None; n];
    for &(l, r) in cross {
        side[l] = Some(Class::L);
        side[r] = Some(Class::R);
    }
    side
}

fn rotated_from(list: &[usize], start: usize) -> Vec<usize> {
    let k = list.iter().position(|&x| x == start).expect("neighbour");
    let mut out = list[k..].to_vec();
    out.extend_from_slice(&list[..k]);
    out
}

impl Engine {
    /// Draws the disk. Returns positions for every vertex with a non-empty
    /// rotation or a fixed position.
    pub fn run(disk: Disk) -> Result<Vec<Option<Point>>, LayoutError> {
        let n = disk.rot.len();
        let mut e = Engine {
            state: State { side: initial_sides(n, &disk.cross), rot: disk.rot, cross: disk.cross, s: disk.s, t: disk.t },
            fixed: disk.fixed.iter().map(Option::is_some).collect(),
            anchor: disk.fixed.clone(),
            outer: disk.outer,
            history: Vec::new(),
        };
        e.contract_all()?;
        let mut pos = disk.fixed.clone();
        if !e.valid_everywhere(&pos) {
            return Err(LayoutError::Engine("boundary drawing is not valid".into()));
        }
        while let Some((u, v, before)) = e.history.pop() {
            e.state = before;
            let p = e.place(u, v, &pos).ok_or_else(|| {
                LayoutError::Engine(format!("no position for vertex {u} near {v}"))
            })?;
            pos[u] = Some(p);
        }
        debug_assert!(pos.len() == n);
        Ok(pos)
    }

    fn contract_all(&mut self) -> Result<(), LayoutError> {
        let mut frames: Vec<(Vec<(usize, usize)>, usize)> = Vec::new();
        let mut budget = 50 * self.state.rot.len() + 1000;
        loop {
            let Some(mut order) = self.pending() else {
                return Ok(());
            };
            order.sort_by_key(|&(u, v)| self.tier(u, v));
            frames.push((order, 0));
            loop {
                let Some((order, next)) = frames.last_mut() else {
                    return Err(LayoutError::Engine("no contractible edge".into()));
                };
                let found = order[*next..].iter().position(|&(u, v)| {
                    budget = budget.saturating_sub(1);
                    self.try_contract(u, v).is_some()
                });
                if budget == 0 {
                    return Err(LayoutError::Engine("no contractible edge".into()));
                }
                if let Some(i) = found {
                    let (u, v) = order[*next + i];
                    *next += i + 1;
                    let after = self.try_contract(u, v).expect("checked");
                    let before = std::mem::replace(&mut self.state, after);
                    self.history.push((u, v, before));
                    break;
                }
                frames.pop();
                if let Some((_, _, before)) = self.history.pop() {
                    self.state = before;
                }
            }
        }
    }

    /// Candidate merges `(u, v)` of the current state, or `None` when only
    /// fixed vertices are left.
    fn pending(&self) -> Option<Vec<(usize, usize)>> {
        let st = &self.state;
        let free: Vec<usize> = (0..st.rot.len()).filter(|&v| !self.fixed[v] && !st.rot[v].is_empty()).collect();
        if free.is_empty() {
            return None;
        }
        Some(free.iter().flat_map(|&u| st.rot[u].iter().map(move |&v| (u, v))).collect())
    }

    fn tier(&self, u: usize, v: usize) -> u8 {
        use Class::*;
        let (cu, cv) = (self.state.class(u), self.state.class(v));
        match (cu, cv) {
            (N, S | T) => 1,
            (N, _) => 0,
            (L, L) | (R, R) => 1,
            (L | R, N) => 2,
            _ => 3,
        }
    }

    /// State after merging `u` into `v`, if that keeps a valid instance.
    fn try_contract(&self, u: usize, v: usize) -> Option<State> {
        use Class::*;
        let st = &self.state;
        if self.fixed[u] {
            return None;
        }
        let ru = rotated_from(&st.rot[u], v);
        let rv = rotated_from(&st.rot[v], u);
        let (x, y) = (ru[1 % ru.len()], rv[1 % rv.len()]);
        if ru.len() < 3 || rv.len() < 2 || x == y || rv.last() != Some(&x) || ru.last() != Some(&y) {
            return None;
        }
        let common = ru.iter().filter(|w| rv.contains(w)).count();
        if common != 2 {
            return None;
        }
        let (cu, cv) = (st.class(u), st.class(v));
        let role = match (cu, cv) {
            (S, T) | (T, S) | (L, R) | (R, L) => return None,
            (S, _) | (_, S) => S,
            (T, _) | (_, T) => T,
            (N, c) | (c, N) => c,
            (c, _) => c,
        };
        let other = if cu == role { v } else { u };
        let mut cross = st.cross.clone();
        if role == S || role == T {
            let idx: Vec<usize> =
                (0..cross.len()).filter(|&i| cross[i].0 == other || cross[i].1 == other).collect();
            let k = idx.len();
            let ok = if role == S {
                idx.iter().enumerate().all(|(j, &i)| i == j)
            } else {
                idx.iter().enumerate().all(|(j, &i)| i == cross.len() - k + j)
            };
            if !ok {
                return None;
            }
            if role == S {
                cross.drain(..k);
            } else {
                cross.truncate(cross.len() - k);
            }
        }
        for c in cross.iter_mut() {
            if c.0 == u {
                c.0 = v;
            }
            if c.1 == u {
                c.1 = v;
            }
        }
        cross.dedup();
        let banned = match role {
            S => Some(st.t),
            T => Some(st.s),
            _ => None,
        };
        if let Some(b) = banned {
            if !cross.is_empty() && (ru.contains(&b) || rv.contains(&b)) {
                return None;
            }
        }
        let mut seen = HashSet::new();
        for &(a, b) in &cross {
            if a == b || !seen.insert((a, b)) {
                return None;
            }
        }
        for r in [x, y] {
            let merged = cross.iter().any(|&(a, b)| (a == v && b == r) || (a == r && b == v));
            if merged && !(st.is_crossing(u, r) && st.is_crossing(v, r)) {
                return None;
            }
        }
        let mut rot = st.rot.clone();
        let inner = &ru[2..ru.len() - 1];
        let mut new_v: Vec<usize> = rv[1..].to_vec();
        new_v.extend_from_slice(inner);
        rot[v] = new_v;
        for &a in inner {
            for w in rot[a].iter_mut() {
                if *w == u {
                    *w = v;
                }
            }
        }
        rot[x].retain(|&w| w != u);
        rot[y].retain(|&w| w != u);
        rot[u].clear();
        let s = if st.s == u { v } else { st.s };
        let t = if st.t == u { v } else { st.t };
        let mut side = st.side.clone();
        side[u] = None;
        side[v] = match role {
            L | R => Some(role),
            _ => None,
        };
        let next = State { rot, cross, s, t, side };
        if !self.ends_ok(&next) {
            return None;
        }
        Some(next)
    }

    /// A free end of `(s,t)` adjacent to the other end needs neighbours
    /// strictly on both sides of the line, right side first clockwise from
    /// the other end when at `s`.
    fn ends_ok(&self, st: &State) -> bool {
        if let (Some(ps), Some(pt)) = (&self.anchor[st.s], &self.anchor[st.t]) {
            let sided = (0..st.rot.len()).filter(|&z| !st.rot[z].is_empty()).all(|z| {
                let (Some(pz), c) = (&self.anchor[z], st.class(z)) else { return true };
                match c {
                    Class::L => orient(ps, pt, pz).is_positive(),
                    Class::R => orient(ps, pt, pz).is_negative(),
                    _ => true,
                }
            });
            if !sided {
                return false;
            }
        }
        [(st.s, st.t, Class::R, Class::L), (st.t, st.s, Class::L, Class::R)].into_iter().all(|(a, b, first, second)| {
            if !st.rot[a].contains(&b) {
                return true;
            }
            let r = rotated_from(&st.rot[a], b);
            let seq: Vec<Class> = r[1..].iter().map(|&w| st.class(w)).collect();
            if self.fixed[a] {
                let j = (0..r.len()).find(|&k| self.outer.contains(&(a, r[k]))).unwrap_or(seq.len());
                return !seq[..j].contains(&second) && !seq[j..].contains(&first);
            }
            let split = seq.iter().position(|&c| c == second).unwrap_or(seq.len());
            let cut = seq.iter().rposition(|&c| c == first).map_or(0, |i| i + 1);
            seq.len() >= 2 && cut <= split && seq[0] != second && seq[seq.len() - 1] != first
        })
    }

    /// Internal triangles at `z` are clockwise.
    fn corners_ok(&self, z: usize, pos: &[Option<Point>]) -> bool {
        let rot = &self.state.rot[z];
        let pz = pos[z].as_ref().expect("placed");
        (0..rot.len()).all(|k| {
            let (a, b) = (rot[k], rot[(k + 1) % rot.len()]);
            if self.outer.contains(&(z, a)) || rot.len() < 2 {
                return true;
            }
            let (pa, pb) = (pos[a].as_ref().expect("placed"), pos[b].as_ref().expect("placed"));
            orient(pz, pa, pb).is_negative()
        })
    }

    fn side_ok(&self, z: usize, pos: &[Option<Point>]) -> bool {
        let st = &self.state;
        let c = st.class(z);
        if c != Class::L && c != Class::R {
            return true;
        }
        let o = orient(pos[st.s].as_ref().expect("s"), pos[st.t].as_ref().expect("t"), pos[z].as_ref().expect("placed"));
        if c == Class::L { o.is_positive() } else { o.is_negative() }
    }

    /// The segment `st` properly crosses the first crossed edge.
    fn start_ok(&self, pos: &[Option<Point>]) -> bool {
        let st = &self.state;
        let Some(&(l, r)) = st.cross.first() else { return true };
        let p = |v: usize| pos[v].as_ref().expect("placed");
        let a = orient(p(l), p(r), p(st.s));
        let b = orient(p(l), p(r), p(st.t));
        !a.is_zero() && !b.is_zero() && a.is_positive() != b.is_positive()
    }

    fn active(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state.rot.len()).filter(|&v| !self.state.rot[v].is_empty())
    }

    fn valid_everywhere(&self, pos: &[Option<Point>]) -> bool {
        self.active().all(|z| pos[z].is_some())
            && self.active().all(|z| self.corners_ok(z, pos) && self.side_ok(z, pos))
            && self.start_ok(pos)
    }

    fn valid_near(&self, u: usize, v: usize, pos: &[Option<Point>]) -> bool {
        let st = &self.state;
        let sides = if u == st.s || u == st.t {
            self.active().all(|z| self.side_ok(z, pos))
        } else {
            self.side_ok(u, pos)
        };
        sides && self.corners_ok(u, pos) && self.corners_ok(v, pos) && self.start_ok(pos)
    }

    /// Position for `u`, whose contraction into `v` is being undone. Every
    /// condition on `u` is "strictly left of a directed line", so the
    /// feasible set is an open convex polygon.
    fn place(&self, u: usize, v: usize, pos: &[Option<Point>]) -> Option<Point> {
        let st = &self.state;
        let p = |z: usize| pos[z].clone().expect("placed");
        let mut lines: Vec<(usize, usize)> = Vec::new();
        let rot = &st.rot[u];
        for k in 0..rot.len() {
            lines.push((rot[(k + 1) % rot.len()], rot[k]));
        }
        if u == st.s || u == st.t {
            for z in self.active() {
                match (st.class(z), u == st.s) {
                    (Class::L, true) => lines.push((st.t, z)),
                    (Class::R, true) => lines.push((z, st.t)),
                    (Class::L, false) => lines.push((z, st.s)),
                    (Class::R, false) => lines.push((st.s, z)),
                    _ => {}
                }
            }
        } else {
            match st.class(u) {
                Class::L => lines.push((st.s, st.t)),
                Class::R => lines.push((st.t, st.s)),
                _ => {}
            }
        }
        if let Some(&(l0, r0)) = st.cross.first() {
            if u == st.t {
                lines.push((l0, r0));
            } else if u == l0 {
                lines.push((r0, st.t));
            } else if u == r0 {
                lines.push((st.t, l0));
            }
        }
        let lines: Vec<(Point, Point)> =
            lines.into_iter().filter(|&(a, b)| a != b && a != u && b != u).map(|(a, b)| (p(a), p(b))).collect();
        let inside = |q: &Point| lines.iter().all(|(a, b)| orient(a, b, q).is_positive());
        let mut poly = bounding_square(pos, &p(v));
        for (a, b) in &lines {
            poly = clip(&poly, a, b);
            if poly.is_empty() {
                return None;
            }
        }
        let mut c = Point::from_ints(0, 0);
        for q in &poly {
            c = c.add(q);
        }
        let c = c.scale(&(Q::one() / Q::from_integer(poly.len().into())));
        if !inside(&c) {
            return None;
        }
        let half = Q::new(BigInt::one(), BigInt::from(2));
        let slack: Vec<Q> = lines.iter().map(|(a, b)| orient(a, b, &c) * &half).collect();
        let central = |q: &Point| lines.iter().zip(&slack).all(|((a, b), m)| orient(a, b, q) >= *m);
        let mut rng = ChaCha8Rng::seed_from_u64((u as u64) << 32 | v as u64);
        let found = (0..512u64).find_map(|k| {
            let den = BigInt::one() << (k + 20);
            let round = |x: &Q| {
                let jitter: i64 = rng.gen_range(-(1 << 18)..(1 << 18));
                let z = (x * Q::from_integer(BigInt::one() << k)).round().to_integer() << 20u32;
                Q::new(z + jitter, den.clone())
            };
            let mut round = round;
            let q = Point::new(round(&c.x), round(&c.y));
            central(&q).then_some(q)
        });
        let q = found.unwrap_or(c);
        let mut trial = pos.to_vec();
        trial[u] = Some(q.clone());
        self.valid_near(u, v, &trial).then_some(q)
    }
}

/// Square around every placed point, with room to spare.
fn bounding_square(pos: &[Option<Point>], center: &Point) -> Vec<Point> {
    let mut r = Q::one();
    for q in pos.iter().flatten() {
        let d = q.sub(center).norm_inf();
        if d > r {
            r = d;
        }
    }
    let r = r * Q::from_integer(4.into());
    let (x, y) = (&center.x, &center.y);
    vec![
        Point::new(x - &r, y - &r),
        Point::new(x + &r, y - &r),
        Point::new(x + &r, y + &r),
        Point::new(x - &r, y + &r),
    ]
}

/// Part of the convex polygon `poly` on the closed left of `a -> b`.
fn clip(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let mut out = Vec::new();
    let m = poly.len();
    for i in 0..m {
        let (p, q) = (&poly[i], &poly[(i + 1) % m]);
        let (op, oq) = (orient(a, b, p), orient(a, b, q));
        if !op.is_negative() {
            out.push(p.clone());
        }
        if (op.is_positive() && oq.is_negative()) || (op.is_negative() && oq.is_positive()) {
            let t = &op / (&op - &oq);
            out.push(p.add(&q.sub(p).scale(&t)));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    if out.len() < 3 {
        out.clear();
    }
    out
}
