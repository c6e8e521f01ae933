//! Coordinate assignment.
//!
//! The outer graph is drawn by an exact barycentric placement with its
//! external face on a convex polygon, which makes the separating cycle a
//! convex polygon. Everything inside the separating polygon is then drawn by
//! [`draw_inner`], which contracts interior edges until only the polygon is
//! left and re-inserts the vertices one by one, each at a small offset from
//! the vertex it was merged into.

mod engine;
mod params;
mod tutte;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::analysis::{test_r2, test_s2, Verdict};
use crate::drawing::Drawing;
use crate::geom::{orient, Point, Q};
use crate::plane::planarize;
use crate::topo::{Surface, TopoGraph};
use crate::transform::{augment, build_lr, check_maximal, choose_external, split, SplitDecomposition, TransformError};

use engine::{Disk, Engine};
pub use params::{compute_params, LayoutParams};
pub use tutte::{barycentric, circle_points};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("inconsistent input: vertex {0} is both left and right")]
    Inconsistent(String),
    #[error("{0}")]
    Transform(#[from] TransformError),
    #[error("external face passes through a crossing")]
    ExternalCrossing,
    #[error("outer graph is not triconnected")]
    NotTriconnected,
    #[error("unexpected face of size {0} inside the separating cycle")]
    Face(usize),
    #[error("inner drawing failed: {0}")]
    Engine(String),
    #[error("no straight-line drawing with this external face")]
    ExternalFace,
    #[error("drawability with this external face is undecided")]
    Undecided,
}

/// Straight-line drawing of `g` preserving its embedding on the sphere.
pub fn draw(g: &TopoGraph) -> Result<Drawing, LayoutError> {
    let (_, d) = draw_augmented(g)?;
    Ok(Drawing::new(g, d.coords))
}

/// Like [`draw`], but also returns the augmented graph (with the external
/// face that was drawn) and its drawing.
pub fn draw_augmented(g: &TopoGraph) -> Result<(TopoGraph, Drawing), LayoutError> {
    let report = test_s2(g);
    if !report.drawable {
        let v = report.witness.map(|w| g.name(w).to_string()).unwrap_or_default();
        return Err(LayoutError::Inconsistent(v));
    }
    let aug = augment(&g.with_surface(Surface::Sphere))?;
    let given = match g.surface() {
        Surface::Plane(face) => {
            let pg = planarize(&aug).map_err(TransformError::from)?;
            let f = pg.match_face(face).ok_or(LayoutError::Undecided)?;
            Some(pg.face_names(f))
        }
        Surface::Sphere => None,
    };
    if aug.p() == 0 {
        return fary(&aug, given);
    }
    let ext = match given {
        Some(face) => {
            let ext = aug.with_surface(Surface::Plane(face));
            match test_r2(&ext).verdict {
                Verdict::Drawable => {}
                _ if check_maximal(g).maximal => return Err(LayoutError::ExternalFace),
                _ => return Err(LayoutError::Undecided),
            }
            ext
        }
        None => choose_external(&aug, &build_lr(&aug))?,
    };
    let dec = split(&ext)?;
    let attempt = draw_outer(&dec).and_then(|outer| draw_inner(&dec, &outer));
    let pos = match attempt {
        Ok(pos) => pos,
        Err(_) => draw_whole(&ext)?,
    };
    let d = Drawing::new(&ext, pos);
    Ok((ext, d))
}

fn external_ids(g: &TopoGraph) -> Result<Vec<usize>, LayoutError> {
    let Surface::Plane(face) = g.surface() else {
        return Err(TransformError::NoExternalFace.into());
    };
    face.iter().map(|n| g.id(n).ok_or(LayoutError::ExternalCrossing)).collect()
}

type FaceWalks = (Vec<Vec<usize>>, HashMap<(usize, usize), usize>);

/// Faces of a rotation system as vertex walks, with the face of every
/// half-edge.
fn faces_of(rot: &[Vec<usize>]) -> FaceWalks {
    let mut face_of = HashMap::new();
    let mut faces = Vec::new();
    for a in 0..rot.len() {
        for &b in &rot[a] {
            if face_of.contains_key(&(a, b)) {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let (mut x, mut y) = (a, b);
            while !face_of.contains_key(&(x, y)) {
                face_of.insert((x, y), f);
                walk.push(x);
                let k = rot[y].iter().position(|&z| z == x).expect("symmetric rotation");
                let z = rot[y][(k + rot[y].len() - 1) % rot[y].len()];
                (x, y) = (y, z);
            }
            faces.push(walk);
        }
    }
    (faces, face_of)
}

fn signed_area2(pts: &[&Point]) -> Q {
    let m = pts.len();
    let origin = Point::from_ints(0, 0);
    (0..m).map(|i| orient(&origin, pts[i], pts[(i + 1) % m])).sum()
}

/// Convex drawing of the outer graph; the separating cycle becomes a convex
/// polygon.
pub fn draw_outer(dec: &SplitDecomposition) -> Result<HashMap<usize, Point>, LayoutError> {
    let g = &dec.graph;
    let ext = external_ids(g)?;
    let mut uniq = ext.clone();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != ext.len() {
        return Err(LayoutError::NotTriconnected);
    }
    let fixed: HashMap<usize, Point> = ext.iter().copied().zip(circle_points(ext.len())).collect();
    let edges: HashSet<(usize, usize)> = dec.outer_edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let mut rot = vec![Vec::new(); g.n()];
    let mut adj = HashMap::new();
    for &v in &dec.outer_vertices {
        rot[v] = g.rotation(v).iter().copied().filter(|&w| edges.contains(&(v, w))).collect();
        adj.insert(v, rot[v].clone());
    }
    let pos = barycentric(&adj, &fixed);
    let (faces, _) = faces_of(&rot);
    let ext_set: HashSet<usize> = ext.iter().copied().collect();
    let mut external_seen = false;
    for f in &faces {
        let pts: Vec<&Point> = f.iter().map(|v| &pos[v]).collect();
        let is_ext = !external_seen
            && f.len() == ext.len()
            && f.iter().all(|v| ext_set.contains(v))
            && signed_area2(&pts) > Q::from_integer(0.into());
        if is_ext {
            external_seen = true;
            continue;
        }
        let m = f.len();
        let convex = (0..m).all(|i| orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m]) < Q::from_integer(0.into()));
        if !convex {
            return Err(LayoutError::NotTriconnected);
        }
    }
    Ok(pos)
}

/// Builds the engine input for the vertices in `members`; `fixed` must be
/// the boundary of their outer face.
fn build_disk(g: &TopoGraph, members: &[bool], fixed: &HashMap<usize, Point>) -> Result<Disk, LayoutError> {
    let (s, t) = (g.s(), g.t());
    let is_st = |a: usize, b: usize| (a == s && b == t) || (a == t && b == s);
    let mut rot: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            if !members[v] {
                return Vec::new();
            }
            g.rotation(v).iter().copied().filter(|&w| members[w] && !is_st(v, w)).collect()
        })
        .collect();
    let mut cross: Vec<(usize, usize)> = g.crossings().iter().map(|c| (c.left, c.right)).collect();
    let (faces, face_of) = faces_of(&rot);
    let mut outer_face = None;
    for (i, f) in faces.iter().enumerate() {
        if f.len() == fixed.len() && f.iter().all(|v| fixed.contains_key(v)) {
            let pts: Vec<&Point> = f.iter().map(|v| &fixed[v]).collect();
            if signed_area2(&pts) > Q::from_integer(0.into()) {
                outer_face = Some(i);
            }
        }
    }
    let outer_face = outer_face.ok_or(LayoutError::Face(0))?;
    for (i, f) in faces.iter().enumerate() {
        if i == outer_face || f.len() == 3 {
            continue;
        }
        if f.len() != 4 {
            return Err(LayoutError::Face(f.len()));
        }
        split_quad(&mut rot, &mut cross, f)?;
    }
    let outer = face_of.iter().filter(|&(_, &f)| f == outer_face).map(|(&h, _)| h).collect();
    let mut fixed_vec = vec![None; g.n()];
    for (&v, p) in fixed {
        fixed_vec[v] = Some(p.clone());
    }
    Ok(Disk { rot, fixed: fixed_vec, outer, cross, s, t })
}

/// Adds a crossing diagonal to the quadrilateral between two consecutive
/// crossed edges.
fn split_quad(rot: &mut [Vec<usize>], cross: &mut Vec<(usize, usize)>, f: &[usize]) -> Result<(), LayoutError> {
    let in_face = |a: usize, b: usize| {
        (0..4).any(|i| {
            let (x, y) = (f[i], f[(i + 1) % 4]);
            (x == a && y == b) || (x == b && y == a)
        })
    };
    let i = (1..cross.len())
        .find(|&i| in_face(cross[i - 1].0, cross[i - 1].1) && in_face(cross[i].0, cross[i].1))
        .ok_or(LayoutError::Face(4))?;
    let (a, b) = (cross[i - 1].0, cross[i].1);
    if a == cross[i].0 || b == cross[i - 1].1 || rot[a].contains(&b) {
        return Err(LayoutError::Face(4));
    }
    for (x, y) in [(a, b), (b, a)] {
        let j = f.iter().position(|&z| z == x).expect("corner");
        let succ = f[(j + 1) % 4];
        let k = rot[x].iter().position(|&z| z == succ).expect("face edge");
        rot[x].insert(k + 1, y);
    }
    cross.insert(i, (a, b));
    Ok(())
}

/// Draws the inside of the separating polygon, given the outer drawing.
pub fn draw_inner(dec: &SplitDecomposition, outer: &HashMap<usize, Point>) -> Result<Vec<Point>, LayoutError> {
    let g = &dec.graph;
    let outer_set: HashSet<usize> = dec.outer_vertices.iter().copied().collect();
    let members: Vec<bool> = (0..g.n()).map(|v| dec.on_cycle(v) || !outer_set.contains(&v)).collect();
    let fixed: HashMap<usize, Point> = dec.cycle.iter().map(|&v| (v, outer[&v].clone())).collect();
    let disk = build_disk(g, &members, &fixed)?;
    let inner = Engine::run(disk)?;
    (0..g.n())
        .map(|v| {
            inner[v]
                .clone()
                .or_else(|| outer.get(&v).cloned())
                .ok_or_else(|| LayoutError::Engine(format!("vertex {} not placed", g.name(v))))
        })
        .collect()
}

/// Draws the whole graph with the engine, fixing only the external face.
fn draw_whole(g: &TopoGraph) -> Result<Vec<Point>, LayoutError> {
    let ext = external_ids(g)?;
    let fixed: HashMap<usize, Point> = ext.iter().copied().zip(circle_points(ext.len())).collect();
    let disk = build_disk(g, &vec![true; g.n()], &fixed)?;
    let pos = Engine::run(disk)?;
    pos.into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| LayoutError::Engine(format!("vertex {} not placed", g.name(v)))))
        .collect()
}

/// Planar case: a barycentric drawing of the triangulation, with `face` or
/// else any triangle outside.
fn fary(aug: &TopoGraph, face: Option<Vec<String>>) -> Result<(TopoGraph, Drawing), LayoutError> {
    let n = aug.n();
    if n <= 2 {
        let pos: Vec<Point> = (0..n).map(|i| Point::from_ints(i as i64, 0)).collect();
        return Ok((aug.clone(), Drawing::new(aug, pos)));
    }
    let pg = planarize(aug).map_err(TransformError::from)?;
    let names = match face {
        Some(names) => names,
        None => {
            let f = (0..pg.face_count()).find(|&f| pg.face_vertices(f).len() == 3).ok_or(LayoutError::Face(0))?;
            pg.face_names(f)
        }
    };
    let g = aug.with_surface(Surface::Plane(names));
    let ext = external_ids(&g)?;
    let fixed: HashMap<usize, Point> = ext.iter().copied().zip(circle_points(ext.len())).collect();
    let adj: HashMap<usize, Vec<usize>> = (0..n).map(|v| (v, g.rotation(v).to_vec())).collect();
    let pos = barycentric(&adj, &fixed);
    let coords = (0..n).map(|v| pos[&v].clone()).collect();
    let d = Drawing::new(&g, coords);
    Ok((g, d))
}
