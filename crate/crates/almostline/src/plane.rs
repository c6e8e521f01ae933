//! Planarization of a topological graph: crossing points become degree-4
//! dummy vertices, and faces are traced on a half-edge structure.

use std::collections::HashMap;

use thiserror::Error;

use crate::topo::{Surface, TopoGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarizeError {
    #[error("V-E+F = {euler}, expected 2")]
    NonPlanar { euler: i64 },
    #[error("planarization is not connected")]
    Disconnected,
    #[error("external face does not match any face")]
    ExternalFace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMark {
    Plain,
    /// Piece of `(s,t)` between crossing `i-1` and crossing `i` (`s` and `t`
    /// act as crossings `-1` and `p`).
    StFragment(usize),
    /// Half of the edge crossing `(s,t)` at dummy vertex `i`.
    CrossingFragment(usize),
}

/// Half-edge `h` of vertex `v` is `offset[v] + k`, pointing to `rot[v][k]`.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    n_real: usize,
    names: Vec<String>,
    rot: Vec<Vec<usize>>,
    offset: Vec<usize>,
    src: Vec<usize>,
    twin: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    st: Option<(usize, usize)>,
    external: Option<usize>,
}

impl PlaneGraph {
    /// Builds the half-edge structure of a rotation system given in clockwise
    /// order. Vertices `n_real..` are treated as dummies.
    pub fn from_rotation(
        names: Vec<String>,
        rot: Vec<Vec<usize>>,
        n_real: usize,
    ) -> Result<PlaneGraph, PlanarizeError> {
        let n = rot.len();
        let mut offset = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for list in &rot {
            offset.push(acc);
            acc += list.len();
        }
        offset.push(acc);
        let mut src = vec![0; acc];
        let mut index = HashMap::with_capacity(acc);
        for v in 0..n {
            for (k, &w) in rot[v].iter().enumerate() {
                src[offset[v] + k] = v;
                index.insert((v, w), offset[v] + k);
            }
        }
        let mut twin = vec![0; acc];
        for v in 0..n {
            for (k, &w) in rot[v].iter().enumerate() {
                twin[offset[v] + k] = *index
                    .get(&(w, v))
                    .ok_or(PlanarizeError::NonPlanar { euler: i64::MIN })?;
            }
        }
        let mut pg = PlaneGraph {
            n_real,
            names,
            rot,
            offset,
            src,
            twin,
            face_of: vec![usize::MAX; acc],
            faces: Vec::new(),
            st: None,
            external: None,
        };
        pg.trace_faces();
        if !pg.is_connected() {
            return Err(PlanarizeError::Disconnected);
        }
        let euler = n as i64 - (acc / 2) as i64 + pg.faces.len() as i64;
        if euler != 2 && !(n == 1 && acc == 0) {
            return Err(PlanarizeError::NonPlanar { euler });
        }
        Ok(pg)
    }

    fn trace_faces(&mut self) {
        for h0 in 0..self.src.len() {
            if self.face_of[h0] != usize::MAX {
                continue;
            }
            let f = self.faces.len();
            let mut walk = Vec::new();
            let mut h = h0;
            while self.face_of[h] == usize::MAX {
                self.face_of[h] = f;
                walk.push(h);
                h = self.next(h);
            }
            self.faces.push(walk);
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.rot.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.rot[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

impl PlaneGraph {
    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn real_count(&self) -> usize {
        self.n_real
    }

    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.n_real
    }

    pub fn edge_count(&self) -> usize {
        self.src.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.src.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn src(&self, h: usize) -> usize {
        self.src[h]
    }

    pub fn dst(&self, h: usize) -> usize {
        self.src[self.twin[h]]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    /// Next half-edge along the face: leave `dst(h)` towards the neighbour
    /// preceding `src(h)` in clockwise order.
    pub fn next(&self, h: usize) -> usize {
        let t = self.twin[h];
        let v = self.src[t];
        let deg = self.rot[v].len();
        let k = t - self.offset[v];
        self.offset[v] + (k + deg - 1) % deg
    }

    pub fn prev(&self, h: usize) -> usize {
        let v = self.src[h];
        let deg = self.rot[v].len();
        let k = h - self.offset[v];
        self.twin[self.offset[v] + (k + 1) % deg]
    }

    /// Half-edge from `v` to its `k`-th clockwise neighbour.
    pub fn half_edge(&self, v: usize, k: usize) -> usize {
        self.offset[v] + k
    }

    /// Index of `dst(h)` in the clockwise rotation of `src(h)`.
    pub fn rot_index(&self, h: usize) -> usize {
        h - self.offset[self.src[h]]
    }

    pub fn find_half_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.rot[u].iter().position(|&w| w == v).map(|k| self.offset[u] + k)
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_half_edges(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Vertices of face `f` in traversal order.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&h| self.src[h]).collect()
    }

    pub fn external_face(&self) -> Option<usize> {
        self.external
    }

    /// Endpoints `(s,t)` when built by [`planarize`].
    pub fn st(&self) -> Option<(usize, usize)> {
        self.st
    }

    pub fn crossing_count(&self) -> usize {
        self.rot.len() - self.n_real
    }

    /// Position of `v` on the chain `s, x0, .., x{p-1}, t`, if it lies on it.
    fn chain_pos(&self, v: usize) -> Option<usize> {
        let (s, t) = self.st?;
        if v == s {
            Some(0)
        } else if v == t {
            Some(self.crossing_count() + 1)
        } else if self.is_dummy(v) {
            Some(v - self.n_real + 1)
        } else {
            None
        }
    }

    pub fn mark(&self, h: usize) -> EdgeMark {
        let (a, b) = (self.src(h), self.dst(h));
        if let (Some(i), Some(j)) = (self.chain_pos(a), self.chain_pos(b)) {
            if i.abs_diff(j) == 1 {
                return EdgeMark::StFragment(i.min(j));
            }
        }
        if self.is_dummy(a) {
            EdgeMark::CrossingFragment(a - self.n_real)
        } else if self.is_dummy(b) {
            EdgeMark::CrossingFragment(b - self.n_real)
        } else {
            EdgeMark::Plain
        }
    }

    /// Faces left and right of `(s,t)` fragment `i`, as seen walking from `s`.
    pub fn fragment_faces(&self, i: usize) -> (usize, usize) {
        let (s, t) = self.st.expect("planarization of a topological graph");
        let p = self.crossing_count();
        let node = |k: usize| {
            if k == 0 {
                s
            } else if k == p + 1 {
                t
            } else {
                self.n_real + k - 1
            }
        };
        let (a, b) = (node(i), node(i + 1));
        let forward = self.find_half_edge(a, b).expect("fragment present");
        (self.face_of[self.twin[forward]], self.face_of[forward])
    }
}

/// Planarization of `g`; dummy vertex `n + i` stands for crossing `i`.
pub fn planarize(g: &TopoGraph) -> Result<PlaneGraph, PlanarizeError> {
    let n = g.n();
    let p = g.p();
    let (s, t) = (g.s(), g.t());
    let mut crossing_at = HashMap::with_capacity(2 * p);
    for (i, c) in g.crossings().iter().enumerate() {
        crossing_at.insert((c.left, c.right), i);
        crossing_at.insert((c.right, c.left), i);
    }
    let mut names: Vec<String> = g.names().to_vec();
    names.extend((0..p).map(|i| format!("x{i}")));
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(n + p);
    for v in 0..n {
        let list = g
            .rotation(v)
            .iter()
            .map(|&w| {
                if let Some(&i) = crossing_at.get(&(v, w)) {
                    n + i
                } else if p > 0 && v == s && w == t {
                    n
                } else if p > 0 && v == t && w == s {
                    n + p - 1
                } else {
                    w
                }
            })
            .collect();
        rot.push(list);
    }
    for (i, c) in g.crossings().iter().enumerate() {
        let prev = if i == 0 { s } else { n + i - 1 };
        let next = if i + 1 == p { t } else { n + i + 1 };
        rot.push(vec![prev, c.left, next, c.right]);
    }
    let mut pg = PlaneGraph::from_rotation(names, rot, n)?;
    pg.st = Some((s, t));
    if let Surface::Plane(face) = g.surface() {
        pg.external = Some(pg.match_face(face).ok_or(PlanarizeError::ExternalFace)?);
    }
    Ok(pg)
}

impl PlaneGraph {
    /// Face whose cyclic vertex sequence equals `names` (either direction).
    pub fn match_face(&self, names: &[String]) -> Option<usize> {
        let ids: Option<Vec<usize>> =
            names.iter().map(|x| self.names.iter().position(|m| m == x)).collect();
        let ids = ids?;
        let mut rev = ids.clone();
        rev.reverse();
        for want in [&ids, &rev] {
            for f in 0..self.faces.len() {
                if cyclic_eq(&self.face_vertices(f), want) {
                    return Some(f);
                }
            }
        }
        None
    }

    pub fn face_names(&self, f: usize) -> Vec<String> {
        self.face_vertices(f).into_iter().map(|v| self.names[v].clone()).collect()
    }
}

pub fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

/// Boundary walks of all faces as vertex sequences.
pub fn faces(pg: &PlaneGraph) -> Vec<Vec<usize>> {
    (0..pg.face_count()).map(|f| pg.face_vertices(f)).collect()
}
