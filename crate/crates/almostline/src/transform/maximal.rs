use crate::plane::{planarize, PlaneGraph};
use crate::topo::TopoGraph;

/// An edge that can be added without breaking almost-planarity: `a` and `b`
/// are inserted at clockwise rotation indices `ka` and `kb`. A crossing edge
/// becomes crossing number `crossing` with `a` on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AddableEdge {
    pub a: usize,
    pub ka: usize,
    pub b: usize,
    pub kb: usize,
    pub crossing: Option<usize>,
}

impl AddableEdge {
    pub fn apply(&self, g: &mut TopoGraph) {
        g.insert_edge(self.a, self.ka, self.b, self.kb, self.crossing);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalReport {
    pub maximal: bool,
    /// The unique quadrilateral face of `G - (s,t)` when `|E| = 3n-6`.
    pub f4: Option<Vec<usize>>,
}

/// Real-vertex corners of face `f`: `(vertex, insertion index)`.
pub(crate) fn corners(pg: &PlaneGraph, f: usize) -> Vec<(usize, usize)> {
    pg.face_half_edges(f)
        .iter()
        .filter(|&&h| !pg.is_dummy(pg.src(h)))
        .map(|&h| (pg.src(h), pg.rot_index(h) + 1))
        .collect()
}

pub(crate) fn first_plain(g: &TopoGraph, pg: &PlaneGraph) -> Option<AddableEdge> {
    (0..pg.face_count()).find_map(|f| plain_in_face(g, pg, f))
}

fn plain_in_face(g: &TopoGraph, pg: &PlaneGraph, f: usize) -> Option<AddableEdge> {
    let cs = corners(pg, f);
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let ((a, ka), (b, kb)) = (cs[i], cs[j]);
            if a != b && !g.has_edge(a, b) {
                return Some(AddableEdge { a, ka, b, kb, crossing: None });
            }
        }
    }
    None
}

/// First edge addable across fragment `i` of `(s,t)` accepted by `ok`.
pub(crate) fn crossing_at(
    g: &TopoGraph,
    pg: &PlaneGraph,
    i: usize,
    ok: &dyn Fn(usize, usize) -> bool,
) -> Option<AddableEdge> {
    let (fl, fr) = pg.fragment_faces(i);
    if fl == fr {
        return None;
    }
    let (s, t) = (g.s(), g.t());
    let left = corners(pg, fl);
    let right = corners(pg, fr);
    for &(a, ka) in &left {
        for &(b, kb) in &right {
            if a != b && ![s, t].contains(&a) && ![s, t].contains(&b) && !g.has_edge(a, b) && ok(a, b) {
                return Some(AddableEdge { a, ka, b, kb, crossing: Some(i) });
            }
        }
    }
    None
}

/// Every addable edge, one entry per pair of corners.
pub fn addable_edges(g: &TopoGraph) -> Vec<AddableEdge> {
    let pg = match planarize(g) {
        Ok(pg) => pg,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    for f in 0..pg.face_count() {
        let cs = corners(&pg, f);
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let ((a, ka), (b, kb)) = (cs[i], cs[j]);
                if a != b && !g.has_edge(a, b) {
                    out.push(AddableEdge { a, ka, b, kb, crossing: None });
                }
            }
        }
    }
    for i in 0..=g.p() {
        let (fl, fr) = pg.fragment_faces(i);
        if fl == fr {
            continue;
        }
        let (s, t) = (g.s(), g.t());
        for &(a, ka) in &corners(&pg, fl) {
            for &(b, kb) in &corners(&pg, fr) {
                if a != b && ![s, t].contains(&a) && ![s, t].contains(&b) && !g.has_edge(a, b) {
                    out.push(AddableEdge { a, ka, b, kb, crossing: Some(i) });
                }
            }
        }
    }
    out
}

pub fn check_maximal(g: &TopoGraph) -> MaximalReport {
    let pg = match planarize(g) {
        Ok(pg) => pg,
        Err(_) => return MaximalReport { maximal: false, f4: None },
    };
    let any = first_plain(g, &pg).is_some()
        || (0..=g.p()).any(|i| crossing_at(g, &pg, i, &|_, _| true).is_some());
    if any {
        return MaximalReport { maximal: false, f4: None };
    }
    MaximalReport { maximal: true, f4: quad_face(g) }
}

/// Faces of `G - (s,t)` as vertex walks, if that graph is connected.
pub(crate) fn hat_faces(g: &TopoGraph) -> Option<Vec<Vec<usize>>> {
    let (s, t) = (g.s(), g.t());
    let rot: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            g.rotation(v)
                .iter()
                .copied()
                .filter(|&w| !((v == s && w == t) || (v == t && w == s)))
                .collect()
        })
        .collect();
    let pg = PlaneGraph::from_rotation(g.names().to_vec(), rot, g.n()).ok()?;
    Some((0..pg.face_count()).map(|f| pg.face_vertices(f)).collect())
}

fn quad_face(g: &TopoGraph) -> Option<Vec<usize>> {
    hat_faces(g)?.into_iter().find(|f| f.len() == 4)
}
