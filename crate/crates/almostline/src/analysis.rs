//! Left/right classification and the drawability tests.

use crate::topo::TopoGraph;
use crate::transform::{build_lr, check_maximal, inconsistent_faces};

/// Left and right vertices with respect to the crossings of `(s,t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub is_left: Vec<bool>,
    pub is_right: Vec<bool>,
    /// Vertices that are both left and right, in crossing order from `s`.
    pub inconsistent: Vec<usize>,
}

impl ConsistencyReport {
    pub fn is_vertex_consistent(&self) -> bool {
        self.inconsistent.is_empty()
    }

    pub fn left_set(&self) -> Vec<usize> {
        (0..self.is_left.len()).filter(|&v| self.is_left[v]).collect()
    }

    pub fn right_set(&self) -> Vec<usize> {
        (0..self.is_right.len()).filter(|&v| self.is_right[v]).collect()
    }
}

pub fn classify(g: &TopoGraph) -> ConsistencyReport {
    let n = g.n();
    let mut is_left = vec![false; n];
    let mut is_right = vec![false; n];
    for c in g.crossings() {
        is_left[c.left] = true;
        is_right[c.right] = true;
    }
    let mut inconsistent = Vec::new();
    let mut listed = vec![false; n];
    for c in g.crossings() {
        for v in [c.left, c.right] {
            if is_left[v] && is_right[v] && !listed[v] {
                listed[v] = true;
                inconsistent.push(v);
            }
        }
    }
    ConsistencyReport { is_left, is_right, inconsistent }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Result {
    pub drawable: bool,
    pub witness: Option<usize>,
}

/// Drawable on the sphere iff every vertex is consistent.
pub fn test_s2(g: &TopoGraph) -> S2Result {
    let report = classify(g);
    let witness = report.inconsistent.first().copied();
    S2Result { drawable: witness.is_none(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Drawable,
    NotDrawable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertex(usize),
    /// An internal face of `G_LR`, as a vertex walk, holding both a left and
    /// a right vertex.
    Face(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R2Result {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Drawability in the plane with the prescribed external face. Decided only
/// for maximal graphs; otherwise the verdict is `Unknown`.
pub fn test_r2(g: &TopoGraph) -> R2Result {
    let s2 = test_s2(g);
    if let Some(v) = s2.witness {
        return R2Result { verdict: Verdict::NotDrawable, witness: Some(Witness::Vertex(v)) };
    }
    if !check_maximal(g).maximal {
        return R2Result { verdict: Verdict::Unknown, witness: None };
    }
    let lr = build_lr(g);
    let report = match inconsistent_faces(g, &lr) {
        Ok(r) => r,
        Err(_) => return R2Result { verdict: Verdict::Unknown, witness: None },
    };
    let bad = report
        .faces
        .iter()
        .enumerate()
        .find(|(i, f)| !f.consistent && Some(*i) != report.external);
    match bad {
        Some((_, f)) => R2Result {
            verdict: Verdict::NotDrawable,
            witness: Some(Witness::Face(f.vertices.clone())),
        },
        None => R2Result { verdict: Verdict::Drawable, witness: None },
    }
}
