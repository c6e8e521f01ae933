use super::TransformError;
use crate::analysis::{classify, ConsistencyReport};
use crate::plane::{planarize, EdgeMark, PlaneGraph, PlanarizeError};
use crate::topo::{Surface, TopoGraph};

/// A subgraph carrying the rotations inherited from the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubGraph {
    pub present: Vec<bool>,
    pub rot: Vec<Vec<usize>>,
}

impl SubGraph {
    pub fn restrict(
        g: &TopoGraph,
        keep_v: impl Fn(usize) -> bool,
        keep_e: impl Fn(usize, usize) -> bool,
    ) -> SubGraph {
        let present: Vec<bool> = (0..g.n()).map(&keep_v).collect();
        let rot = (0..g.n())
            .map(|v| {
                if !present[v] {
                    return Vec::new();
                }
                g.rotation(v).iter().copied().filter(|&w| present[w] && keep_e(v, w)).collect()
            })
            .collect();
        SubGraph { present, rot }
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.present.len()).filter(|&v| self.present[v]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, list) in self.rot.iter().enumerate() {
            out.extend(list.iter().filter(|&&w| v < w).map(|&w| (v, w)));
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.present[a] && self.rot[a].contains(&b)
    }

    /// Half-edge structure on the present vertices; the returned vector maps
    /// local ids to host ids.
    pub fn plane(&self, g: &TopoGraph) -> Result<(PlaneGraph, Vec<usize>), PlanarizeError> {
        let verts = self.vertices();
        let mut local = vec![usize::MAX; self.present.len()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let names = verts.iter().map(|&v| g.name(v).to_string()).collect();
        let rot = verts.iter().map(|&v| self.rot[v].iter().map(|&w| local[w]).collect()).collect();
        let pg = PlaneGraph::from_rotation(names, rot, verts.len())?;
        Ok((pg, verts))
    }
}

/// The left/right subgraphs of a vertex-consistent graph.
#[derive(Clone, Debug)]
pub struct LRSubgraphs {
    pub report: ConsistencyReport,
    pub hat_l: SubGraph,
    pub hat_r: SubGraph,
    pub hat_lr: SubGraph,
    pub g_lr: SubGraph,
    pub hat_plus_lr: SubGraph,
    /// Edges joining a left and a right vertex that do not cross `(s,t)`.
    pub cap_edges: Vec<(usize, usize)>,
}

impl LRSubgraphs {
    pub fn is_aligned(&self, v: usize) -> bool {
        self.hat_plus_lr.present[v]
    }
}

pub fn build_lr(g: &TopoGraph) -> LRSubgraphs {
    let report = classify(g);
    let (s, t) = (g.s(), g.t());
    let st = |a: usize, b: usize| (a == s && b == t) || (a == t && b == s);
    let end = |v: usize| v == s || v == t;
    let (il, ir) = (&report.is_left, &report.is_right);
    let hat_l = SubGraph::restrict(g, |v| il[v] || end(v), |a, b| !st(a, b));
    let hat_r = SubGraph::restrict(g, |v| ir[v] || end(v), |a, b| !st(a, b));
    let same_side = |a: usize, b: usize| {
        !st(a, b) && ((il[a] || end(a)) && (il[b] || end(b)) || (ir[a] || end(a)) && (ir[b] || end(b)))
    };
    let aligned = |v: usize| il[v] || ir[v] || end(v);
    let hat_lr = SubGraph::restrict(g, aligned, same_side);
    let g_lr = SubGraph::restrict(g, aligned, |a, b| st(a, b) || same_side(a, b));
    let hat_plus_lr = SubGraph::restrict(g, aligned, |a, b| !st(a, b));
    let crossing: std::collections::HashSet<(usize, usize)> = g
        .crossings()
        .iter()
        .map(|c| (c.left.min(c.right), c.left.max(c.right)))
        .collect();
    let cap_edges = hat_plus_lr
        .edges()
        .into_iter()
        .filter(|&(a, b)| ((il[a] && ir[b]) || (ir[a] && il[b])) && !crossing.contains(&(a, b)))
        .collect();
    LRSubgraphs { report, hat_l, hat_r, hat_lr, g_lr, hat_plus_lr, cap_edges }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Labels the faces of the planarization so that two faces share a label iff
/// they lie in the same face of the subgraph formed by the half-edges
/// accepted by `keep`.
pub fn face_regions(pg: &PlaneGraph, keep: &dyn Fn(usize) -> bool) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..pg.face_count()).collect();
    for h in 0..pg.half_edge_count() {
        if !keep(h) {
            let (a, b) = (find(&mut parent, pg.face_of(h)), find(&mut parent, pg.face_of(pg.twin(h))));
            parent[a] = b;
        }
    }
    (0..pg.face_count()).map(|f| find(&mut parent, f)).collect()
}

/// Half-edge of the planarization that runs along subgraph half-edge `u -> w`.
pub(crate) fn lift_half_edge(g: &TopoGraph, pg: &PlaneGraph, u: usize, w: usize) -> usize {
    let (s, t, n, p) = (g.s(), g.t(), g.n(), g.p());
    let target = if p > 0 && u == s && w == t {
        n
    } else if p > 0 && u == t && w == s {
        n + p - 1
    } else {
        w
    };
    if let Some(h) = pg.find_half_edge(u, target) {
        return h;
    }
    let k = pg
        .rotation(u)
        .iter()
        .position(|&x| {
            pg.is_dummy(x) && {
                let c = g.crossings()[x - n];
                (c.left == u && c.right == w) || (c.right == u && c.left == w)
            }
        })
        .expect("subgraph edge present in planarization");
    pg.half_edge(u, k)
}

/// `keep` predicate selecting the half-edges of subgraph `sub`, with `(s,t)`
/// kept iff `with_st`.
pub(crate) fn keep_sub<'a>(
    g: &'a TopoGraph,
    pg: &'a PlaneGraph,
    sub: &'a SubGraph,
    with_st: bool,
) -> impl Fn(usize) -> bool + 'a {
    move |h| match pg.mark(h) {
        EdgeMark::Plain => sub.has_edge(pg.src(h), pg.dst(h)),
        EdgeMark::StFragment(_) => with_st,
        EdgeMark::CrossingFragment(i) => {
            let c = g.crossings()[i];
            sub.has_edge(c.left, c.right)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceConsistency {
    pub vertices: Vec<usize>,
    pub has_left: bool,
    pub has_right: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceConsistencyReport {
    pub faces: Vec<FaceConsistency>,
    /// Index of the unique inconsistent face.
    pub inconsistent: Option<usize>,
    /// Index of the face holding the external face of `g`, on the plane.
    pub external: Option<usize>,
    /// Face label (see [`face_regions`]) of every face of `G_LR`.
    pub labels: Vec<usize>,
}

/// Faces of `G_LR` with their consistency; errors unless exactly one face
/// holds both a left and a right vertex.
pub fn inconsistent_faces(g: &TopoGraph, lr: &LRSubgraphs) -> Result<FaceConsistencyReport, TransformError> {
    let (gp, map) = lr.g_lr.plane(g)?;
    let pg = planarize(g)?;
    let regions = face_regions(&pg, &keep_sub(g, &pg, &lr.g_lr, true));
    let mut faces = Vec::new();
    let mut labels = Vec::new();
    for f in 0..gp.face_count() {
        let vertices: Vec<usize> = gp.face_vertices(f).into_iter().map(|v| map[v]).collect();
        let has_left = vertices.iter().any(|&v| lr.report.is_left[v]);
        let has_right = vertices.iter().any(|&v| lr.report.is_right[v]);
        let h = gp.face_half_edges(f)[0];
        labels.push(regions[pg.face_of(lift_half_edge(g, &pg, map[gp.src(h)], map[gp.dst(h)]))]);
        faces.push(FaceConsistency { vertices, has_left, has_right, consistent: !(has_left && has_right) });
    }
    let bad: Vec<usize> = (0..faces.len()).filter(|&i| !faces[i].consistent).collect();
    if bad.len() != 1 {
        return Err(TransformError::ConsistencyViolated(bad.len()));
    }
    let external = pg.external_face().and_then(|e| labels.iter().position(|&l| l == regions[e]));
    Ok(FaceConsistencyReport { faces, inconsistent: Some(bad[0]), external, labels })
}

/// Chooses an external face inside the inconsistent face of `G_LR`. Inside
/// that face, a face lying in the quadrilateral face of `G - (s,t)` wins, then
/// one that touches no crossing.
pub fn choose_external(g: &TopoGraph, lr: &LRSubgraphs) -> Result<TopoGraph, TransformError> {
    let sphere = g.with_surface(Surface::Sphere);
    let report = inconsistent_faces(&sphere, lr)?;
    let label = report.labels[report.inconsistent.expect("checked")];
    let pg = planarize(&sphere)?;
    let regions = face_regions(&pg, &keep_sub(&sphere, &pg, &lr.g_lr, true));
    let candidates: Vec<usize> = (0..pg.face_count()).filter(|&f| regions[f] == label).collect();
    let hat = face_regions(&pg, &|h| !matches!(pg.mark(h), EdgeMark::StFragment(_)));
    let mut corners: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for (f, &region) in hat.iter().enumerate().take(pg.face_count()) {
        let list = corners.entry(region).or_default();
        list.extend(pg.face_vertices(f).into_iter().filter(|&v| !pg.is_dummy(v)));
    }
    let wide = |f: usize| {
        let mut vs = corners[&hat[f]].clone();
        vs.sort_unstable();
        vs.dedup();
        vs.len() > 3
    };
    let clean = |f: usize| pg.face_vertices(f).iter().all(|&v| !pg.is_dummy(v));
    let f = candidates
        .iter()
        .copied()
        .find(|&f| wide(f) && clean(f))
        .or_else(|| candidates.iter().copied().find(|&f| wide(f)))
        .or_else(|| candidates.iter().copied().find(|&f| clean(f)))
        .unwrap_or(candidates[0]);
    Ok(g.with_surface(Surface::Plane(pg.face_names(f))))
}
