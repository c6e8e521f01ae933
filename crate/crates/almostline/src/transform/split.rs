use std::collections::HashMap;

use super::blocks::{block_cut_tree, BlockCutTree};
use super::lr::{build_lr, face_regions, keep_sub, lift_half_edge, LRSubgraphs};
use super::TransformError;
use crate::plane::planarize;
use crate::topo::{Surface, TopoGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideGraph {
    /// Separating-cycle edge `(u,v)`, `u` first along the walk.
    pub edge: (usize, usize),
    /// Position of the edge on the separating cycle, counting from 1 at `s`.
    pub label: usize,
    /// Distinct vertices in walk order.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub is_cap: bool,
    pub tree: BlockCutTree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingEdges {
    pub side: usize,
    pub block: usize,
    pub cut: usize,
    pub e1: (usize, usize),
    pub e2: (usize, usize),
}

/// An internal face of `Ĝ⁺_LR` that is not an empty triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pocket {
    pub boundary: Vec<usize>,
    pub apex: Option<usize>,
    pub dummy_edges: Vec<(usize, usize)>,
    /// Vertices of the graph lying inside the face.
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    pub graph: TopoGraph,
    pub lr: LRSubgraphs,
    /// Separating cycle, oriented like the walk and starting at its vertex
    /// that comes first on the walk.
    pub cycle: Vec<usize>,
    pub outer_vertices: Vec<usize>,
    pub outer_edges: Vec<(usize, usize)>,
    pub inner_edges: Vec<(usize, usize)>,
    pub dummy_edges: Vec<(usize, usize)>,
    pub pockets: Vec<Pocket>,
    pub walk: Vec<usize>,
    pub side_graphs: Vec<SideGraph>,
    pub bounding: Vec<BoundingEdges>,
    /// Side graph owning each vertex not on the separating cycle.
    pub owner: HashMap<usize, usize>,
}

impl SplitDecomposition {
    pub fn on_cycle(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }

    pub fn removed(&self) -> Vec<usize> {
        self.pockets.iter().flat_map(|p| p.removed.iter().copied()).collect()
    }
}

/// Closed walk `s, ℓ_0..ℓ_{p-1}, t, r_{p-1}..r_0` with runs collapsed.
pub fn walk(g: &TopoGraph) -> Vec<usize> {
    let mut w = vec![g.s()];
    w.extend(g.crossings().iter().map(|c| c.left));
    w.push(g.t());
    w.extend(g.crossings().iter().rev().map(|c| c.right));
    w.dedup();
    while w.len() > 1 && w.first() == w.last() {
        w.pop();
    }
    w
}

pub fn split(g: &TopoGraph) -> Result<SplitDecomposition, TransformError> {
    if !matches!(g.surface(), Surface::Plane(_)) {
        return Err(TransformError::NoExternalFace);
    }
    let lr = build_lr(g);
    let (s, t) = (g.s(), g.t());
    let pg = planarize(g)?;
    let regions = face_regions(&pg, &keep_sub(g, &pg, &lr.hat_plus_lr, false));
    let outside = regions[pg.external_face().ok_or(TransformError::NoExternalFace)?];
    let (sub, map) = lr.hat_plus_lr.plane(g)?;
    let label_of = |f: usize| {
        let h = sub.face_half_edges(f)[0];
        regions[pg.face_of(lift_half_edge(g, &pg, map[sub.src(h)], map[sub.dst(h)]))]
    };
    let ext = (0..sub.face_count()).find(|&f| label_of(f) == outside).ok_or(TransformError::NoExternalFace)?;
    let mut cycle: Vec<usize> = sub.face_vertices(ext).into_iter().map(|v| map[v]).collect();
    let mut sorted = cycle.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cycle.len() || cycle.len() < 3 {
        return Err(TransformError::CycleNotSimple);
    }
    let w = walk(g);
    let first = |v: usize| w.iter().position(|&x| x == v).unwrap_or(usize::MAX);
    let k = (0..cycle.len()).min_by_key(|&i| first(cycle[i])).expect("nonempty");
    cycle.rotate_left(k);
    let descents = |c: &[usize]| c.windows(2).filter(|p| first(p[0]) > first(p[1])).count();
    let mut back = cycle.clone();
    back[1..].reverse();
    if descents(&back) < descents(&cycle) {
        cycle = back;
    }
    let mut ring = vec![false; g.n()];
    for &v in &cycle {
        ring[v] = true;
    }
    let vertex_region: Vec<Option<usize>> = (0..g.n())
        .map(|v| {
            if lr.is_aligned(v) {
                None
            } else if g.rotation(v).is_empty() {
                Some(outside)
            } else {
                Some(regions[pg.face_of(pg.half_edge(v, 0))])
            }
        })
        .collect();
    let outer_set: Vec<bool> = (0..g.n()).map(|v| ring[v] || vertex_region[v] == Some(outside)).collect();
    let outer_vertices: Vec<usize> = (0..g.n()).filter(|&v| outer_set[v]).collect();
    let st = |a: usize, b: usize| (a == s && b == t) || (a == t && b == s);
    let cycle_edge = |a: usize, b: usize| {
        let m = cycle.len();
        (0..m).any(|i| {
            let (x, y) = (cycle[i], cycle[(i + 1) % m]);
            (x == a && y == b) || (x == b && y == a)
        })
    };
    let outer_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .filter(|&(a, b)| outer_set[a] && outer_set[b] && !st(a, b) && (!(ring[a] && ring[b]) || cycle_edge(a, b)))
        .collect();
    let inner_edges = lr.hat_plus_lr.edges();
    let mut pockets = Vec::new();
    let mut dummy_edges = Vec::new();
    for f in 0..sub.face_count() {
        if f == ext {
            continue;
        }
        let boundary: Vec<usize> = sub.face_vertices(f).into_iter().map(|v| map[v]).collect();
        let label = label_of(f);
        let removed: Vec<usize> = (0..g.n()).filter(|&v| vertex_region[v] == Some(label)).collect();
        if boundary.len() == 3 && removed.is_empty() {
            continue;
        }
        let (apex, fan) = if boundary.len() > 3 { fan_triangulate(g, &lr, &boundary) } else { (None, Vec::new()) };
        dummy_edges.extend(fan.iter().copied());
        pockets.push(Pocket { boundary, apex, dummy_edges: fan, removed });
    }
    let side_graphs = side_graphs(g, &lr, &cycle, &w);
    let mut owner = HashMap::new();
    for (i, sg) in side_graphs.iter().enumerate() {
        for &v in &sg.vertices {
            if !ring[v] {
                owner.entry(v).or_insert(i);
            }
        }
    }
    let bounding = bounding_edges(&lr, &side_graphs);
    Ok(SplitDecomposition {
        graph: g.clone(),
        lr,
        cycle,
        outer_vertices,
        outer_edges,
        inner_edges,
        dummy_edges,
        pockets,
        walk: w,
        side_graphs,
        bounding,
        owner,
    })
}

fn fan_triangulate(g: &TopoGraph, lr: &LRSubgraphs, boundary: &[usize]) -> (Option<usize>, Vec<(usize, usize)>) {
    let m = boundary.len();
    let start = (0..m).min_by(|&a, &b| g.name(boundary[a]).cmp(g.name(boundary[b]))).unwrap_or(0);
    let walk: Vec<usize> = (0..m).map(|i| boundary[(start + i) % m]).collect();
    let count = |v: usize| walk.iter().filter(|&&x| x == v).count();
    let (s, t) = (g.s(), g.t());
    let targets = |i: usize| -> Vec<usize> {
        (2..m - 1).map(|d| walk[(i + d) % m]).collect()
    };
    let fits = |i: usize| {
        let a = walk[i];
        let ts = targets(i);
        count(a) == 1
            && ts.iter().all(|&w| {
                count(w) == 1 && w != a && !lr.hat_plus_lr.has_edge(a, w) && !((a == s && w == t) || (a == t && w == s))
            })
    };
    let i = match (0..m).find(|&i| fits(i)).or_else(|| (0..m).find(|&i| count(walk[i]) == 1)) {
        Some(i) => i,
        None => return (None, Vec::new()),
    };
    let a = walk[i];
    let mut fan: Vec<(usize, usize)> = targets(i)
        .into_iter()
        .filter(|&w| w != a && !lr.hat_plus_lr.has_edge(a, w))
        .map(|w| (a.min(w), a.max(w)))
        .collect();
    fan.sort_unstable();
    fan.dedup();
    (Some(a), fan)
}

fn side_graphs(g: &TopoGraph, lr: &LRSubgraphs, cycle: &[usize], w: &[usize]) -> Vec<SideGraph> {
    let (s, t) = (g.s(), g.t());
    let first = |v: usize| w.iter().position(|&x| x == v).expect("cycle vertex on walk");
    let m = cycle.len();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let (u, v) = (cycle[j], cycle[(j + 1) % m]);
        let (iu, iv) = (first(u), first(v));
        let mut slice: Vec<usize> =
            if iu <= iv { w[iu..=iv].to_vec() } else { w[iu..].iter().chain(&w[..=iv]).copied().collect() };
        let mut seen = vec![false; g.n()];
        slice.retain(|&x| !std::mem::replace(&mut seen[x], true));
        let inside = |x: usize| seen[x];
        let adj = |x: usize| -> Vec<usize> {
            g.rotation(x)
                .iter()
                .copied()
                .filter(|&y| inside(y) && !((x == s && y == t) || (x == t && y == s)))
                .collect()
        };
        let mut edges = Vec::new();
        for &x in &slice {
            edges.extend(adj(x).into_iter().filter(|&y| x < y).map(|y| (x, y)));
        }
        edges.sort_unstable();
        let is_cap = slice.iter().any(|&x| lr.report.is_left[x]) && slice.iter().any(|&x| lr.report.is_right[x]);
        let tree = block_cut_tree(&slice, &adj, (u, v));
        out.push(SideGraph { edge: (u, v), label: j + 1, vertices: slice, edges, is_cap, tree });
    }
    out
}

fn bounding_edges(lr: &LRSubgraphs, sides: &[SideGraph]) -> Vec<BoundingEdges> {
    let mut out = Vec::new();
    for (i, sg) in sides.iter().enumerate() {
        let tree = &sg.tree;
        for b in 0..tree.blocks.len() {
            let Some(c) = tree.parent_cut[b] else { continue };
            let rot = &lr.hat_plus_lr.rot[c];
            let d = rot.len();
            let in_b: Vec<bool> = rot.iter().map(|&x| tree.contains(b, x)).collect();
            let Some(k) = (0..d).find(|&k| !in_b[k] && in_b[(k + 1) % d]) else { continue };
            let mut j = (k + 1) % d;
            while in_b[j] {
                j = (j + 1) % d;
            }
            out.push(BoundingEdges { side: i, block: b, cut: c, e1: (c, rot[k]), e2: (c, rot[j]) });
        }
    }
    out
}

/// Least drawn ancestor of `v` in its block-cut tree.
fn least_drawn(dec: &SplitDecomposition, drawn: &[bool], mut v: usize) -> usize {
    loop {
        if drawn[v] {
            return v;
        }
        let Some(&i) = dec.owner.get(&v) else { return v };
        let tree = &dec.side_graphs[i].tree;
        match tree.home.get(&v).and_then(|&b| tree.parent_cut[b]) {
            Some(c) => v = c,
            None => return v,
        }
    }
}

/// Blocks `(side graph, block)` that are safe for the given drawn set.
pub fn safe_blocks(dec: &SplitDecomposition, drawn: &[bool]) -> Vec<(usize, usize)> {
    dec.bounding
        .iter()
        .filter(|be| {
            let tree = &dec.side_graphs[be.side].tree;
            drawn[be.cut]
                && tree.blocks[be.block].iter().all(|&x| x == be.cut || !drawn[x])
                && least_drawn(dec, drawn, be.e1.1) != least_drawn(dec, drawn, be.e2.1)
        })
        .map(|be| (be.side, be.block))
        .collect()
}

/// Vertices drawn before any non-root block: the separating cycle and every
/// root block.
pub fn initially_drawn(dec: &SplitDecomposition) -> Vec<bool> {
    let mut drawn = vec![false; dec.graph.n()];
    for &v in &dec.cycle {
        drawn[v] = true;
    }
    for sg in &dec.side_graphs {
        if let Some(b) = sg.tree.blocks.get(sg.tree.root) {
            for &v in b {
                drawn[v] = true;
            }
        }
    }
    drawn
}

/// Runs the safe-block order to completion; returns the blocks in the order
/// they were drawn.
pub fn safe_block_order(dec: &SplitDecomposition) -> Result<Vec<(usize, usize)>, TransformError> {
    let mut drawn = initially_drawn(dec);
    let pending = |drawn: &[bool]| dec.side_graphs.iter().any(|sg| sg.vertices.iter().any(|&v| !drawn[v]));
    let mut order = Vec::new();
    while pending(&drawn) {
        let Some(&(i, b)) = safe_blocks(dec, &drawn).first() else {
            return Err(TransformError::NoSafeBlock);
        };
        for &v in &dec.side_graphs[i].tree.blocks[b] {
            drawn[v] = true;
        }
        order.push((i, b));
    }
    Ok(order)
}
