//! Instance generators: the exponential-area family `G_k` and random
//! almost-planar embeddings.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::test_s2;
use crate::topo::{Crossing, Surface, TopoGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("k must be at least 1")]
    BadK,
    #[error("n must be at least 4")]
    BadN,
    #[error("sampling budget exceeded")]
    Budget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Gk { k: usize },
    Random { n: usize, seed: u64, consistent: bool },
}

pub fn generate(spec: GenKind) -> Result<TopoGraph, GenError> {
    match spec {
        GenKind::Gk { k } => gen_gk(k),
        GenKind::Random { n, seed, consistent } => gen_random(n, seed, consistent),
    }
}

/// `G_k` on `s, t, l1..lk, r1..rk`: the rungs `(l_i, r_i)` cross `(s,t)`,
/// `(l_k, r_k)` first; paths `l_i l_{i+1}`, `r_i r_{i+1}` and caps
/// `l_i r_{i+1}` complete the spiral.
pub fn gen_gk(k: usize) -> Result<TopoGraph, GenError> {
    if k == 0 {
        return Err(GenError::BadK);
    }
    let mut names = vec!["s".to_string(), "t".to_string()];
    names.extend((1..=k).map(|i| format!("l{i}")));
    names.extend((1..=k).map(|i| format!("r{i}")));
    let l = |i: usize| 1 + i;
    let r = |i: usize| 1 + k + i;
    let mut rot = vec![Vec::new(); 2 * k + 2];
    rot[0] = vec![1];
    rot[1] = vec![0];
    if k == 1 {
        rot[l(1)] = vec![r(1)];
        rot[r(1)] = vec![l(1)];
    } else {
        rot[l(1)] = vec![r(2), r(1), l(2)];
        rot[r(1)] = vec![l(1), r(2)];
        for i in 2..k {
            rot[l(i)] = vec![r(i + 1), l(i - 1), r(i), l(i + 1)];
            rot[r(i)] = vec![r(i + 1), l(i), r(i - 1), l(i - 1)];
        }
        rot[l(k)] = vec![l(k - 1), r(k)];
        rot[r(k)] = vec![l(k), r(k - 1), l(k - 1)];
    }
    let crossings = (1..=k).rev().map(|i| Crossing { left: l(i), right: r(i) }).collect();
    Ok(TopoGraph::new(names, rot, 0, 1, crossings, Surface::Sphere))
}

/// A random triangulation on `n` vertices: stacked insertions followed by
/// random flips. Faces are clockwise vertex triples.
struct Triangulation {
    rot: Vec<Vec<usize>>,
    faces: Vec<[usize; 3]>,
    face_of: HashMap<(usize, usize), usize>,
}

impl Triangulation {
    fn new() -> Triangulation {
        let mut t = Triangulation {
            rot: vec![vec![2, 1], vec![0, 2], vec![1, 0]],
            faces: Vec::new(),
            face_of: HashMap::new(),
        };
        t.set_face(None, [0, 1, 2]);
        t.set_face(None, [0, 2, 1]);
        t
    }

    fn set_face(&mut self, slot: Option<usize>, f: [usize; 3]) {
        let i = match slot {
            Some(i) => {
                self.faces[i] = f;
                i
            }
            None => {
                self.faces.push(f);
                self.faces.len() - 1
            }
        };
        for j in 0..3 {
            self.face_of.insert((f[j], f[(j + 1) % 3]), i);
        }
    }

    fn insert_after(&mut self, v: usize, after: usize, w: usize) {
        let k = self.rot[v].iter().position(|&x| x == after).expect("neighbour");
        self.rot[v].insert(k + 1, w);
    }

    fn insert_before(&mut self, v: usize, before: usize, w: usize) {
        let k = self.rot[v].iter().position(|&x| x == before).expect("neighbour");
        self.rot[v].insert(k, w);
    }

    fn stack(&mut self, f: usize) {
        let [a, b, c] = self.faces[f];
        let v = self.rot.len();
        self.rot.push(vec![a, b, c]);
        self.insert_after(a, b, v);
        self.insert_after(b, c, v);
        self.insert_after(c, a, v);
        self.set_face(Some(f), [a, b, v]);
        self.set_face(None, [b, c, v]);
        self.set_face(None, [c, a, v]);
    }

    fn flip(&mut self, a: usize, b: usize) -> bool {
        let (f1, f2) = (self.face_of[&(a, b)], self.face_of[&(b, a)]);
        let c = third(self.faces[f1], a, b);
        let d = third(self.faces[f2], b, a);
        if c == d || self.rot[c].contains(&d) || self.rot[a].len() <= 3 || self.rot[b].len() <= 3 {
            return false;
        }
        self.rot[a].retain(|&x| x != b);
        self.rot[b].retain(|&x| x != a);
        self.face_of.remove(&(a, b));
        self.face_of.remove(&(b, a));
        self.insert_before(c, b, d);
        self.insert_before(d, a, c);
        self.set_face(Some(f1), [d, b, c]);
        self.set_face(Some(f2), [c, a, d]);
        true
    }
}

fn third(f: [usize; 3], a: usize, b: usize) -> usize {
    f.into_iter().find(|&x| x != a && x != b).expect("triangle")
}

fn random_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Triangulation {
    let mut t = Triangulation::new();
    while t.rot.len() < n {
        let f = rng.gen_range(0..t.faces.len());
        t.stack(f);
    }
    for _ in 0..2 * n {
        let a = rng.gen_range(0..n);
        let b = t.rot[a][rng.gen_range(0..t.rot[a].len())];
        t.flip(a, b);
    }
    t
}

/// Routes `(s,t)` from a random corner of `s` through a simple path of
/// faces. Returns `s`, `t`, the crossings and the neighbours of `s` and `t`
/// that precede `(s,t)` clockwise.
fn route(t: &Triangulation, rng: &mut ChaCha8Rng, len: usize) -> Option<(usize, usize, Vec<Crossing>, [usize; 2])> {
    let n = t.rot.len();
    let s = rng.gen_range(0..n);
    let b0 = t.rot[s][rng.gen_range(0..t.rot[s].len())];
    let mut face = t.face_of[&(s, b0)];
    let mut visited = vec![face];
    // Half-edge of the current face that is crossed next.
    let mut exit = {
        let f = t.faces[face];
        let j = f.iter().position(|&x| x == s).expect("corner");
        (f[(j + 1) % 3], f[(j + 2) % 3])
    };
    let mut crossings = Vec::new();
    loop {
        let (a, b) = exit;
        if a == s || b == s {
            return None;
        }
        crossings.push(Crossing { left: a, right: b });
        face = t.face_of[&(b, a)];
        if visited.contains(&face) {
            return None;
        }
        visited.push(face);
        let d = third(t.faces[face], b, a);
        if crossings.len() >= len {
            let ok = d != s
                && crossings.iter().all(|c| c.left != d && c.right != d);
            if !ok {
                return None;
            }
            return Some((s, d, crossings, [b0, b]));
        }
        exit = if rng.gen_bool(0.5) { (a, d) } else { (d, b) };
    }
}

/// A random almost-planar graph: random triangulation, `(s,t)` routed
/// through a random simple path of faces (replacing the edge `(s,t)` of the
/// triangulation, if any), then a random quarter of the
/// edges off a spanning tree dropped.
pub fn gen_random(n: usize, seed: u64, require_consistent: bool) -> Result<TopoGraph, GenError> {
    if n < 4 {
        return Err(GenError::BadN);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maxlen = 2 + 2 * (n as f64).sqrt() as usize;
    for _ in 0..10_000 {
        let tri = random_triangulation(n, &mut rng);
        let len = rng.gen_range(1..=maxlen).max(rng.gen_range(1..=maxlen));
        let Some((s, t, crossings, [bs, bt])) = route(&tri, &mut rng, len) else { continue };
        let mut rot = tri.rot.clone();
        rot[s].retain(|&x| x != t);
        rot[t].retain(|&x| x != s);
        let ks = rot[s].iter().position(|&x| x == bs).expect("corner") + 1;
        rot[s].insert(ks, t);
        let kt = rot[t].iter().position(|&x| x == bt).expect("corner") + 1;
        rot[t].insert(kt, s);
        prune(&mut rot, s, t, &crossings, &mut rng);
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let g = TopoGraph::new(names, rot, s, t, crossings, Surface::Sphere);
        if !require_consistent || test_s2(&g).drawable {
            return Ok(g);
        }
    }
    Err(GenError::Budget)
}

fn prune(rot: &mut [Vec<usize>], s: usize, t: usize, crossings: &[Crossing], rng: &mut ChaCha8Rng) {
    let n = rot.len();
    let mut keep = std::collections::HashSet::new();
    keep.insert((s.min(t), s.max(t)));
    for c in crossings {
        keep.insert((c.left.min(c.right), c.left.max(c.right)));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in keep.clone().iter() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut edges: Vec<(usize, usize)> =
        (0..n).flat_map(|v| rot[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w))).collect();
    edges.shuffle(rng);
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            keep.insert((a, b));
        }
    }
    for (a, b) in edges {
        if !keep.contains(&(a, b)) && rng.gen_bool(0.25) {
            rot[a].retain(|&x| x != b);
            rot[b].retain(|&x| x != a);
        }
    }
}
