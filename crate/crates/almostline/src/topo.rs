//! Topological graphs: a simple graph with a rotation system, one
//! distinguished edge `(s,t)` and the ordered list of edges crossing it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{planarize, PlanarizeError};

/// Version of the JSON schema understood by [`load_topology`].
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("schema violation in field `{field}`: {msg}")]
    Schema { field: String, msg: String },
    #[error("{0}")]
    Invalid(Violation),
}

/// An edge of `(s,t)`'s crossing sequence. `left` is the endpoint `u` in the
/// clockwise order `<s,u,t,v>` around the crossing point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surface {
    Sphere,
    /// External face as a cyclic vertex sequence of the planarization; dummy
    /// crossing vertex `i` is written `x{i}`.
    Plane(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    s: usize,
    t: usize,
    crossings: Vec<Crossing>,
    surface: Surface,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: &'static str,
    pub element: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.element)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

#[derive(Deserialize, Serialize, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[serde(untagged)]
enum RawId {
    Str(String),
    Num(i64),
}

impl RawId {
    fn into_string(self) -> String {
        match self {
            RawId::Str(s) => s,
            RawId::Num(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCrossing {
    edge: [RawId; 2],
    left: RawId,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<RawId>,
    edges: Vec<[RawId; 2]>,
    rotation: BTreeMap<String, Vec<[RawId; 2]>>,
    crossing_edge: [RawId; 2],
    crossings: Vec<RawCrossing>,
    #[serde(default)]
    external_face: Option<Vec<RawId>>,
}

fn schema(field: &str, msg: impl Into<String>) -> LoadError {
    LoadError::Schema { field: field.to_string(), msg: msg.into() }
}

fn map_json_error(e: serde_json::Error) -> LoadError {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => {
            let msg = e.to_string();
            let field = msg
                .split('`')
                .nth(1)
                .unwrap_or("?")
                .to_string();
            LoadError::Schema { field, msg }
        }
        _ => LoadError::Parse { line: e.line(), column: e.column(), msg: e.to_string() },
    }
}

/// Parses the JSON text without checking the graph invariants.
pub fn parse_topology(text: &str) -> Result<TopoGraph, LoadError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(map_json_error)?;
    let names: Vec<String> = raw.vertices.into_iter().map(RawId::into_string).collect();
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(schema("vertices", format!("duplicate vertex id {n}")));
        }
    }
    let lookup = |field: &str, id: RawId| -> Result<usize, LoadError> {
        let s = id.into_string();
        index.get(&s).copied().ok_or_else(|| schema(field, format!("unknown vertex {s}")))
    };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for [a, b] in raw.edges {
        edges.push((lookup("edges", a)?, lookup("edges", b)?));
    }
    let mut rotation = vec![Vec::new(); names.len()];
    for (v, list) in raw.rotation {
        let vi = *index.get(&v).ok_or_else(|| schema("rotation", format!("unknown vertex {v}")))?;
        for [a, b] in list {
            let (a, b) = (lookup("rotation", a)?, lookup("rotation", b)?);
            let other = if a == vi {
                b
            } else if b == vi {
                a
            } else {
                return Err(schema("rotation", format!("edge listed at {v} is not incident to it")));
            };
            rotation[vi].push(other);
        }
    }
    let [s, t] = raw.crossing_edge;
    let (s, t) = (lookup("crossing_edge", s)?, lookup("crossing_edge", t)?);
    let mut crossings = Vec::with_capacity(raw.crossings.len());
    for c in raw.crossings {
        let [a, b] = c.edge;
        let (a, b) = (lookup("crossings", a)?, lookup("crossings", b)?);
        let left = lookup("crossings", c.left)?;
        let right = if left == a {
            b
        } else if left == b {
            a
        } else {
            return Err(schema("crossings", "left is not an endpoint of the edge"));
        };
        crossings.push(Crossing { left, right });
    }
    let surface = match raw.external_face {
        None => Surface::Sphere,
        Some(f) => Surface::Plane(f.into_iter().map(RawId::into_string).collect()),
    };
    let mut g = TopoGraph { names, index, edges, rotation, s, t, crossings, surface };
    g.normalize_rotation();
    Ok(g)
}

/// Parses and validates; the first violation becomes the error.
pub fn load_topology(text: &str) -> Result<TopoGraph, LoadError> {
    let g = parse_topology(text)?;
    let report = validate(&g);
    match report.violations.into_iter().next() {
        Some(v) => Err(LoadError::Invalid(v)),
        None => Ok(g),
    }
}

impl TopoGraph {
    /// Builds a graph whose edge set is read off the rotation system.
    pub fn new(
        names: Vec<String>,
        rotation: Vec<Vec<usize>>,
        s: usize,
        t: usize,
        crossings: Vec<Crossing>,
        surface: Surface,
    ) -> TopoGraph {
        let mut edges = Vec::new();
        for (v, list) in rotation.iter().enumerate() {
            for &w in list {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        TopoGraph::from_parts(names, edges, rotation, s, t, crossings, surface)
    }

    /// Builds a graph from explicit parts; nothing is checked.
    pub fn from_parts(
        names: Vec<String>,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
        s: usize,
        t: usize,
        crossings: Vec<Crossing>,
        surface: Surface,
    ) -> TopoGraph {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut g = TopoGraph { names, index, edges, rotation, s, t, crossings, surface };
        g.normalize_rotation();
        g
    }

    fn normalize_rotation(&mut self) {
        let names = &self.names;
        for list in &mut self.rotation {
            if let Some(k) = (0..list.len()).min_by(|&a, &b| names[list[a]].cmp(&names[list[b]])) {
                list.rotate_left(k);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Clockwise neighbour order around `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn p(&self) -> usize {
        self.crossings.len()
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (x, y) = if self.rotation[a].len() <= self.rotation[b].len() { (a, b) } else { (b, a) };
        self.rotation[x].contains(&y)
    }

    pub fn with_surface(&self, surface: Surface) -> TopoGraph {
        TopoGraph { surface, ..self.clone() }
    }

    /// The same embedding with the roles of `s` and `t` exchanged.
    pub fn reversed(&self) -> TopoGraph {
        let crossings = self
            .crossings
            .iter()
            .rev()
            .map(|c| Crossing { left: c.right, right: c.left })
            .collect();
        TopoGraph { s: self.t, t: self.s, crossings, ..self.clone() }
    }

    /// Renames vertices; `names[i]` becomes the id of vertex `i`.
    pub fn relabeled(&self, names: Vec<String>) -> TopoGraph {
        let surface = match &self.surface {
            Surface::Sphere => Surface::Sphere,
            Surface::Plane(f) => Surface::Plane(
                f.iter()
                    .map(|x| self.id(x).map_or_else(|| x.clone(), |i| names[i].clone()))
                    .collect(),
            ),
        };
        TopoGraph::from_parts(
            names,
            self.edges.clone(),
            self.rotation.clone(),
            self.s,
            self.t,
            self.crossings.clone(),
            surface,
        )
    }
}

impl TopoGraph {
    pub fn to_json(&self) -> String {
        let id = |v: usize| RawId::Str(self.names[v].clone());
        let mut edges: Vec<[RawId; 2]> = self.edges.iter().map(|&(a, b)| [id(a), id(b)]).collect();
        edges.sort();
        let rotation = (0..self.n())
            .map(|v| {
                let list = self.rotation[v].iter().map(|&w| [id(v), id(w)]).collect();
                (self.names[v].clone(), list)
            })
            .collect();
        let raw = RawGraph {
            vertices: (0..self.n()).map(id).collect(),
            edges,
            rotation,
            crossing_edge: [id(self.s), id(self.t)],
            crossings: self
                .crossings
                .iter()
                .map(|c| RawCrossing { edge: [id(c.left), id(c.right)], left: id(c.left) })
                .collect(),
            external_face: match &self.surface {
                Surface::Sphere => None,
                Surface::Plane(f) => Some(f.iter().cloned().map(RawId::Str).collect()),
            },
        };
        serde_json::to_string_pretty(&raw).expect("graph serializes")
    }
}

fn violation(kind: &'static str, element: impl Into<String>) -> Violation {
    Violation { kind, element: element.into() }
}

/// Lists every violated invariant of `g`.
pub fn validate(g: &TopoGraph) -> ValidationReport {
    let mut out = Vec::new();
    let n = g.n();
    let nm = |v: usize| g.names[v].clone();
    let pair = |a: usize, b: usize| format!("({},{})", g.names[a], g.names[b]);
    let mut edge_set = std::collections::BTreeSet::new();
    for &(a, b) in &g.edges {
        if a == b {
            out.push(violation("not simple", format!("self-loop at {}", nm(a))));
        } else if !edge_set.insert((a.min(b), a.max(b))) {
            out.push(violation("not simple", format!("duplicate edge {}", pair(a, b))));
        }
    }
    let mut rot_set = HashSet::new();
    for v in 0..n {
        let mut seen = HashSet::new();
        for &w in &g.rotation[v] {
            if !seen.insert(w) {
                out.push(violation("rotation incomplete", format!("{} listed twice at {}", pair(v, w), nm(v))));
            }
            if !edge_set.contains(&(v.min(w), v.max(w))) {
                out.push(violation("rotation incomplete", format!("{} at {} is not an edge", pair(v, w), nm(v))));
            }
            rot_set.insert((v, w));
        }
    }
    for &(a, b) in &edge_set {
        for (x, y) in [(a, b), (b, a)] {
            if !rot_set.contains(&(x, y)) {
                out.push(violation("rotation incomplete", format!("{} missing at {}", pair(x, y), nm(x))));
            }
        }
    }
    let (s, t) = (g.s, g.t);
    if s == t || !edge_set.contains(&(s.min(t), s.max(t))) {
        out.push(violation("crossing edge missing", pair(s, t)));
    }
    let mut crossed = HashSet::new();
    for c in &g.crossings {
        let e = (c.left.min(c.right), c.left.max(c.right));
        if !edge_set.contains(&e) {
            out.push(violation("crossing not an edge", pair(c.left, c.right)));
        }
        if [s, t].contains(&c.left) || [s, t].contains(&c.right) {
            out.push(violation("crossing edge incident to endpoint", pair(c.left, c.right)));
        }
        if !crossed.insert(e) {
            out.push(violation("crossing repeated", pair(c.left, c.right)));
        }
    }
    if out.is_empty() {
        if let Err(e) = planarize(g) {
            let kind = match e {
                PlanarizeError::NonPlanar { .. } => "nonplanar rotation system",
                PlanarizeError::Disconnected => "disconnected",
                PlanarizeError::ExternalFace => "external face not a face",
            };
            out.push(violation(kind, e.to_string()));
        }
    }
    ValidationReport { violations: out }
}

impl TopoGraph {
    /// Adds edge `(a,b)`, placing it at clockwise index `ka` in `a`'s rotation
    /// and `kb` in `b`'s. With `crossing = Some(i)` the new edge becomes
    /// crossing `i` (shifting later ones) with `a` as its left endpoint.
    pub(crate) fn insert_edge(&mut self, a: usize, ka: usize, b: usize, kb: usize, crossing: Option<usize>) {
        self.rotation[a].insert(ka, b);
        self.rotation[b].insert(kb, a);
        self.edges.push((a.min(b), a.max(b)));
        if let Some(i) = crossing {
            self.crossings.insert(i, Crossing { left: a, right: b });
        }
        for v in [a, b] {
            let names = &self.names;
            let list = &mut self.rotation[v];
            if let Some(k) = (0..list.len()).min_by(|&x, &y| names[list[x]].cmp(&names[list[y]])) {
                list.rotate_left(k);
            }
        }
    }
}
