//! Straight-line drawings with exact rational coordinates.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{to_f64, Point, Q};
use crate::topo::{TopoGraph, SCHEMA_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("malformed drawing: {0}")]
    Parse(String),
    #[error("drawing has no position for vertex {0}")]
    Missing(String),
    #[error("drawing names unknown vertex {0}")]
    Unknown(String),
}

/// Vertex positions, indexed like the vertices of the graph they draw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub names: Vec<String>,
    pub coords: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawFrac {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct RawVertex {
    id: String,
    x: RawFrac,
    y: RawFrac,
}

#[derive(Serialize, Deserialize)]
struct RawDrawing {
    schema_version: String,
    vertices: Vec<RawVertex>,
}

fn frac(q: &Q) -> RawFrac {
    RawFrac { num: q.numer().to_string(), den: q.denom().to_string() }
}

fn unfrac(f: &RawFrac) -> Result<Q, DrawingError> {
    let num = BigInt::from_str(&f.num).map_err(|e| DrawingError::Parse(format!("{}: {e}", f.num)))?;
    let den = BigInt::from_str(&f.den).map_err(|e| DrawingError::Parse(format!("{}: {e}", f.den)))?;
    if den.is_zero() {
        return Err(DrawingError::Parse("zero denominator".into()));
    }
    Ok(Q::new(num, den))
}

impl Drawing {
    pub fn new(g: &TopoGraph, coords: Vec<Point>) -> Drawing {
        Drawing { names: g.names().to_vec(), coords }
    }

    pub fn to_json(&self) -> String {
        let raw = RawDrawing {
            schema_version: SCHEMA_VERSION.to_string(),
            vertices: self
                .names
                .iter()
                .zip(&self.coords)
                .map(|(id, p)| RawVertex { id: id.clone(), x: frac(&p.x), y: frac(&p.y) })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("drawing serializes")
    }

    pub fn from_json(text: &str) -> Result<Drawing, DrawingError> {
        let raw: RawDrawing = serde_json::from_str(text).map_err(|e| DrawingError::Parse(e.to_string()))?;
        let mut names = Vec::new();
        let mut coords = Vec::new();
        for v in raw.vertices {
            coords.push(Point::new(unfrac(&v.x)?, unfrac(&v.y)?));
            names.push(v.id);
        }
        Ok(Drawing { names, coords })
    }

    /// Reorders the positions to match the vertex indices of `g`.
    pub fn aligned(&self, g: &TopoGraph) -> Result<Drawing, DrawingError> {
        let mut by_name = HashMap::new();
        for (n, p) in self.names.iter().zip(&self.coords) {
            if g.id(n).is_none() {
                return Err(DrawingError::Unknown(n.clone()));
            }
            by_name.insert(n.as_str(), p);
        }
        let coords = g
            .names()
            .iter()
            .map(|n| by_name.get(n.as_str()).map(|p| (*p).clone()).ok_or_else(|| DrawingError::Missing(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Drawing { names: g.names().to_vec(), coords })
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.coords[0].clone();
        let mut hi = self.coords[0].clone();
        for p in &self.coords[1..] {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    /// SVG rendering in a 1000x1000 view box; the y axis points up.
    pub fn to_svg(&self, g: &TopoGraph) -> String {
        let (lo, hi) = self.bbox();
        let w = to_f64(&(&hi.x - &lo.x)).max(f64::MIN_POSITIVE);
        let h = to_f64(&(&hi.y - &lo.y)).max(f64::MIN_POSITIVE);
        let scale = 900.0 / w.max(h);
        let px = |p: &Point| {
            (50.0 + to_f64(&(&p.x - &lo.x)) * scale, 950.0 - to_f64(&(&p.y - &lo.y)) * scale)
        };
        let mut out = String::new();
        out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n");
        for &(a, b) in g.edges() {
            let ((x1, y1), (x2, y2)) = (px(&self.coords[a]), px(&self.coords[b]));
            let st = (a, b) == (g.s(), g.t()) || (b, a) == (g.s(), g.t());
            let stroke = if st { "#c00" } else { "#000" };
            let _ = writeln!(
                out,
                "  <line id=\"{}--{}\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"{stroke}\" stroke-width=\"2\"/>",
                xml_escape(g.name(a)),
                xml_escape(g.name(b))
            );
        }
        for v in 0..g.n() {
            let (x, y) = px(&self.coords[v]);
            let _ = writeln!(out, "  <circle id=\"{}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\"/>", xml_escape(g.name(v)));
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
