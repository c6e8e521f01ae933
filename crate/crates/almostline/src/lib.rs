//! Straight-line drawings of almost-planar topological graphs.
//!
//! An almost-planar graph is a planar graph plus one edge `(s,t)` that may
//! cross other edges. Given its embedding (a rotation system plus the ordered
//! crossings along `(s,t)`), this crate decides whether an embedding-preserving
//! straight-line drawing exists, builds one with exact rational coordinates,
//! and verifies the result independently.

pub mod analysis;
pub mod cli;
pub mod drawing;
pub mod gen;
pub mod geom;
pub mod layout;
pub mod plane;
pub mod topo;
pub mod transform;
pub mod verify;

pub use plane::{faces, planarize, EdgeMark, PlaneGraph, PlanarizeError};
pub use topo::{
    load_topology, parse_topology, validate, Crossing, LoadError, Surface, TopoGraph,
    ValidationReport, Violation,
};
pub use drawing::{Drawing, DrawingError};
pub use verify::{area_metrics, verify, AreaMetrics, VerifyReport};
