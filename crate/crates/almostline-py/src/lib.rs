//! Python bindings. Graphs and drawings cross the boundary as JSON text.

use almostline::cli::{decompose, split_json, test_line};
use almostline::gen::{gen_gk as rs_gen_gk, gen_random as rs_gen_random};
use almostline::layout::draw_augmented;
use almostline::topo::SCHEMA_VERSION;
use almostline::{area_metrics, load_topology, parse_topology, Drawing, TopoGraph};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn graph(text: &str) -> PyResult<TopoGraph> {
    load_topology(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn drawing(g: &TopoGraph, text: &str) -> PyResult<Drawing> {
    Drawing::from_json(text)
        .and_then(|d| d.aligned(g))
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn schema_version() -> &'static str {
    SCHEMA_VERSION
}

/// Violated invariants, one string each; empty when the graph is valid.
#[pyfunction]
fn validate(graph_json: &str) -> PyResult<Vec<String>> {
    let g = parse_topology(graph_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(almostline::validate(&g).violations.iter().map(ToString::to_string).collect())
}

/// `DRAWABLE`, `NOT-DRAWABLE <witness>` or `UNKNOWN`.
#[pyfunction]
fn test(graph_json: &str) -> PyResult<String> {
    Ok(test_line(&graph(graph_json)?).0)
}

/// Drawing as JSON with exact rational coordinates.
#[pyfunction]
#[pyo3(signature = (graph_json, keep_augmentation = false))]
fn draw(graph_json: &str, keep_augmentation: bool) -> PyResult<String> {
    let g = graph(graph_json)?;
    let (aug, d) = draw_augmented(&g).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let shown = if keep_augmentation { aug } else { g };
    Ok(Drawing::new(&shown, d.coords).to_json())
}

#[pyfunction]
fn svg(graph_json: &str, drawing_json: &str) -> PyResult<String> {
    let g = graph(graph_json)?;
    Ok(drawing(&g, drawing_json)?.to_svg(&g))
}

/// `(ok, report)`.
#[pyfunction]
fn verify(graph_json: &str, drawing_json: &str) -> PyResult<(bool, String)> {
    let g = graph(graph_json)?;
    let r = almostline::verify(&g, &drawing(&g, drawing_json)?);
    Ok((r.ok(), r.to_string()))
}

/// log2 of the normalized area.
#[pyfunction]
fn log2_area(graph_json: &str, drawing_json: &str) -> PyResult<f64> {
    let g = graph(graph_json)?;
    Ok(area_metrics(&g, &drawing(&g, drawing_json)?).log2_area())
}

#[pyfunction]
fn split(graph_json: &str) -> PyResult<String> {
    let dec = decompose(&graph(graph_json)?).map_err(PyValueError::new_err)?;
    Ok(split_json(&dec).to_string())
}

#[pyfunction]
fn gen_gk(k: usize) -> PyResult<String> {
    rs_gen_gk(k).map(|g| g.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0, consistent = false))]
fn gen_random(n: usize, seed: u64, consistent: bool) -> PyResult<String> {
    rs_gen_random(n, seed, consistent).map(|g| g.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn almostline_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(schema_version, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(test, m)?)?;
    m.add_function(wrap_pyfunction!(draw, m)?)?;
    m.add_function(wrap_pyfunction!(svg, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(log2_area, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(gen_gk, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    Ok(())
}
