//! Python module `matchstick`.
//!
//! Graphs are wrapped in a `Graph` class; every report comes back as a plain
//! dict with the same shape as the JSON the CLI prints. Tolerances and solver
//! settings are passed as dicts with the same keys as their JSON forms.

use matchstick::analysis::{detect_symmetry, frame_triangles};
use matchstick::corpus::{get_document, get_graph, list_corpus};
use matchstick::model::{parse_graph, serialize_graph};
use matchstick::relax::{flex_continuation, relax as relax_graph, FlexContinuationConfig, RelaxConfig};
use matchstick::rigidity::{analyze_rigidity, RigidityMode};
use matchstick::svg::SvgStyle;
use matchstick::verifier::{check_construction_rules, verify as verify_graph};
use matchstick::{Error, Point, ToleranceProfile};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

create_exception!(matchstick, MatchstickError, PyException, "A graph could not be analyzed.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::InvalidConfig(_) => PyValueError::new_err(e.to_string()),
        Error::UnknownId(id) => PyKeyError::new_err(id),
        other => MatchstickError::new_err(other.to_string()),
    }
}

/// Round-trips through `json` so reports become ordinary dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| MatchstickError::new_err(e.to_string()))?;
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: DeserializeOwned + Default>(py: Python<'_>, obj: Option<&Bound<'_, PyDict>>) -> PyResult<T> {
    let Some(obj) = obj else { return Ok(T::default()) };
    let text: String = PyModule::import(py, "json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(format!("invalid configuration: {e}")))
}

fn profile(py: Python<'_>, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<ToleranceProfile> {
    let p: ToleranceProfile = from_py(py, tolerances)?;
    p.validate().map_err(py_err)?;
    Ok(p)
}

#[pyclass(name = "Graph", module = "matchstick", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: matchstick::Graph,
}

#[pymethods]
impl PyGraph {
    /// Parses a graph document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_graph(text).map(|inner| Self { inner }).map_err(py_err)
    }

    #[staticmethod]
    fn from_corpus(id: &str) -> PyResult<Self> {
        get_graph(id).map(|inner| Self { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        serialize_graph(&self.inner)
    }

    /// Same edges, red set and metadata, new coordinates.
    fn with_vertices(&self, points: Vec<(f64, f64)>) -> PyResult<Self> {
        if points.len() != self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!(
                "expected {} points, got {}",
                self.inner.vertex_count(),
                points.len()
            )));
        }
        Ok(Self { inner: self.inner.with_vertices(points.into_iter().map(|(x, y)| Point::new(x, y)).collect()) })
    }

    #[getter]
    fn id(&self) -> &str {
        self.inner.id()
    }

    #[getter]
    fn caption(&self) -> &str {
        self.inner.caption()
    }

    #[getter]
    fn vertices(&self) -> Vec<(f64, f64)> {
        self.inner.vertices().iter().map(|p| (p.x, p.y)).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| (e.0, e.1)).collect()
    }

    #[getter]
    fn red_edges(&self) -> Vec<(usize, usize)> {
        self.inner.red_edges().iter().map(|e| (e.0, e.1)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(id={:?}, vertices={}, edges={}, red={})",
            self.inner.id(),
            self.inner.vertex_count(),
            self.inner.edges().len(),
            self.inner.red_edges().len()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (graph, tolerances=None))]
fn verify(py: Python<'_>, graph: &PyGraph, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_graph(&graph.inner, &profile(py, tolerances)?))
}

/// `mode` is "release_red" (red edges may change length) or "all_edges".
#[pyfunction]
#[pyo3(signature = (graph, mode="release_red", tolerances=None))]
fn rigidity(py: Python<'_>, graph: &PyGraph, mode: &str, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let mode: RigidityMode =
        serde_json::from_value(json!(mode)).map_err(|_| PyValueError::new_err(format!("unknown rigidity mode {mode:?}")))?;
    let p = profile(py, tolerances)?;
    let r = py.detach(|| analyze_rigidity(&graph.inner, &p, mode)).map_err(py_err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (graph, config=None))]
fn relax(py: Python<'_>, graph: &PyGraph, config: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let cfg: RelaxConfig = from_py(py, config)?;
    let r = py.detach(|| relax_graph(&graph.inner, &cfg)).map_err(py_err)?;
    to_py(py, &r)
}

/// List of accepted continuation stages, each a relaxation result.
#[pyfunction]
#[pyo3(signature = (graph, config=None))]
fn flex(py: Python<'_>, graph: &PyGraph, config: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let cfg: FlexContinuationConfig = from_py(py, config)?;
    let stages = py.detach(|| flex_continuation(&graph.inner, &cfg)).map_err(py_err)?;
    to_py(py, &stages)
}

#[pyfunction]
#[pyo3(signature = (graph, tolerances=None))]
fn symmetry(py: Python<'_>, graph: &PyGraph, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    to_py(py, &detect_symmetry(&graph.inner, &profile(py, tolerances)?))
}

#[pyfunction]
#[pyo3(signature = (graph, tolerances=None))]
fn frame(py: Python<'_>, graph: &PyGraph, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    to_py(py, &frame_triangles(&graph.inner, &profile(py, tolerances)?).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (graph, tolerances=None))]
fn rules(py: Python<'_>, graph: &PyGraph, tolerances: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let p = profile(py, tolerances)?;
    let rig = analyze_rigidity(&graph.inner, &p, RigidityMode::ReleaseRed).map_err(py_err)?;
    let fr = frame_triangles(&graph.inner, &p).map_err(py_err)?;
    let report = check_construction_rules(&graph.inner, &rig, &fr, &p);
    let mut body = serde_json::to_value(&report).map_err(|e| MatchstickError::new_err(e.to_string()))?;
    body["all_pass"] = json!(report.all_pass());
    to_py(py, &body)
}

#[pyfunction]
#[pyo3(signature = (graph, style=None))]
fn export_svg(py: Python<'_>, graph: &PyGraph, style: Option<&Bound<'_, PyDict>>) -> PyResult<String> {
    let style: SvgStyle = from_py(py, style)?;
    matchstick::svg::export_svg(&graph.inner, &style).map_err(py_err)
}

#[pyfunction]
fn corpus_list(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &list_corpus())
}

/// The stored document, byte for byte.
#[pyfunction]
fn corpus_document(id: &str) -> PyResult<&'static str> {
    get_document(id).map_err(py_err)
}

#[pymodule(name = "matchstick")]
pub fn matchstick_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("MatchstickError", m.py().get_type::<MatchstickError>())?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(relax, m)?)?;
    m.add_function(wrap_pyfunction!(flex, m)?)?;
    m.add_function(wrap_pyfunction!(symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(frame, m)?)?;
    m.add_function(wrap_pyfunction!(rules, m)?)?;
    m.add_function(wrap_pyfunction!(export_svg, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_list, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_document, m)?)?;
    Ok(())
}
