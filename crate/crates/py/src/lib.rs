//! Python module `pyenthom`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use enthom::classifier::barcode_count_bound;
use enthom::filtration::ComplexKind;
use enthom::homology;
use enthom::monotones::{self, MonotoneKind, MonotoneSettings, DEFAULT_ZERO_EPS};
use enthom::pipeline;
use enthom::render::{render_ascii, render_svg, RenderSpec};
use enthom::semimetric::DistanceKind;
use enthom::statevec;

fn to_py_err(e: enthom::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn settings(monotone: &str, zero_eps: f64) -> PyResult<MonotoneSettings> {
    let kind: MonotoneKind = monotone.parse().map_err(to_py_err)?;
    MonotoneSettings::new(kind, zero_eps).map_err(to_py_err)
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A normalized n-qubit pure state.
#[pyclass(name = "PureState", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPureState {
    inner: statevec::PureState,
}

#[pymethods]
impl PyPureState {
    /// Builds a state from `[(re, im), ...]`; the vector is normalized.
    #[new]
    fn new(n: usize, amplitudes: Vec<(f64, f64)>) -> PyResult<Self> {
        let amps = amplitudes
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        statevec::PureState::new(n, amps)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        statevec::named_state(name).map(|inner| Self { inner }).map_err(to_py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        statevec::parse_state(text).map(|inner| Self { inner }).map_err(to_py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<(f64, f64)> {
        self.inner.amplitudes().iter().map(|a| (a.re, a.im)).collect()
    }

    #[getter]
    fn normalization_factor(&self) -> f64 {
        self.inner.normalization_factor()
    }

    fn relabeled(&self, perm: Vec<usize>) -> PyResult<Self> {
        self.inner.relabeled(&perm).map(|inner| Self { inner }).map_err(to_py_err)
    }

    fn to_json(&self) -> String {
        statevec::state_to_json(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("PureState(n={})", self.inner.n())
    }
}

/// Persistence barcode; deaths are `float('inf')` for infinite bars.
#[pyclass(name = "Barcode", frozen)]
pub struct PyBarcode {
    inner: homology::Barcode,
}

#[pymethods]
impl PyBarcode {
    #[getter]
    fn max_dim(&self) -> usize {
        self.inner.max_dim()
    }

    fn bars(&self, dim: usize) -> Vec<(f64, f64)> {
        self.inner
            .bars(dim)
            .iter()
            .map(|b| (b.birth, b.death.to_f64()))
            .collect()
    }

    fn finite_count(&self, dim: usize) -> usize {
        self.inner.finite_count(dim)
    }

    fn infinite_count(&self, dim: usize) -> usize {
        self.inner.infinite_count(dim)
    }

    fn betti_at(&self, epsilon: f64) -> Vec<usize> {
        homology::betti_at(&self.inner, epsilon).betti
    }

    #[getter]
    fn signature(&self) -> String {
        enthom::classifier::BarcodeSignature::from_barcode(&self.inner).key()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[pyo3(signature = (eps_max=None))]
    fn render_ascii(&self, eps_max: Option<f64>) -> String {
        render_ascii(&self.inner, &RenderSpec { eps_max, ..Default::default() })
    }

    #[pyo3(signature = (eps_max=None))]
    fn render_svg(&self, eps_max: Option<f64>) -> String {
        render_svg(&self.inner, &RenderSpec { eps_max, ..Default::default() })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Barcode({})", self.signature())
    }
}

#[pyfunction]
fn named_states() -> Vec<&'static str> {
    statevec::NAMED_STATES.to_vec()
}

/// `E(A, B)` for the given monotone kind.
#[pyfunction]
#[pyo3(signature = (state, a, b, monotone="negativity", zero_eps=DEFAULT_ZERO_EPS))]
fn monotone(state: &PyPureState, a: Vec<usize>, b: Vec<usize>, monotone: &str, zero_eps: f64) -> PyResult<f64> {
    let s = settings(monotone, zero_eps)?;
    monotones::monotone(&state.inner, &a, &b, &s)
        .map(|v| if v.is_zero { 0.0 } else { v.value })
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (state, which="D", monotone="negativity", zero_eps=DEFAULT_ZERO_EPS))]
fn distance_matrix(state: &PyPureState, which: &str, monotone: &str, zero_eps: f64) -> PyResult<Vec<Vec<f64>>> {
    let which: DistanceKind = which.parse().map_err(to_py_err)?;
    let dm = enthom::semimetric::distance_matrix(&state.inner, which, &settings(monotone, zero_eps)?)
        .map_err(to_py_err)?;
    Ok(dm.rows().iter().map(|r| r.iter().map(|d| d.to_f64()).collect()).collect())
}

#[pyfunction]
#[pyo3(signature = (state, which="D", complex="rips", monotone="negativity", max_dim=2, zero_eps=DEFAULT_ZERO_EPS))]
fn barcode(
    state: &PyPureState,
    which: &str,
    complex: &str,
    monotone: &str,
    max_dim: usize,
    zero_eps: f64,
) -> PyResult<PyBarcode> {
    let which: DistanceKind = which.parse().map_err(to_py_err)?;
    let complex: ComplexKind = complex.parse().map_err(to_py_err)?;
    let a = pipeline::analyze(&state.inner, which, &settings(monotone, zero_eps)?, complex, max_dim)
        .map_err(to_py_err)?;
    Ok(PyBarcode { inner: a.barcode })
}

/// Full analysis as a dict: state, distance matrix, barcode, signature.
#[pyfunction]
#[pyo3(signature = (state, which="D", complex="rips", monotone="negativity", max_dim=2, zero_eps=DEFAULT_ZERO_EPS))]
fn analyze<'py>(
    py: Python<'py>,
    state: &PyPureState,
    which: &str,
    complex: &str,
    monotone: &str,
    max_dim: usize,
    zero_eps: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let which: DistanceKind = which.parse().map_err(to_py_err)?;
    let complex: ComplexKind = complex.parse().map_err(to_py_err)?;
    let a = pipeline::analyze(&state.inner, which, &settings(monotone, zero_eps)?, complex, max_dim)
        .map_err(to_py_err)?;
    json_to_py(py, &a.to_json())
}

/// Separability and genuine-entanglement labels as a dict.
#[pyfunction]
#[pyo3(signature = (state, monotone="negativity", max_dim=2, zero_eps=DEFAULT_ZERO_EPS))]
fn classify<'py>(
    py: Python<'py>,
    state: &PyPureState,
    monotone: &str,
    max_dim: usize,
    zero_eps: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let c = pipeline::classify(&state.inner, &settings(monotone, zero_eps)?, max_dim)
        .map_err(to_py_err)?;
    json_to_py(py, &c.to_json())
}

#[pyfunction]
#[pyo3(signature = (n, samples, seed=0, complex="rips", monotone="negativity", max_dim=2, zero_eps=DEFAULT_ZERO_EPS))]
#[allow(clippy::too_many_arguments)]
fn survey<'py>(
    py: Python<'py>,
    n: usize,
    samples: usize,
    seed: u64,
    complex: &str,
    monotone: &str,
    max_dim: usize,
    zero_eps: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let complex: ComplexKind = complex.parse().map_err(to_py_err)?;
    let s = settings(monotone, zero_eps)?;
    let report = py
        .detach(|| enthom::survey::survey(n, samples, seed, &s, complex, max_dim))
        .map_err(to_py_err)?;
    json_to_py(py, &serde_json::to_value(&report).expect("report serializes"))
}

#[pyfunction]
fn bound(n: usize) -> PyResult<u64> {
    barcode_count_bound(n).map_err(to_py_err)
}

#[pymodule]
pub fn pyenthom(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyBarcode>()?;
    m.add_function(wrap_pyfunction!(named_states, m)?)?;
    m.add_function(wrap_pyfunction!(monotone, m)?)?;
    m.add_function(wrap_pyfunction!(distance_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(barcode, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(survey, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    Ok(())
}
