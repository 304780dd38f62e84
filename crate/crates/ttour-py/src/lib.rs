//! Python bindings for the ttour toolkit: instance construction plus the
//! solve/certify/oracle/constants pipeline. Reports cross the boundary as
//! JSON strings with rationals rendered `p/q`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::str::FromStr;
use ttour_core::{cli, Caps, Error, Rat};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_beta(beta: &str) -> PyResult<Rat> {
    Rat::from_str(beta).map_err(to_py_err)
}

/// A weighted instance: connected graph, even terminal set, rational lengths.
#[pyclass(name = "Instance", skip_from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    inner: ttour_core::Instance,
}

#[pymethods]
impl PyInstance {
    /// Parses the text format: `n m |T|`, a terminal line, then `u v weight`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyInstance {
            inner: cli::parse_instance(text).map_err(to_py_err)?,
        })
    }

    /// Deterministic random instance (same seed, same instance).
    #[staticmethod]
    #[pyo3(signature = (n, m, seed, t_size, max_numerator = 9))]
    fn random(n: usize, m: usize, seed: u64, t_size: usize, max_numerator: i64) -> PyResult<Self> {
        Ok(PyInstance {
            inner: cli::gen_random(n, m, seed, t_size, max_numerator).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn terminals(&self) -> Vec<usize> {
        self.inner.terminals().iter().copied().collect()
    }

    /// Renders the instance in the same text format `parse` accepts.
    fn to_text(&self) -> String {
        cli::format_instance(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, |T|={})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.terminals().len()
        )
    }
}

/// Relaxation + tree decomposition + best-of-many parity correction.
/// Returns the full report as JSON.
#[pyfunction]
fn solve(inst: &PyInstance) -> PyResult<String> {
    cli::solve_report_json(&inst.inner, "<python>", &Caps::default()).map_err(to_py_err)
}

/// Solve, then verify every analysis inequality exactly at the given beta.
/// Returns (all_pass, report_json).
#[pyfunction]
#[pyo3(signature = (inst, beta = "4/9"))]
fn certify(inst: &PyInstance, beta: &str) -> PyResult<(bool, String)> {
    let beta = parse_beta(beta)?;
    cli::certify_report_json(&inst.inner, "<python>", &beta, &Caps::default()).map_err(to_py_err)
}

/// Brute-force optimum and oracle cross-checks as JSON.
#[pyfunction]
fn oracle(inst: &PyInstance) -> PyResult<String> {
    cli::oracle_report_json(&inst.inner, "<python>", &Caps::default()).map_err(to_py_err)
}

/// Exact optimum tour length (brute force; edge count capped) as `p/q`.
#[pyfunction]
fn opt_value(inst: &PyInstance) -> PyResult<String> {
    let opt = ttour_core::bom::brute_force_opt(&inst.inner, Caps::default().bruteforce_edges)
        .map_err(to_py_err)?;
    Ok(opt.length.to_string())
}

/// Exact relaxation optimum as `p/q`.
#[pyfunction]
fn lp_value(inst: &PyInstance) -> PyResult<String> {
    let sol = ttour_core::lp::solve_relaxation(&inst.inner, &Caps::default()).map_err(to_py_err)?;
    Ok(sol.value.to_string())
}

/// Constants table, exact 4/9 row and mixed-bound minimization as JSON.
#[pyfunction]
fn constants() -> PyResult<String> {
    cli::constants_report_json().map_err(to_py_err)
}

/// Minimizes the two-variable mixed bound; returns (beta, y, epsilon).
#[pyfunction]
fn mixed_bound_minimum() -> (f64, f64, f64) {
    let min = ttour_core::analysis::minimize_mixed_bound(0.2);
    (min.beta, min.y, min.epsilon)
}

#[pymodule]
fn ttour_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(opt_value, m)?)?;
    m.add_function(wrap_pyfunction!(lp_value, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_bound_minimum, m)?)?;
    Ok(())
}
