//! Python bindings. Element indices are 1-based on this side, as in the
//! rendered normal form `(1 2 3)·C{1}`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rgroup::datum::{DatumDocument, DatumError, InducingDatum, ParseOptions};
use rgroup::elliptic::prime_family_report;
use rgroup::fixed_space::CoordinateModel;
use rgroup::fixtures::{fixture_json, FIXTURE_NAMES};
use rgroup::oracle::{run_oracle, Selection};
use rgroup::report::{build_report, render_text};
use rgroup::signed_weyl::weyl_group;
use rgroup::AnalysisError;

fn to_python<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn analysis_err(e: AnalysisError) -> PyErr {
    match e {
        AnalysisError::Inconsistent { .. } => PyRuntimeError::new_err(e.to_string()),
        AnalysisError::Unsupported(_) => PyValueError::new_err(e.to_string()),
    }
}

fn datum_err(e: DatumError) -> PyErr {
    match e {
        DatumError::Schema(msg) => PyValueError::new_err(format!("schema error: {msg}")),
        DatumError::Invalid(v) => {
            let lines: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            PyValueError::new_err(lines.join("\n"))
        }
    }
}

fn zero_based(indices: &[usize], rank: usize) -> PyResult<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(PyValueError::new_err(format!("index {i} is outside 1..={rank}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

/// An element `s·C_B` of the hyperoctahedral group.
#[pyclass(name = "SignedPermutation", module = "rgroup_py", eq, ord, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PySignedPermutation(rgroup::SignedPermutation);

#[pymethods]
impl PySignedPermutation {
    /// `images[i-1] = s(i)`; `flips` is the set `B`.
    #[new]
    #[pyo3(signature = (images, flips = Vec::new()))]
    fn new(images: Vec<usize>, flips: Vec<usize>) -> PyResult<Self> {
        let r = images.len();
        let perm = zero_based(&images, r)?;
        let flips = zero_based(&flips, r)?;
        rgroup::SignedPermutation::new(perm, flips).map(Self).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn identity(rank: usize) -> Self {
        Self(rgroup::SignedPermutation::identity(rank))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.0.perm().iter().map(|i| i + 1).collect()
    }

    #[getter]
    fn flips(&self) -> Vec<usize> {
        self.0.flips().iter().map(|i| i + 1).collect()
    }

    fn order(&self) -> usize {
        self.0.order()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn is_full_cycle(&self) -> bool {
        self.0.is_full_cycle()
    }

    fn permutation_part(&self) -> Self {
        Self(self.0.permutation_part())
    }

    /// Dimension of the fixed space in the coordinate model with these block sizes.
    fn fixed_space_dim(&self, blocks: Vec<u32>) -> PyResult<usize> {
        if blocks.len() != self.0.rank() {
            return Err(PyValueError::new_err("one block size per index is required"));
        }
        Ok(CoordinateModel::new(blocks).fixed_space_dim(&self.0))
    }

    fn is_regular(&self, blocks: Vec<u32>) -> PyResult<bool> {
        Ok(self.fixed_space_dim(blocks)? == 0)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignedPermutation({})", self.0)
    }
}

/// A validated inducing datum.
#[pyclass(name = "Datum", module = "rgroup_py", frozen)]
struct PyDatum(InducingDatum);

#[pymethods]
impl PyDatum {
    #[staticmethod]
    #[pyo3(signature = (text, strict_diff_rule = false))]
    fn from_json(text: &str, strict_diff_rule: bool) -> PyResult<Self> {
        rgroup::parse_datum(text, ParseOptions { strict_diff_rule }).map(Self).map_err(datum_err)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let text = fixture_json(name).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Self::from_json(&text, false)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<u32> {
        self.0.blocks.clone()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.0.warnings.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0.document).expect("document serializes")
    }

    /// The full report as a dict.
    #[pyo3(signature = (with_oracle = false))]
    fn analyze(&self, py: Python<'_>, with_oracle: bool) -> PyResult<Py<PyAny>> {
        let report = build_report(&self.0, with_oracle).map_err(analysis_err)?;
        to_python(py, &report)
    }

    fn report_text(&self) -> PyResult<String> {
        build_report(&self.0, false).map(|r| render_text(&r)).map_err(analysis_err)
    }

    /// `R(σ)` as signed permutations.
    fn r_group(&self) -> PyResult<Vec<PySignedPermutation>> {
        let a = rgroup::analyze(&self.0).map_err(analysis_err)?;
        Ok(a.r_sigma.into_iter().map(PySignedPermutation).collect())
    }

    fn __repr__(&self) -> String {
        format!("Datum(r={}, blocks={:?}, m={})", self.0.rank(), self.0.blocks, self.0.m)
    }
}

/// Violations as a list of dicts; empty when the datum is valid.
#[pyfunction]
#[pyo3(signature = (text, strict_diff_rule = false))]
fn validate(py: Python<'_>, text: &str, strict_diff_rule: bool) -> PyResult<Py<PyAny>> {
    let doc: DatumDocument =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("schema error: {e}")))?;
    let violations = match InducingDatum::from_document(doc, ParseOptions { strict_diff_rule }) {
        Ok(_) => Vec::new(),
        Err(DatumError::Invalid(v)) => v,
        Err(e) => return Err(datum_err(e)),
    };
    to_python(py, &violations)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    FIXTURE_NAMES.to_vec()
}

#[pyfunction]
fn fixture(name: &str) -> PyResult<String> {
    fixture_json(name).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Runs one suite, or all of them, over the generated data up to `r_max`.
#[pyfunction]
#[pyo3(signature = (scope = "all", r_max = 4))]
fn oracle(py: Python<'_>, scope: &str, r_max: usize) -> PyResult<Py<PyAny>> {
    let selection: Selection = scope.parse().map_err(PyValueError::new_err)?;
    let results = py.detach(|| run_oracle(selection, r_max)).map_err(PyValueError::new_err)?;
    to_python(py, &results)
}

#[pyfunction]
fn prime_family(py: Python<'_>, p: u32) -> PyResult<Py<PyAny>> {
    let report = prime_family_report(p).map_err(analysis_err)?;
    to_python(py, &report)
}

#[pyfunction]
fn weyl_group_elements(blocks: Vec<u32>) -> Vec<PySignedPermutation> {
    weyl_group(&blocks).into_iter().map(PySignedPermutation).collect()
}

#[pymodule]
fn rgroup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignedPermutation>()?;
    m.add_class::<PyDatum>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(prime_family, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_group_elements, m)?)?;
    Ok(())
}
