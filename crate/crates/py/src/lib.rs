//! Python module `pforge`: group algebra elements, diagonal forms and
//! Pfister numbers.

use pforge_core::witt::form::{monomial_word, parse_entry};
use pforge_core::{
    self as core, DiagonalForm, F2Vector, GroupAlgebraElement, LinearMap, SearchConfig, Strategy,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::BudgetExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A vector from an int (raw bits, e1 is the top bit), a bitstring, or a
/// word such as "x1*x3".
fn vector(n: usize, v: &Bound<'_, PyAny>) -> PyResult<F2Vector> {
    if let Ok(bits) = v.extract::<u32>() {
        return F2Vector::new(n, bits).map_err(err);
    }
    let s: String = v.extract()?;
    parse_entry(n, &s).map_err(err)
}

fn vectors(n: usize, items: &Bound<'_, PyAny>) -> PyResult<Vec<F2Vector>> {
    items.try_iter()?.map(|v| vector(n, &v?)).collect()
}

fn search_config(budget: Option<u64>, strategy: &str) -> PyResult<SearchConfig> {
    let strategy: Strategy = strategy.parse().map_err(err)?;
    Ok(SearchConfig::with_budget(budget.unwrap_or(SearchConfig::DEFAULT_BUDGET)).strategy(strategy))
}

/// An element of F2[V], V = (Z/2)^n, given by its support.
#[pyclass(name = "Element", module = "pforge", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyElement(GroupAlgebraElement);

#[pymethods]
impl PyElement {
    /// Sum of X^v over `support`; repeated vectors cancel in pairs.
    #[new]
    fn new(n: usize, support: &Bound<'_, PyAny>) -> PyResult<Self> {
        let vs = vectors(n, support)?;
        GroupAlgebraElement::from_vectors(n, vs).map(Self).map_err(err)
    }

    /// Parses a canonical key such as "3:000,011,101,110".
    #[staticmethod]
    fn from_key(key: &str) -> PyResult<Self> {
        GroupAlgebraElement::parse_canonical_key(key).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("element serializes")
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn key(&self) -> String {
        self.0.canonical_key()
    }

    /// Support as bitstrings in increasing order.
    #[getter]
    fn support(&self) -> Vec<String> {
        self.0.support().map(|v| v.to_bitstring()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.support_len()
    }

    fn __bool__(&self) -> bool {
        !self.0.is_zero()
    }

    fn epsilon0(&self) -> bool {
        self.0.epsilon0()
    }

    fn epsilon1(&self) -> String {
        self.0.epsilon1().to_bitstring()
    }

    fn in_i(&self) -> bool {
        self.0.in_fundamental_ideal()
    }

    fn in_i2(&self) -> bool {
        self.0.in_i2()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    /// Product with X^v.
    fn scale(&self, v: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = vector(self.0.dim(), v)?;
        self.0.scale(&v).map(Self).map_err(err)
    }

    /// Image under the linear map V -> F2^m sending e_i to `columns[i-1]`.
    fn pushforward(&self, m: usize, columns: &Bound<'_, PyAny>) -> PyResult<Self> {
        let cols = vectors(m, columns)?;
        let phi = LinearMap::new(self.0.dim(), m, cols).map_err(err)?;
        self.0.pushforward(&phi).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.0.canonical_key())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A diagonal form over x1..xn with monomial entries.
#[pyclass(name = "Form", module = "pforge", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyForm(DiagonalForm);

#[pymethods]
impl PyForm {
    /// `entries` is a string such as "<1, x1*x2, x3>" or a list of ints,
    /// bitstrings or words.
    #[new]
    fn new(n: usize, entries: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = entries.extract::<String>() {
            return DiagonalForm::parse(n, &text).map(Self).map_err(err);
        }
        let vs = vectors(n, entries)?;
        DiagonalForm::new(n, vs).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.ambient_dim()
    }

    /// Entries as words ("1", "x1*x3", ...).
    #[getter]
    fn entries(&self) -> Vec<String> {
        self.0.entries().map(|v| monomial_word(&v)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn discriminant(&self) -> String {
        monomial_word(&self.0.discriminant())
    }

    fn is_anisotropic(&self) -> bool {
        self.0.is_anisotropic()
    }

    /// Witt class in F2[V].
    fn theta(&self) -> PyElement {
        PyElement(self.0.theta())
    }

    fn scaled(&self, v: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = vector(self.0.ambient_dim(), v)?;
        self.0.scaled(&v).map(Self).map_err(err)
    }

    /// Total Stiefel-Whitney class as a list of exterior words.
    fn sw_total(&self) -> Vec<String> {
        core::sw_total(&self.0).words()
    }

    fn w4(&self) -> Vec<String> {
        core::w4(&self.0).words()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("form serializes")
    }

    fn __repr__(&self) -> String {
        format!("Form({}, {:?})", self.0.ambient_dim(), self.0.to_string())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn terms(d: &core::Decomposition) -> Vec<Vec<String>> {
    d.terms()
        .iter()
        .map(|t| t.generators().iter().map(|v| v.to_bitstring()).collect())
        .collect()
}

#[pyfunction]
fn xi_e(n: usize) -> PyResult<PyElement> {
    core::xi_e(n).map(PyElement).map_err(err)
}

#[pyfunction]
fn pf1(x: &PyElement) -> PyResult<u32> {
    core::pf1_exact(&x.0).map_err(err)
}

/// Exact search; returns a dict with status, value (None when bounded),
/// lower, upper, nodes and witness (list of [u, v] pairs).
#[pyfunction]
#[pyo3(signature = (x, budget=None, strategy="iddfs"))]
fn pf2<'py>(
    py: Python<'py>,
    x: &PyElement,
    budget: Option<u64>,
    strategy: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = search_config(budget, strategy)?;
    let out = py.detach(|| core::pf2_exact(&x.0, &cfg)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("status", if out.is_exact() { "exact" } else { "bounded" })?;
    d.set_item("value", out.value)?;
    d.set_item("lower", out.lower)?;
    d.set_item("upper", out.upper)?;
    d.set_item("nodes", out.nodes_visited)?;
    d.set_item("witness", out.witness.as_ref().map(terms))?;
    Ok(d)
}

#[pyfunction]
fn pf2_upper(x: &PyElement) -> PyResult<u32> {
    core::pf2_upper(&x.0).map_err(err)
}

/// Greedy 2-fold decomposition as a list of [u, v] pairs.
#[pyfunction]
fn greedy(x: &PyElement) -> PyResult<Vec<Vec<String>>> {
    core::decompose_pf2_greedy(&x.0).map(|d| terms(&d)).map_err(err)
}

/// {"q": ..., "q0": ..., "qp": ..., "qp0": ...}
#[pyfunction]
fn generic_forms(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyDict>> {
    let g = core::generic_forms(n).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("q", PyForm(g.q))?;
    d.set_item("q0", PyForm(g.q0))?;
    d.set_item("qp", PyForm(g.qp))?;
    d.set_item("qp0", PyForm(g.qp0))?;
    Ok(d)
}

fn witness_dict<'py>(py: Python<'py>, w: &core::Le3Witness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("q1", PyForm(w.q1.clone()))?;
    d.set_item("mu", w.mu.to_bitstring())?;
    d.set_item("mu_prime", w.mu_prime.to_bitstring())?;
    d.set_item("nu", w.nu.to_bitstring())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (form, budget=None))]
fn le3_witness<'py>(
    py: Python<'py>,
    form: &PyForm,
    budget: Option<u64>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let cfg = search_config(budget, "iddfs")?;
    let w = py.detach(|| core::pf2_le3_witness(&form.0, &cfg)).map_err(err)?;
    w.map(|w| witness_dict(py, &w)).transpose()
}

#[pyfunction]
#[pyo3(signature = (form, budget=None))]
fn classify_dim6<'py>(
    py: Python<'py>,
    form: &PyForm,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = search_config(budget, "iddfs")?;
    let r = py.detach(|| core::classify_dim6(&form.0, &cfg)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("pf2", r.pf2.value)?;
    d.set_item("pf2_lower", r.pf2.lower)?;
    d.set_item("pf2_upper", r.pf2.upper)?;
    d.set_item("represents_one", r.represents_one)?;
    d.set_item("w4_vanishes", r.w4_vanishes)?;
    d.set_item("le3_witness", r.le3_witness.as_ref().map(|w| witness_dict(py, w)).transpose()?)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (n, require_one=false))]
fn enumerate_dim6(py: Python<'_>, n: usize, require_one: bool) -> PyResult<Bound<'_, PyList>> {
    let forms: Vec<PyForm> = core::enumerate_dim6(n, require_one).map_err(err)?.map(PyForm).collect();
    PyList::new(py, forms)
}

#[pymodule]
fn pforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(xi_e, m)?)?;
    m.add_function(wrap_pyfunction!(pf1, m)?)?;
    m.add_function(wrap_pyfunction!(pf2, m)?)?;
    m.add_function(wrap_pyfunction!(pf2_upper, m)?)?;
    m.add_function(wrap_pyfunction!(greedy, m)?)?;
    m.add_function(wrap_pyfunction!(generic_forms, m)?)?;
    m.add_function(wrap_pyfunction!(le3_witness, m)?)?;
    m.add_function(wrap_pyfunction!(classify_dim6, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_dim6, m)?)?;
    Ok(())
}
