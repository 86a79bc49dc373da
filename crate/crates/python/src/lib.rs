//! Python bindings: polynomials, tori, annihilators, line decompositions,
//! SFT decisions and co-tilers. Structured results come back as plain
//! dicts built from the library's JSON forms.

use nivat_core::annihilator::{find_annihilator, find_binomial_product_annihilator};
use nivat_core::applications::{
    antenna_classify, exact_cover, find_periodic_cotiler, plus_perfect_code, AntennaProblem, ClusterTile,
};
use nivat_core::lines::{classify as classify_poly, eliminate_and_classify_fp, line_factor_decomposition, Role};
use nivat_core::sft::{decide as decide_sft, Budget, SftSpec};
use nivat_core::{CoefficientDomain, Exp, LaurentPoly, Shape, Source, TorusConfig};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(nivat, NivatError, PyValueError, "Raised for any library error; the message starts with its code.");

fn err(e: nivat_core::Error) -> PyErr {
    NivatError::new_err(format!("{}: {e}", e.code()))
}

/// Serializes with serde_json and hands the text to Python's `json.loads`.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn domain(field: &str) -> PyResult<CoefficientDomain> {
    field.parse().map_err(err)
}

/// A shape is `"rect:WxH"`, `"plus"`, a JSON list, or a list of `(x, y)`.
fn shape_arg(obj: &Bound<'_, PyAny>) -> PyResult<Shape> {
    if let Ok(s) = obj.extract::<String>() {
        return Shape::parse_spec(&s).map_err(err);
    }
    let cells: Vec<(i64, i64)> = obj.extract()?;
    Shape::new(cells.into_iter().map(|(x, y)| Exp::new(x, y))).map_err(err)
}

fn role_arg(role: &str) -> PyResult<Role> {
    match role {
        "annihilates" => Ok(Role::Annihilates),
        "periodizes" => Ok(Role::Periodizes),
        other => Err(PyValueError::new_err(format!("unknown role {other:?}"))),
    }
}

/// Laurent polynomial in `x` and `y` over Z, Q or F_p.
#[pyclass(name = "Poly", module = "nivat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPoly {
    inner: LaurentPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, field = "Z"))]
    fn new(text: &str, field: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: LaurentPoly::parse(text, domain(field)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| NivatError::new_err(format!("ParseError: {e}")))?;
        Ok(PyPoly { inner })
    }

    #[staticmethod]
    fn difference_binomial(x: i64, y: i64) -> Self {
        PyPoly { inner: LaurentPoly::difference_binomial(CoefficientDomain::Integers, Exp::new(x, y)) }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("polynomials serialize")
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.domain().to_string()
    }

    /// `(x, y, coefficient)` triples in ascending exponent order.
    fn terms(&self) -> Vec<(i64, i64, String)> {
        nivat_core::poly::PolyJson::from(&self.inner).terms
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', field='{}')", self.inner, self.inner.domain())
    }
}

/// A `k × l` torus; `rows[y][x]`.
#[pyclass(name = "Torus", module = "nivat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyTorus {
    inner: TorusConfig,
}

#[pymethods]
impl PyTorus {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyTorus { inner: TorusConfig::from_rows(&rows, None).map_err(err)? })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn l(&self) -> usize {
        self.inner.l()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.rows()
    }

    fn get(&self, x: i64, y: i64) -> i64 {
        self.inner.get(Exp::new(x, y))
    }

    fn is_period(&self, x: i64, y: i64) -> bool {
        self.inner.is_period(Exp::new(x, y))
    }

    fn is_annihilated(&self, f: &PyPoly) -> PyResult<bool> {
        Ok(self.inner.is_annihilated(&f.inner).map_err(err)?.holds())
    }

    fn apply(&self, f: &PyPoly) -> PyResult<Self> {
        Ok(PyTorus { inner: self.inner.apply(&f.inner).map_err(err)? })
    }

    fn detect_periods<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.detect_periods())
    }

    fn period_lattice_index(&self) -> usize {
        self.inner.period_lattice_index()
    }

    fn complexity<'py>(&self, py: Python<'py>, shape: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let c = Source::Torus(self.inner.clone()).complexity(&shape_arg(shape)?).map_err(err)?;
        to_py(py, &c)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("tori serialize")
    }

    fn __repr__(&self) -> String {
        format!("Torus({:?})", self.inner.rows())
    }
}

/// Annihilator from the `shape`-patterns of a torus.
#[pyfunction]
fn annihilator<'py>(py: Python<'py>, torus: &PyTorus, shape: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let patterns = Source::Torus(torus.inner.clone()).extract_patterns(&shape_arg(shape)?).map_err(err)?;
    to_py(py, &find_annihilator(&patterns).map_err(err)?)
}

/// First product of at most `max_m` difference binomials annihilating the torus.
#[pyfunction]
#[pyo3(signature = (torus, max_t = 6, max_m = 2))]
fn binomial_annihilator<'py>(py: Python<'py>, torus: &PyTorus, max_t: i64, max_m: usize) -> PyResult<Bound<'py, PyAny>> {
    let found = find_binomial_product_annihilator(&Source::Torus(torus.inner.clone()), max_t, max_m).map_err(err)?;
    to_py(py, &found)
}

#[pyfunction]
fn decompose<'py>(py: Python<'py>, f: &PyPoly) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &line_factor_decomposition(&f.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (f, role = "annihilates"))]
fn classify<'py>(py: Python<'py>, f: &PyPoly, role: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &classify_poly(&f.inner, role_arg(role)?).map_err(err)?)
}

#[pyfunction]
fn eliminate_fp<'py>(py: Python<'py>, f: &PyPoly, g: &PyPoly) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &eliminate_and_classify_fp(&f.inner, &g.inner).map_err(err)?)
}

fn budget(max_window: usize, max_torus: usize, max_nodes: u64) -> Budget {
    Budget { max_window, max_torus, max_nodes }
}

/// Decides the SFT with the given allowed patterns (listed in the shape's
/// sorted cell order).
#[pyfunction]
#[pyo3(signature = (shape, alphabet, allowed, max_window = 8, max_torus = 6, max_nodes = 2_000_000))]
fn decide<'py>(
    py: Python<'py>,
    shape: &Bound<'py, PyAny>,
    alphabet: Vec<i64>,
    allowed: Vec<Vec<i64>>,
    max_window: usize,
    max_torus: usize,
    max_nodes: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = SftSpec::new(shape_arg(shape)?, alphabet, allowed).map_err(err)?;
    to_py(py, &decide_sft(&spec, budget(max_window, max_torus, max_nodes)))
}

#[pyfunction]
#[pyo3(signature = (shape, max_window = 8, max_torus = 6, max_nodes = 2_000_000))]
fn find_cotiler<'py>(
    py: Python<'py>,
    shape: &Bound<'py, PyAny>,
    max_window: usize,
    max_torus: usize,
    max_nodes: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let tile = ClusterTile { shape: shape_arg(shape)? };
    to_py(py, &find_periodic_cotiler(&tile, budget(max_window, max_torus, max_nodes)).map_err(err)?)
}

#[pyfunction]
fn is_exact_cover(shape: &Bound<'_, PyAny>, torus: &PyTorus) -> PyResult<bool> {
    exact_cover(&ClusterTile { shape: shape_arg(shape)? }, &torus.inner).map_err(err)
}

#[pyfunction]
fn antenna<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>, a: i64, b: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &antenna_classify(&AntennaProblem { shape: shape_arg(shape)?, a, b }).map_err(err)?)
}

#[pyfunction]
fn perfect_code() -> PyTorus {
    PyTorus { inner: plus_perfect_code() }
}

#[pymodule]
fn nivat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NivatError", m.py().get_type::<NivatError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyTorus>()?;
    m.add_function(wrap_pyfunction!(annihilator, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_annihilator, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate_fp, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(find_cotiler, m)?)?;
    m.add_function(wrap_pyfunction!(is_exact_cover, m)?)?;
    m.add_function(wrap_pyfunction!(antenna, m)?)?;
    m.add_function(wrap_pyfunction!(perfect_code, m)?)?;
    Ok(())
}
