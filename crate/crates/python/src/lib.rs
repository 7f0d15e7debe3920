//! Python bindings for `ideal_space`.
//!
//! Structured results (oracle reports, limit reports, selftest suites) are
//! returned as plain Python dicts built from their JSON form.

use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ideal_space::idealspace::{self, Subspace};
use ideal_space::kergin;
use ideal_space::limits::{self, ConfigCurve};
use ideal_space::linalg::from_rows;
use ideal_space::polycalc::multi_index::below_degree;
use ideal_space::polycalc::{MultiIndex, MultivariatePolynomial};
use ideal_space::{selftest, Error, Tolerances};

fn err(e: Error) -> PyErr {
    match e.exit_code() {
        1 => PyValueError::new_err(e.to_string()),
        2 => PyArithmeticError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "WeightedConfig", module = "ideal_space", skip_from_py_object)]
#[derive(Clone)]
struct PyConfig(ideal_space::WeightedConfig);

#[pymethods]
impl PyConfig {
    /// `clusters`: list of `(point, weight)`.
    #[new]
    fn new(clusters: Vec<(Vec<f64>, u32)>) -> PyResult<Self> {
        ideal_space::WeightedConfig::new(clusters).map(PyConfig).map_err(err)
    }

    #[getter]
    fn clusters(&self) -> Vec<(Vec<f64>, u32)> {
        self.0.clusters().to_vec()
    }

    #[getter]
    fn total_weight(&self) -> u32 {
        self.0.total_weight()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn distance_to(&self, other: PyRef<'_, PyConfig>) -> Option<f64> {
        self.0.distance_to(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("WeightedConfig({})", self.0)
    }
}

#[pyclass(name = "Polynomial", module = "ideal_space", skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial(MultivariatePolynomial);

#[pymethods]
impl PyPolynomial {
    /// `terms`: list of `(exponents, coefficient)`.
    #[new]
    fn new(dim: usize, terms: Vec<(Vec<u32>, f64)>) -> PyResult<Self> {
        MultivariatePolynomial::from_terms(dim, terms.into_iter().map(|(a, c)| (MultiIndex::new(a), c)))
            .map(PyPolynomial)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyPolynomial)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn terms(&self) -> Vec<(Vec<u32>, f64)> {
        self.0.terms().map(|(a, c)| (a.entries().to_vec(), c)).collect()
    }

    fn coeff(&self, alpha: Vec<u32>) -> f64 {
        self.0.coeff(&MultiIndex::new(alpha))
    }

    fn __call__(&self, x: Vec<f64>) -> PyResult<f64> {
        self.0.eval(&x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.to_json().unwrap_or_default())
    }
}

#[pyclass(name = "InterpolationOperator", module = "ideal_space")]
struct PyOperator(kergin::InterpolationOperator);

#[pymethods]
impl PyOperator {
    /// `A(Y, ·)` on the default complement among monomials of degree
    /// `< deg` (default: the total weight).
    #[new]
    #[pyo3(signature = (config, deg = None))]
    fn new(config: PyRef<'_, PyConfig>, deg: Option<u32>) -> PyResult<Self> {
        let c = &config.0;
        let deg = deg.unwrap_or(c.total_weight());
        kergin::InterpolationOperator::with_default_complement(
            c.coalesced_tuples(),
            &below_degree(c.dim(), deg),
            &Tolerances::default(),
        )
        .map(PyOperator)
        .map_err(err)
    }

    /// Kergin-type operator over explicit ordered cluster tuples.
    #[staticmethod]
    #[pyo3(signature = (tuples, deg))]
    fn from_tuples(tuples: Vec<Vec<Vec<f64>>>, deg: u32) -> PyResult<Self> {
        let m = tuples.first().and_then(|t| t.first()).map_or(0, Vec::len);
        kergin::InterpolationOperator::with_default_complement(tuples, &below_degree(m, deg), &Tolerances::default())
            .map(PyOperator)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        kergin::InterpolationOperator::from_json(text).map(PyOperator).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    fn interpolate(&self, f: PyRef<'_, PyPolynomial>) -> PyResult<PyPolynomial> {
        self.0.interpolate(&f.0).map(PyPolynomial).map_err(err)
    }

    fn jet_residual(&self, f: PyRef<'_, PyPolynomial>) -> PyResult<f64> {
        self.0.jet_residual(&f.0).map_err(err)
    }

    #[getter]
    fn condition_number(&self) -> f64 {
        self.0.condition_number()
    }

    #[getter]
    fn basis(&self) -> Vec<PyPolynomial> {
        self.0.basis().iter().cloned().map(PyPolynomial).collect()
    }
}

#[pyclass(name = "IdealPoint", module = "ideal_space", skip_from_py_object)]
#[derive(Clone)]
struct PyIdealPoint(idealspace::IdealPoint);

fn transversal(m: usize, deg: u32) -> PyResult<idealspace::Transversal> {
    idealspace::monomial_transversal(m, deg).map_err(err)
}

#[pymethods]
impl PyIdealPoint {
    /// Pairs `config` with the span of the `frame` rows (coordinates in
    /// the monomials of degree `< deg`) and runs the membership oracle.
    /// Returns the point and the oracle report.
    #[staticmethod]
    fn certify<'py>(
        py: Python<'py>,
        config: PyRef<'_, PyConfig>,
        deg: u32,
        frame: Vec<Vec<f64>>,
    ) -> PyResult<(PyIdealPoint, Bound<'py, PyAny>)> {
        let tol = Tolerances::default();
        let f = transversal(config.0.dim(), deg)?;
        if frame.iter().any(|r| r.len() != f.dim()) {
            return Err(PyValueError::new_err(format!("frame rows must have {} entries", f.dim())));
        }
        let cols = from_rows(&frame, f.dim()).transpose();
        let l = Subspace::from_spanning(f, &cols, tol.rank).map_err(err)?;
        let (p, report) = idealspace::IdealPoint::certify(config.0.clone(), l, &tol).map_err(err)?;
        Ok((PyIdealPoint(p), to_py(py, &report)?))
    }

    /// `F ∩ m_Y` for distinct points.
    #[staticmethod]
    fn from_points(points: Vec<Vec<f64>>, deg: u32) -> PyResult<Self> {
        let m = points.first().map_or(0, Vec::len);
        idealspace::ideal_from_points(&transversal(m, deg)?, &points, &Tolerances::default())
            .map(PyIdealPoint)
            .map_err(err)
    }

    /// Curvilinear ideal of length `k` at `y` along the germ
    /// `y + t·v_1 + t²·v_2 + …`.
    #[staticmethod]
    fn curvilinear(y: Vec<f64>, germ: Vec<Vec<f64>>, k: u32, deg: u32) -> PyResult<Self> {
        idealspace::curvilinear_ideal(&transversal(y.len(), deg)?, &y, &germ, k, &Tolerances::default())
            .map(PyIdealPoint)
            .map_err(err)
    }

    /// `m_y^j`.
    #[staticmethod]
    fn power_of_maximal(y: Vec<f64>, j: u32, deg: u32) -> PyResult<Self> {
        idealspace::power_of_maximal(&transversal(y.len(), deg)?, &y, j, &Tolerances::default())
            .map(PyIdealPoint)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        idealspace::IdealPoint::from_json(text).map(PyIdealPoint).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    #[getter]
    fn config(&self) -> PyConfig {
        PyConfig(self.0.config().clone())
    }

    #[getter]
    fn certified(&self) -> bool {
        self.0.certified()
    }

    #[getter]
    fn codim(&self) -> usize {
        self.0.codim()
    }

    /// Orthonormal frame of `L`, one row per basis vector.
    #[getter]
    fn frame(&self) -> Vec<Vec<f64>> {
        self.0.subspace().frame_rows()
    }

    fn generators(&self) -> Vec<PyPolynomial> {
        self.0.subspace().polys().into_iter().map(PyPolynomial).collect()
    }

    fn distance_to(&self, other: PyRef<'_, PyIdealPoint>) -> PyResult<f64> {
        idealspace::subspace_distance(self.0.subspace(), other.0.subspace()).map_err(err)
    }

    /// Weighted spectrum recovered from the quotient algebra.
    fn wspec(&self) -> PyResult<PyConfig> {
        let tol = Tolerances::default();
        let q = idealspace::quotient_algebra(&self.0, &tol).map_err(err)?;
        idealspace::wspec_from_algebra(&q, &tol).map(PyConfig).map_err(err)
    }

    fn primary_decomposition(&self) -> PyResult<Vec<PyIdealPoint>> {
        idealspace::primary_decomposition(self.0.transversal(), &self.0, &Tolerances::default())
            .map(|parts| parts.into_iter().map(PyIdealPoint).collect())
            .map_err(err)
    }

    fn quotient(&self) -> PyResult<PyQuotient> {
        idealspace::quotient_algebra(&self.0, &Tolerances::default())
            .map(PyQuotient)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "IdealPoint({}, codim={}, certified={})",
            self.0.config(),
            self.0.codim(),
            self.0.certified()
        )
    }
}

#[pyclass(name = "QuotientAlgebra", module = "ideal_space")]
struct PyQuotient(idealspace::QuotientAlgebra);

#[pymethods]
impl PyQuotient {
    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn unit(&self) -> Vec<f64> {
        self.0.unit().to_vec()
    }

    /// `c[a][b][e]` with `b_a b_b = Σ_e c[a][b][e] b_e`.
    #[getter]
    fn structure_constants(&self) -> Vec<Vec<Vec<f64>>> {
        let d = self.0.dim();
        (0..d)
            .map(|a| (0..d).map(|b| (0..d).map(|e| self.0.structure_constant(a, b, e)).collect()).collect())
            .collect()
    }

    fn reduce(&self, f: PyRef<'_, PyPolynomial>) -> PyResult<Vec<f64>> {
        self.0.reduce(&f.0).map_err(err)
    }

    fn multiply(&self, u: Vec<f64>, v: Vec<f64>) -> PyResult<Vec<f64>> {
        let d = self.0.dim();
        if u.len() != d || v.len() != d {
            return Err(PyValueError::new_err(format!("coordinates must have length {d}")));
        }
        Ok(self.0.multiply(&u, &v))
    }

    /// Multiplication matrices of the coordinate functions.
    fn coordinate_operators(&self) -> Vec<Vec<Vec<f64>>> {
        self.0
            .coordinate_operators()
            .iter()
            .map(|m| m.row_iter().map(|r| r.iter().copied().collect()).collect())
            .collect()
    }
}

/// Membership oracle for `(config, span of frame rows)`.
#[pyfunction]
fn membership_oracle<'py>(
    py: Python<'py>,
    config: PyRef<'_, PyConfig>,
    deg: u32,
    frame: Vec<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    PyIdealPoint::certify(py, config, deg, frame).map(|(_, report)| report)
}

/// Collision limit of a moving configuration inside monomials of degree
/// `< deg`. `paths[i][j]` lists the ascending coefficients in `t` of
/// coordinate `j` of point `i`.
#[pyfunction]
#[pyo3(signature = (paths, deg = None, order = limits::DEFAULT_ORDER))]
fn limit<'py>(
    py: Python<'py>,
    paths: Vec<Vec<Vec<f64>>>,
    deg: Option<u32>,
    order: usize,
) -> PyResult<(PyIdealPoint, Bound<'py, PyAny>)> {
    let m = paths
        .first()
        .map(Vec::len)
        .ok_or_else(|| PyValueError::new_err("paths must be non-empty"))?;
    let curve = ConfigCurve::new(m, paths, 1.0).map_err(err)?;
    let f = transversal(m, deg.unwrap_or(curve.len() as u32 + 1))?;
    let report = limits::limit_ideal(&f, &curve, &limits::default_schedule(), order, &Tolerances::default())
        .map_err(err)?;
    Ok((PyIdealPoint(report.limit.clone()), to_py(py, &report)?))
}

#[pyfunction]
fn gallery(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let entries = limits::collision_gallery(&Tolerances::default()).map_err(err)?;
    to_py(py, &entries)
}

#[pyfunction]
#[pyo3(signature = (m = 2, d = 2, deg = None, pairs = 500, seed = selftest::DEFAULT_SEED))]
fn probe_injectivity(
    py: Python<'_>,
    m: usize,
    d: usize,
    deg: Option<u32>,
    pairs: usize,
    seed: u64,
) -> PyResult<Bound<'_, PyAny>> {
    let f = transversal(m, deg.unwrap_or(d as u32 + 1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = idealspace::injectivity_probe(&f, d, pairs, &mut rng, &Tolerances::default()).map_err(err)?;
    to_py(py, &report)
}

/// All acceptance suites; one dict per criterion.
#[pyfunction]
#[pyo3(signature = (seed = selftest::DEFAULT_SEED))]
fn run_selftest(py: Python<'_>, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let results = selftest::run_all(seed, &selftest::SuiteSizes::default(), &Tolerances::default());
    to_py(py, &results)
}

#[pymodule]
#[pyo3(name = "ideal_space")]
fn ideal_space_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConfig>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyIdealPoint>()?;
    m.add_class::<PyQuotient>()?;
    m.add_function(wrap_pyfunction!(membership_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(limit, m)?)?;
    m.add_function(wrap_pyfunction!(gallery, m)?)?;
    m.add_function(wrap_pyfunction!(probe_injectivity, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
