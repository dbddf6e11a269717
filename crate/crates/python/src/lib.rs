//! Python bindings for the theta, hypergeometric, triangle and modular routines.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use thetakit_core::modular::{self, GlobalRoute};
use thetakit_core::quad::QuadratureSpec;
use thetakit_core::theta::ThetaIndex;
use thetakit_core::verify::{self, Suite};
use thetakit_core::{hypergeo, measure, reprs, theta, triangle, Complex64, Error, Side};

const DEFAULT_TOL: f64 = 1e-8;

create_exception!(thetakit, DomainError, PyValueError);
create_exception!(thetakit, ConvergenceError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) => DomainError::new_err(e.to_string()),
        Error::Convergence(_) => ConvergenceError::new_err(e.to_string()),
        Error::InvalidMatrix(_) | Error::InvalidArgument(_) => PyValueError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A value with its absolute-error estimate and the method that produced it.
#[pyclass(frozen, name = "EvalResult")]
#[derive(Clone)]
struct PyEval {
    #[pyo3(get)]
    value: Complex64,
    #[pyo3(get)]
    abs_err: f64,
    #[pyo3(get)]
    method: &'static str,
}

#[pymethods]
impl PyEval {
    fn __repr__(&self) -> String {
        format!("EvalResult(value={}, abs_err={:e}, method='{}')", self.value, self.abs_err, self.method)
    }
}

impl From<thetakit_core::EvalResult> for PyEval {
    fn from(r: thetakit_core::EvalResult) -> Self {
        PyEval { value: r.value, abs_err: r.abs_err, method: r.method.name() }
    }
}

/// Result of a quadrature-based representation.
#[pyclass(frozen, name = "ReprResult")]
#[derive(Clone)]
struct PyRepr {
    #[pyo3(get)]
    value: Complex64,
    #[pyo3(get)]
    est_err: f64,
    #[pyo3(get)]
    nodes_used: usize,
}

#[pymethods]
impl PyRepr {
    fn __repr__(&self) -> String {
        format!("ReprResult(value={}, est_err={:e}, nodes_used={})", self.value, self.est_err, self.nodes_used)
    }
}

impl From<reprs::ReprResult> for PyRepr {
    fn from(r: reprs::ReprResult) -> Self {
        PyRepr { value: r.value, est_err: r.est_err, nodes_used: r.nodes_used }
    }
}

/// Matrix and reduced point taking `z` into the closed fundamental strip.
#[pyclass(frozen, name = "ReductionCertificate")]
struct PyCertificate {
    inner: modular::ReductionCertificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn input(&self) -> Complex64 {
        self.inner.input
    }
    /// `(a, b, c, d)`
    #[getter]
    fn matrix(&self) -> (i64, i64, i64, i64) {
        self.inner.matrix.entries().into()
    }
    #[getter]
    fn reduced(&self) -> Complex64 {
        self.inner.reduced
    }
    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps
    }
    #[getter]
    fn berndt_phase(&self) -> Complex64 {
        self.inner.berndt_phase
    }
    #[getter]
    fn applied_phase(&self) -> Complex64 {
        self.inner.applied_phase
    }
    #[getter]
    fn class_name(&self) -> PyResult<String> {
        Ok(format!("{:?}", modular::classify(&self.inner.matrix).map_err(py_err)?))
    }
    fn check(&self) -> PyResult<()> {
        self.inner.check().map_err(py_err)
    }
    fn __repr__(&self) -> String {
        format!(
            "ReductionCertificate(matrix={}, reduced={}, steps={})",
            self.inner.matrix, self.inner.reduced, self.inner.steps
        )
    }
}

/// One identity sweep outcome.
#[pyclass(frozen, name = "SweepReport")]
struct PySweep {
    #[pyo3(get)]
    name: String,
    #[pyo3(get)]
    points: usize,
    #[pyo3(get)]
    max_residual: f64,
    #[pyo3(get)]
    tolerance: f64,
    #[pyo3(get)]
    passed: bool,
}

#[pymethods]
impl PySweep {
    fn __repr__(&self) -> String {
        format!(
            "SweepReport(name='{}', points={}, max_residual={:e}, tolerance={:e}, passed={})",
            self.name, self.points, self.max_residual, self.tolerance, self.passed
        )
    }
}

fn theta_index(k: u8) -> PyResult<ThetaIndex> {
    ThetaIndex::from_k(k).map_err(py_err)
}

fn side(above: bool) -> Side {
    if above {
        Side::Above
    } else {
        Side::Below
    }
}

fn spec(tol: f64) -> PyResult<QuadratureSpec> {
    QuadratureSpec::with_tol(tol).map_err(py_err)
}

/// `F(1/2, 1/2; 1; z)` on the plane cut along `[1, inf)`.
#[pyfunction]
#[pyo3(name = "F", signature = (z, tol = DEFAULT_TOL))]
fn f(z: Complex64, tol: f64) -> PyResult<PyEval> {
    hypergeo::hyper_f(z, tol).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(name = "F_prime", signature = (z, tol = DEFAULT_TOL))]
fn f_prime(z: Complex64, tol: f64) -> PyResult<PyEval> {
    hypergeo::hyper_f_deriv(z, tol).map(Into::into).map_err(py_err)
}

/// One-sided limit of `F` on the cut `x > 1`.
#[pyfunction]
#[pyo3(name = "F_boundary", signature = (x, above = true, tol = DEFAULT_TOL))]
fn f_boundary(x: f64, above: bool, tol: f64) -> PyResult<PyEval> {
    hypergeo::hyper_f_boundary(x, side(above), tol).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (z, tol = DEFAULT_TOL))]
fn tau(z: Complex64, tol: f64) -> PyResult<PyEval> {
    triangle::triangle(z, tol).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(name = "lambda_", signature = (z, tol = DEFAULT_TOL))]
fn lambda(z: Complex64, tol: f64) -> PyResult<PyEval> {
    theta::lambda(z, tol).map(Into::into).map_err(py_err)
}

#[pyfunction]
fn lambda_prime(z: Complex64) -> PyResult<Complex64> {
    theta::lambda_prime(z).map_err(py_err)
}

/// `Theta_k(z)` for `k` in 2, 3, 4.
#[pyfunction]
#[pyo3(name = "theta", signature = (k, z, tol = DEFAULT_TOL))]
fn theta_k(k: u8, z: Complex64, tol: f64) -> PyResult<PyEval> {
    theta::theta(theta_index(k)?, z, tol).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (k, z, tol = DEFAULT_TOL))]
fn log_theta(k: u8, z: Complex64, tol: f64) -> PyResult<PyEval> {
    theta::log_theta(theta_index(k)?, z, tol).map(Into::into).map_err(py_err)
}

/// `log Theta_3(z)` anywhere in the upper half-plane, via reduction.
/// `method` is "series" or "integral".
#[pyfunction]
#[pyo3(signature = (z, tol = DEFAULT_TOL, method = "series"))]
fn log_theta3_global(z: Complex64, tol: f64, method: &str) -> PyResult<PyEval> {
    let route = match method {
        "series" => GlobalRoute::Series,
        "integral" => GlobalRoute::Integral,
        other => return Err(PyValueError::new_err(format!("unknown method '{other}'"))),
    };
    modular::log_theta3_global_with(z, tol, route).map(Into::into).map_err(py_err)
}

#[pyfunction]
fn reduce(z: Complex64) -> PyResult<PyCertificate> {
    modular::reduce_to_fundamental(z).map(|inner| PyCertificate { inner }).map_err(py_err)
}

#[pyfunction]
fn sigma_cdf(x: f64) -> PyResult<f64> {
    measure::sigma_cdf(x).map_err(py_err)
}

#[pyfunction]
fn sigma_density(x: f64) -> PyResult<f64> {
    measure::sigma_density(x).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (tol = DEFAULT_TOL))]
fn sigma_total_mass(tol: f64) -> PyResult<PyRepr> {
    reprs::sigma_total_mass(&spec(tol)?).map(Into::into).map_err(py_err)
}

/// `Log F(z)` as an integral against the measure.
#[pyfunction]
#[pyo3(signature = (z, tol = DEFAULT_TOL))]
fn log_f_integral(z: Complex64, tol: f64) -> PyResult<PyRepr> {
    reprs::log_f_integral(z, &spec(tol)?).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (z, tol = DEFAULT_TOL))]
fn log_theta3_quadrilateral(z: Complex64, tol: f64) -> PyResult<PyRepr> {
    reprs::log_theta3_quadrilateral(z, &spec(tol)?).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (z, tol = DEFAULT_TOL))]
fn log_theta3_lambda_kernel(z: Complex64, tol: f64) -> PyResult<PyRepr> {
    reprs::log_theta3_lambda_kernel(z, &spec(tol)?).map(Into::into).map_err(py_err)
}

/// Run a verification suite; `tol = None` uses the suite default.
#[pyfunction]
#[pyo3(name = "verify", signature = (suite, n = 100, seed = 1, tol = None))]
fn run_verify(py: Python<'_>, suite: &str, n: usize, seed: u64, tol: Option<f64>) -> PyResult<Vec<PySweep>> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let reports = py.allow_threads(|| verify::run_suite(suite, n, seed, tol));
    Ok(reports
        .into_iter()
        .map(|r| PySweep { name: r.name, points: r.points, max_residual: r.max_residual, tolerance: r.tolerance, passed: r.pass })
        .collect())
}

#[pymodule]
fn thetakit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type_bound::<DomainError>())?;
    m.add("ConvergenceError", m.py().get_type_bound::<ConvergenceError>())?;
    m.add_class::<PyEval>()?;
    m.add_class::<PyRepr>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PySweep>()?;
    m.add_function(wrap_pyfunction!(f, m)?)?;
    m.add_function(wrap_pyfunction!(f_prime, m)?)?;
    m.add_function(wrap_pyfunction!(f_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(lambda, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_prime, m)?)?;
    m.add_function(wrap_pyfunction!(theta_k, m)?)?;
    m.add_function(wrap_pyfunction!(log_theta, m)?)?;
    m.add_function(wrap_pyfunction!(log_theta3_global, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_density, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_total_mass, m)?)?;
    m.add_function(wrap_pyfunction!(log_f_integral, m)?)?;
    m.add_function(wrap_pyfunction!(log_theta3_quadrilateral, m)?)?;
    m.add_function(wrap_pyfunction!(log_theta3_lambda_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
