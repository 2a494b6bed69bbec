//! Python bindings. Reports come back as plain dictionaries.

use baxterlab::baxter::{baxter_eigen_check, lemma1_check, residue_apply, BaxterIdentity, TestFunction};
use baxterlab::cli;
use baxterlab::limits::{scaled_qwhittaker, ScalingPoint};
use baxterlab::noumi::verify_noumi;
use baxterlab::qcore::parse_rational;
use baxterlab::report::{ReportDocument, VerificationReport};
use baxterlab::symfunc::{eval_symmetric, macdonald_gram_schmidt, Partition};
use baxterlab::whittaker::{gamma_c, whittaker_eval, QuadratureConfig};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: baxterlab::Error) -> PyErr {
    match e {
        baxterlab::Error::Quadrature { .. } | baxterlab::Error::TruncationBudget { .. } | baxterlab::Error::Precision(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn report<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, r)
}

fn cfg(tol: f64) -> QuadratureConfig {
    QuadratureConfig::default().with_tol(tol, tol * 1e-3)
}

/// Γ(z) for complex z.
#[pyfunction]
fn gamma(z: Complex64) -> PyResult<Complex64> {
    gamma_c(z).map_err(err)
}

/// ψ_λ(x) by the pattern integral; returns (value, error estimate).
#[pyfunction]
#[pyo3(signature = (lam, x, tol = 1e-10))]
fn whittaker(lam: Vec<Complex64>, x: Vec<f64>, tol: f64) -> PyResult<(Complex64, f64)> {
    let r = whittaker_eval(&lam, &x, &cfg(tol)).map_err(err)?;
    Ok((r.value, r.error))
}

/// P_λ(z; q, t) in exact arithmetic; rationals are given as strings such as "1/3".
#[pyfunction]
fn macdonald(lam: Vec<u32>, z: Vec<String>, q: &str, t: &str) -> PyResult<String> {
    let lam = Partition::new(lam).map_err(err)?;
    let z = z.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let (q, t) = (parse_rational(q).map_err(err)?, parse_rational(t).map_err(err)?);
    let p = macdonald_gram_schmidt(&lam, &q, &t).map_err(err)?.restrict(z.len());
    Ok(eval_symmetric(&p, &z).map_err(err)?.to_string())
}

/// The scaled q-Whittaker value ψ^ε_w(x).
#[pyfunction]
#[pyo3(signature = (epsilon, x, w, prec_bits = 256))]
fn scaled_qwhittaker_value(epsilon: f64, x: Vec<f64>, w: Vec<Complex64>, prec_bits: u32) -> PyResult<Complex64> {
    let p = ScalingPoint::new(epsilon, x, w, 1.0).map_err(err)?;
    Ok(scaled_qwhittaker(&p, prec_bits).map_err(err)?.value)
}

/// The residue form of the dual Baxter operator applied to a product-pole test function.
#[pyfunction]
#[pyo3(signature = (w, u, b = 3.0, order = 8, cap = 40))]
fn residue_sum(w: Vec<Complex64>, u: f64, b: f64, order: u32, cap: u32) -> PyResult<(Complex64, f64)> {
    let f = TestFunction::ProductPole { b, order };
    let r = residue_apply(|z| Ok(f.eval(z)), &w, -u, cap).map_err(err)?;
    Ok((r.value, r.tail))
}

#[pyfunction]
#[pyo3(signature = (lam, n, q, t, order = 3, samples = 5, seed = 0))]
fn noumi_check<'py>(
    py: Python<'py>,
    lam: Vec<u32>,
    n: usize,
    q: &str,
    t: &str,
    order: usize,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let lam = Partition::new(lam).map_err(err)?;
    let (q, t) = (parse_rational(q).map_err(err)?, parse_rational(t).map_err(err)?);
    report(py, &verify_noumi(&lam, n, &q, &t, order, samples, seed).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (w, u, a, b = 3.0, order = 8, cap = 40, tol = 1e-6))]
#[allow(clippy::too_many_arguments)]
fn lemma1<'py>(
    py: Python<'py>,
    w: Vec<Complex64>,
    u: f64,
    a: f64,
    b: f64,
    order: u32,
    cap: u32,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let f = TestFunction::ProductPole { b, order };
    report(py, &lemma1_check(&f, &w, u, a, cap, &cfg((tol * 1e-2).max(1e-13)), tol).map_err(err)?)
}

/// The dual Baxter eigenrelation; `which` is "first" or "second".
#[pyfunction]
#[pyo3(signature = (w, x, which = "first", u = 1.0, tol = None))]
fn baxter<'py>(
    py: Python<'py>,
    w: Vec<Complex64>,
    x: Vec<f64>,
    which: &str,
    u: f64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let which = match which {
        "first" => BaxterIdentity::First,
        "second" => BaxterIdentity::Second,
        other => return Err(PyValueError::new_err(format!("unknown identity {other:?}"))),
    };
    let q = cfg(if w.len() > 1 { 1e-4 } else { 1e-9 });
    report(py, &baxter_eigen_check(&w, u, &x, which, &q, tol).map_err(err)?)
}

/// One acceptance criterion as a report document.
#[pyfunction]
#[pyo3(signature = (id, quick = true, seed = 0))]
fn criterion<'py>(py: Python<'py>, id: u8, quick: bool, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let reports = py.detach(|| cli::run_criterion(id, quick, seed)).map_err(err)?;
    to_py(py, &ReportDocument::new(reports))
}

/// Runs the command line with `args` (without the program name) and returns the exit code.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> i32 {
    let mut full = vec!["baxterlab".to_string()];
    full.extend(args);
    py.detach(|| cli::run(full))
}

#[pymodule]
fn pybaxterlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(whittaker, m)?)?;
    m.add_function(wrap_pyfunction!(macdonald, m)?)?;
    m.add_function(wrap_pyfunction!(scaled_qwhittaker_value, m)?)?;
    m.add_function(wrap_pyfunction!(residue_sum, m)?)?;
    m.add_function(wrap_pyfunction!(noumi_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1, m)?)?;
    m.add_function(wrap_pyfunction!(baxter, m)?)?;
    m.add_function(wrap_pyfunction!(criterion, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
