//! Python module `evalbirep`.
//!
//! Scalars cross the boundary as strings in the scalar grammar, e.g. `"(-q)^4"`
//! or `"q^-1 - q"`; matrices as row-major lists of such strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use evalbirep::bireps::evaluation::{decompose, x_object, EvalAction};
use evalbirep::bireps::lemmas::{apply_steps, parse_steps};
use evalbirep::cellmods::{gram_matrix, radical, CellModule};
use evalbirep::error::Error;
use evalbirep::evalmaps::{ev_kind, EvalKind, EvalParam};
use evalbirep::hecke::{parse_hecke, HeckeElement};
use evalbirep::homotopy::Complex;
use evalbirep::linalg::Matrix;
use evalbirep::scalars::{parse_scalar, RationalFunction};
use evalbirep::suites::{run, Suite, SuiteConfig, DEFAULT_SEED};
use evalbirep::zigzag::ZigzagAlgebra;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalar(s: &str) -> PyResult<RationalFunction> {
    parse_scalar(s).map_err(err)
}

fn strings(m: &Matrix<RationalFunction>) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

/// Canonical text form of a scalar.
#[pyfunction]
fn normalize_scalar(s: &str) -> PyResult<String> {
    Ok(scalar(s)?.to_string())
}

/// Element of the finite, affine or extended affine Hecke algebra.
#[pyclass(name = "Hecke", module = "evalbirep", frozen, from_py_object)]
#[derive(Clone)]
struct PyHecke {
    inner: HeckeElement,
}

#[pymethods]
impl PyHecke {
    #[new]
    fn new(d: usize, expr: &str) -> PyResult<Self> {
        Ok(PyHecke {
            inner: parse_hecke(d, expr).map_err(err)?,
        })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.rank()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Hecke({})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyHecke {
            inner: self.inner.try_add(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyHecke {
            inner: self.inner.try_mul(&other.inner).map_err(err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn bar(&self) -> Self {
        PyHecke { inner: self.inner.bar() }
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Image under the evaluation map with parameter `a`.
    #[pyo3(signature = (a, prime = false))]
    fn ev(&self, a: &str, prime: bool) -> PyResult<Self> {
        let kind = if prime { EvalKind::Prime } else { EvalKind::Plain };
        let a = EvalParam::new(scalar(a)?).map_err(err)?;
        Ok(PyHecke {
            inner: ev_kind(kind, &a, &self.inner).map_err(err)?,
        })
    }
}

/// Affine (default) or finite zigzag algebra; elements are strings such as
/// `"2*p0|1 + l1"`.
#[pyclass(name = "Zigzag", module = "evalbirep", frozen)]
struct PyZigzag {
    alg: ZigzagAlgebra,
}

#[pymethods]
impl PyZigzag {
    #[new]
    #[pyo3(signature = (d, affine = true))]
    fn new(d: usize, affine: bool) -> PyResult<Self> {
        let alg = if affine { ZigzagAlgebra::affine(d) } else { ZigzagAlgebra::finite(d) };
        Ok(PyZigzag { alg: alg.map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn basis(&self) -> Vec<String> {
        self.alg.basis().iter().map(|&b| self.alg.name(b)).collect()
    }

    fn degree(&self, name: &str) -> PyResult<i32> {
        Ok(self.alg.degree(self.alg.parse_name(name).map_err(err)?))
    }

    /// `x y`, meaning x after y.
    fn mul(&self, x: &str, y: &str) -> PyResult<String> {
        let a = self.alg.parse(x).map_err(err)?;
        let b = self.alg.parse(y).map_err(err)?;
        Ok(self.alg.format(&self.alg.mul(&a, &b)))
    }

    fn tau(&self, x: &str) -> PyResult<String> {
        let a = self.alg.parse(x).map_err(err)?;
        Ok(self.alg.format(&self.alg.tau(&a).map_err(err)?))
    }

    fn trace_form_rank(&self) -> usize {
        self.alg.trace_form().rank()
    }
}

/// Cell module with parameters `z` and `lambda`.
#[pyclass(name = "CellModule", module = "evalbirep", frozen)]
struct PyCellModule {
    inner: CellModule,
}

#[pymethods]
impl PyCellModule {
    #[new]
    #[pyo3(signature = (d, z, lam = "1"))]
    fn new(d: usize, z: &str, lam: &str) -> PyResult<Self> {
        Ok(PyCellModule {
            inner: CellModule::new(d, scalar(z)?, scalar(lam)?).map_err(err)?,
        })
    }

    fn gram(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(strings(&gram_matrix(self.inner.rank(), self.inner.z()).map_err(err)?))
    }

    fn radical(&self) -> PyResult<Vec<Vec<String>>> {
        let rad = radical(self.inner.rank(), self.inner.z()).map_err(err)?;
        Ok(rad
            .iter()
            .map(|v| v.coords.iter().map(|c| c.to_string()).collect())
            .collect())
    }

    fn b(&self, i: usize) -> PyResult<Vec<Vec<String>>> {
        Ok(strings(&self.inner.b_matrix(i).map_err(err)?))
    }

    fn rho(&self) -> Vec<Vec<String>> {
        strings(&self.inner.rho_matrix())
    }
}

/// Minimal model of `word` applied to `Ze_vertex` or to `X_x`, as
/// `(text, [(vertex, class)], x_decomposition or None)`.
#[pyfunction]
#[pyo3(signature = (d, word, vertex = None, x = None, finite = false, r = None, s = None))]
fn minimal_model(
    d: usize,
    word: &str,
    vertex: Option<usize>,
    x: Option<usize>,
    finite: bool,
    r: Option<i32>,
    s: Option<i32>,
) -> PyResult<(String, Vec<(usize, String)>, Option<Vec<String>>)> {
    let alg = if finite { ZigzagAlgebra::finite(d) } else { ZigzagAlgebra::affine(d) }.map_err(err)?;
    let steps = parse_steps(word).map_err(err)?;
    let start = match (vertex, x) {
        (None, Some(j)) => x_object(alg, j),
        (Some(j), None) => Complex::indecomposable(alg, j),
        _ => return Err(PyValueError::new_err("give exactly one of vertex and x")),
    }
    .map_err(err)?;
    let ev = if finite {
        None
    } else {
        let (r, s) = SuiteConfig { r, s, ..SuiteConfig::new(d) }.rs();
        Some(EvalAction::new(d, r, s).map_err(err)?)
    };
    let m = apply_steps(alg, ev.as_ref(), &steps, &start).map_err(err)?;
    let decat = m.decat().into_iter().map(|(v, p)| (v, p.to_string())).collect();
    let parts = if finite {
        None
    } else {
        decompose(&m)
            .map_err(err)?
            .map(|ps| ps.iter().map(|p| p.to_string()).collect())
    };
    Ok((m.to_string(), decat, parts))
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

/// Run a verification suite and return `(all_pass, json_report)`.
#[pyfunction]
#[pyo3(signature = (suite, d, r = None, s = None, seed = DEFAULT_SEED, z = None, lam = None))]
fn verify(
    py: Python<'_>,
    suite: &str,
    d: usize,
    r: Option<i32>,
    s: Option<i32>,
    seed: u64,
    z: Option<&str>,
    lam: Option<&str>,
) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let cfg = SuiteConfig {
        r,
        s,
        seed,
        z: z.map(scalar).transpose()?,
        lambda: lam.map(scalar).transpose()?,
        ..SuiteConfig::new(d)
    };
    let rep = py.detach(|| run(suite, &cfg)).map_err(err)?;
    Ok((rep.all_pass(), rep.to_json()))
}

#[pymodule(name = "evalbirep")]
fn evalbirep_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHecke>()?;
    m.add_class::<PyZigzag>()?;
    m.add_class::<PyCellModule>()?;
    m.add_function(wrap_pyfunction!(normalize_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_model, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
