//! Python bindings. Reports cross the boundary as JSON strings, which the
//! Python side decodes with `json.loads`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use jetlab::contact::{contact_codim, ContactQuery, LogResolutionInput};
use jetlab::count::{dim_estimate, exhaustive_count, monte_carlo_count, CountConfig, DEFAULT_CAP};
use jetlab::formulas;
use jetlab::groebner::{self, Budget, MonomialOrder, DEFAULT_MAX_PAIRS};
use jetlab::jetideal::{self, DeterminantalSpec};
use jetlab::poly::{CoefficientField, JetVariable};
use jetlab::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::TooLarge { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(x: &T) -> PyResult<String> {
    serde_json::to_string(x).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn field_of(p: u64) -> PyResult<CoefficientField> {
    match p {
        0 => Ok(CoefficientField::Rationals),
        p => CoefficientField::prime(p).map_err(py_err),
    }
}

/// Sparse polynomial over `Q` (`field=0`) or `F_p`.
#[pyclass(name = "Polynomial", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial {
    inner: jetlab::poly::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    #[pyo3(signature = (text, field = 0))]
    fn new(text: &str, field: u64) -> PyResult<Self> {
        let inner = jetlab::poly::Polynomial::parse(text, field_of(field)?).map_err(py_err)?;
        Ok(PyPolynomial { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_add(&other.inner).map_err(py_err)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_sub(&other.inner).map_err(py_err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_mul(&other.inner).map_err(py_err)? })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn homogeneous_degree(&self) -> Option<u32> {
        self.inner.homogeneous_degree()
    }

    fn isobaric_weight(&self) -> Option<usize> {
        self.inner.isobaric_weight()
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().iter().map(ToString::to_string).collect()
    }

    /// Evaluates at integer values keyed by variable name.
    fn evaluate(&self, values: BTreeMap<String, i64>) -> PyResult<String> {
        let field = self.inner.field();
        let mut point = BTreeMap::new();
        for (name, v) in values {
            let var: JetVariable = name.parse().map_err(py_err)?;
            point.insert(var, field.from_i64(v));
        }
        Ok(self.inner.evaluate(&point).map_err(py_err)?.to_string())
    }
}

/// Generators of the jet ideal of `r x s` matrices of rank at most `c`.
#[pyfunction]
#[pyo3(signature = (rows, cols, rank, jets, field = 0))]
fn jet_ideal_generators(rows: usize, cols: usize, rank: usize, jets: usize, field: u64) -> PyResult<Vec<PyPolynomial>> {
    let spec = DeterminantalSpec::new(rows, cols, rank).map_err(py_err)?;
    let pres = jetideal::jet_ideal_generators_over(spec, jets, field_of(field)?).map_err(py_err)?;
    Ok(pres.generators.into_iter().map(|inner| PyPolynomial { inner }).collect())
}

#[pyfunction]
fn verify_origin_fiber(rows: usize, cols: usize, rank: usize, jets: usize) -> PyResult<String> {
    let spec = DeterminantalSpec::new(rows, cols, rank).map_err(py_err)?;
    let base = jetideal::jet_ideal_generators(spec, 0).map_err(py_err)?;
    json(&jetideal::verify_origin_fiber_isomorphism(&base.generators, spec.ambient_dimension(), jets).map_err(py_err)?)
}

#[pyfunction]
fn rank1_components(rows: usize, cols: usize, jets: usize) -> PyResult<String> {
    json(&formulas::rank1_components(rows, cols, jets))
}

#[pyfunction]
#[pyo3(signature = (rows, cols, window = formulas::DEFAULT_LCT_WINDOW))]
fn lct_rank1(rows: usize, cols: usize, window: usize) -> PyResult<String> {
    json(&formulas::lct_rank1(rows, cols, window).map_err(py_err)?)
}

#[pyfunction]
fn odd_jets_reducible(rows: usize, cols: usize, rank: usize) -> PyResult<String> {
    json(&formulas::odd_jets_reducible(rows, cols, rank).map_err(py_err)?)
}

/// Reduced Groebner basis (grevlex by `(k, i, j)`) of polynomials over a
/// common field.
#[pyfunction]
#[pyo3(signature = (gens, max_pairs = DEFAULT_MAX_PAIRS))]
fn groebner_basis(gens: Vec<PyPolynomial>, max_pairs: usize) -> PyResult<Vec<PyPolynomial>> {
    let polys: Vec<_> = gens.into_iter().map(|g| g.inner).collect();
    let order = MonomialOrder::grevlex(polys.iter().flat_map(|p| p.variables()).collect());
    let gb = groebner::buchberger_with_budget(&polys, &order, Budget { max_pairs }).map_err(py_err)?;
    Ok(gb.elements.into_iter().map(|inner| PyPolynomial { inner }).collect())
}

/// Krull dimension of the quotient by `gens` in the given variables.
#[pyfunction]
#[pyo3(signature = (gens, variables, max_pairs = DEFAULT_MAX_PAIRS))]
fn krull_dimension(gens: Vec<PyPolynomial>, variables: Vec<String>, max_pairs: usize) -> PyResult<i64> {
    let vars = variables.iter().map(|v| v.parse()).collect::<jetlab::Result<Vec<JetVariable>>>().map_err(py_err)?;
    let polys: Vec<_> = gens.into_iter().map(|g| g.inner).collect();
    groebner::krull_dimension(&polys, &MonomialOrder::grevlex(vars), Budget { max_pairs }).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (field = 0, max_pairs = DEFAULT_MAX_PAIRS))]
fn verify_first_jet_components(field: u64, max_pairs: usize) -> PyResult<String> {
    json(&groebner::verify_first_jet_components(field_of(field)?, Budget { max_pairs }).map_err(py_err)?)
}

/// Points of the jet scheme over `F_q`: exhaustive within `cap`, otherwise
/// Monte Carlo with `samples` draws.
#[pyfunction]
#[pyo3(signature = (rows, cols, rank, jets, q, cap = DEFAULT_CAP, samples = 1_000_000, seed = 0, workers = 1))]
#[allow(clippy::too_many_arguments)]
fn count_points(
    py: Python<'_>,
    rows: usize,
    cols: usize,
    rank: usize,
    jets: usize,
    q: u64,
    cap: u128,
    samples: u64,
    seed: u64,
    workers: usize,
) -> PyResult<String> {
    let spec = DeterminantalSpec::new(rows, cols, rank).map_err(py_err)?;
    let pres = jetideal::jet_ideal_generators_over(spec, jets, field_of(q)?).map_err(py_err)?;
    let report = py.detach(|| {
        match exhaustive_count(&pres.generators, &pres.variables, q, &CountConfig { cap, workers }) {
            Err(Error::TooLarge { .. }) => {
                monte_carlo_count(&pres.generators, &pres.variables, q, samples, 0.99, seed, workers)
            }
            other => other,
        }
    });
    json(&report.map_err(py_err)?)
}

#[pyfunction]
fn estimate_dimension(points: Vec<(u64, f64)>) -> PyResult<String> {
    json(&dim_estimate(&points).map_err(py_err)?)
}

/// Contact-locus codimension; `resolution` is JSON with keys n, k, a and
/// families (1-based).
#[pyfunction]
fn contact_codimension(resolution: &str, orders: Vec<u64>) -> PyResult<String> {
    let res: LogResolutionInput = serde_json::from_str(resolution).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json(&contact_codim(&res, &ContactQuery { orders }).map_err(py_err)?)
}

#[pymodule]
fn jetlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(jet_ideal_generators, m)?)?;
    m.add_function(wrap_pyfunction!(verify_origin_fiber, m)?)?;
    m.add_function(wrap_pyfunction!(rank1_components, m)?)?;
    m.add_function(wrap_pyfunction!(lct_rank1, m)?)?;
    m.add_function(wrap_pyfunction!(odd_jets_reducible, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(krull_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(verify_first_jet_components, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(contact_codimension, m)?)?;
    Ok(())
}
