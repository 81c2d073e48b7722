//! Python bindings: `import strong_skolem`.
//!
//! Pair sets cross the boundary as [`PyPairSet`]; reports and search
//! results are read-only classes. Every core error surfaces as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use skolem_core::construction::{half_set_certificate as certificate, ConstructionParams};
use skolem_core::search::{skolem_betas as probe_betas, DifferenceOrder};
use skolem_core::{
    build_qr_table, build_s_beta as core_s_beta, build_strong_skolem as core_strong_skolem,
    cross_validate_construction, enumerate_theorem_starters as core_enumerate, full_report as core_report,
    search_skolem_starters, verify_skolem as core_skolem, verify_starter as core_starter,
    verify_strong as core_strong, BetaChoice, Modulus, PairSet, SearchConfig, SearchMode,
    VerificationReport,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn modulus(n: u64) -> PyResult<Modulus> {
    Modulus::new(n).map_err(value_err)
}

/// A candidate starter for Z_n, held in canonical form.
#[pyclass(name = "PairSet", module = "strong_skolem", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPairSet {
    inner: PairSet,
}

#[pymethods]
impl PyPairSet {
    #[new]
    fn new(n: u64, pairs: Vec<(u64, u64)>) -> PyResult<Self> {
        PairSet::from_pairs(n, pairs)
            .map(|inner| PyPairSet { inner })
            .map_err(value_err)
    }

    /// Parse the text (`n=...` header) or JSON form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        PairSet::parse(text)
            .map(|inner| PyPairSet { inner })
            .map_err(value_err)
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus().get()
    }

    #[getter]
    fn pairs(&self) -> Vec<(u64, u64)> {
        self.inner.pairs().iter().map(|p| (p.low, p.high)).collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("PairSet({}, {:?})", self.modulus(), self.pairs())
    }
}

#[pyclass(name = "VerificationReport", module = "strong_skolem", frozen)]
struct PyReport {
    inner: VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn is_starter(&self) -> bool {
        self.inner.is_starter
    }

    #[getter]
    fn is_strong(&self) -> bool {
        self.inner.is_strong
    }

    #[getter]
    fn is_skolem(&self) -> bool {
        self.inner.is_skolem
    }

    #[getter]
    fn has_zero_sum(&self) -> bool {
        self.inner.has_zero_sum
    }

    /// `ordering[i - 1]` has integer difference `i`; `None` unless Skolem.
    #[getter]
    fn skolem_ordering(&self) -> Option<Vec<(u64, u64)>> {
        self.inner
            .skolem_ordering
            .as_ref()
            .map(|o| o.iter().map(|p| (p.low, p.high)).collect())
    }

    #[getter]
    fn witnesses(&self) -> Vec<String> {
        self.inner.witnesses.iter().map(ToString::to_string).collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(is_starter={}, is_strong={}, is_skolem={})",
            self.inner.is_starter, self.inner.is_strong, self.inner.is_skolem
        )
    }
}

#[pyclass(name = "SearchResult", module = "strong_skolem", frozen, get_all)]
struct PySearchResult {
    n: u64,
    count: u64,
    nodes_explored: u64,
    wall_time_s: f64,
    witnesses: Vec<PyPairSet>,
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!(
            "SearchResult(n={}, count={}, witnesses={}, nodes_explored={})",
            self.n,
            self.count,
            self.witnesses.len(),
            self.nodes_explored
        )
    }
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    skolem_core::is_prime(n)
}

/// "QR", "NQR" or "ZERO".
#[pyfunction]
fn legendre_class(x: u64, q: u64) -> PyResult<String> {
    let el = modulus(q)?.element(x).map_err(value_err)?;
    skolem_core::legendre_class(el)
        .map(|c| c.to_string())
        .map_err(value_err)
}

#[pyfunction]
fn mod_inverse(x: u64, n: u64) -> PyResult<u64> {
    let el = modulus(n)?.element(x).map_err(value_err)?;
    skolem_core::mod_inverse(el)
        .map(|y| y.value())
        .map_err(value_err)
}

/// `(residues, non_residues, smallest_generator)`.
#[pyfunction]
fn qr_table(q: u64) -> PyResult<(Vec<u64>, Vec<u64>, u64)> {
    let t = build_qr_table(modulus(q)?).map_err(value_err)?;
    Ok((
        t.residues().to_vec(),
        t.non_residues().to_vec(),
        t.smallest_generator().value(),
    ))
}

#[pyfunction]
fn qr_generators(q: u64) -> PyResult<Vec<u64>> {
    skolem_core::qr_generators(modulus(q)?)
        .map(|g| g.into_iter().map(|x| x.value()).collect())
        .map_err(value_err)
}

#[pyfunction]
fn skolem_admissible(n: u64) -> PyResult<bool> {
    skolem_core::skolem_admissible(n).map_err(value_err)
}

/// `(holds, witnesses)`.
#[pyfunction]
fn verify_starter(s: &PyPairSet) -> (bool, Vec<String>) {
    let v = core_starter(&s.inner);
    (v.holds, v.witnesses.iter().map(ToString::to_string).collect())
}

/// `(holds, witnesses)`; raises `ValueError` for a non-starter.
#[pyfunction]
fn verify_strong(s: &PyPairSet) -> PyResult<(bool, Vec<String>)> {
    let v = core_strong(&s.inner).map_err(value_err)?;
    Ok((v.holds, v.witnesses.iter().map(ToString::to_string).collect()))
}

/// The Skolem ordering, or `None`; raises `ValueError` for a non-starter.
#[pyfunction]
fn verify_skolem(s: &PyPairSet) -> PyResult<Option<Vec<(u64, u64)>>> {
    let v = core_skolem(&s.inner).map_err(value_err)?;
    Ok(v.ordering
        .map(|o| o.iter().map(|p| (p.low, p.high)).collect()))
}

#[pyfunction]
fn full_report(s: &PyPairSet) -> PyReport {
    PyReport {
        inner: core_report(&s.inner),
    }
}

#[pyfunction]
fn build_s_beta(q: u64, alpha: u64, beta: u64) -> PyResult<PyPairSet> {
    let params = ConstructionParams::new(q, alpha, beta).map_err(value_err)?;
    Ok(PyPairSet {
        inner: core_s_beta(&params),
    })
}

/// `beta` is `"2"` or `"half"`.
#[pyfunction]
#[pyo3(signature = (q, beta, alpha=None))]
fn build_strong_skolem(q: u64, beta: &str, alpha: Option<u64>) -> PyResult<PyPairSet> {
    let choice: BetaChoice = beta.parse().map_err(PyValueError::new_err)?;
    core_strong_skolem(q, choice, alpha)
        .map(|inner| PyPairSet { inner })
        .map_err(value_err)
}

/// `(holds, [(low, high, difference, in_half_set), ...])`.
#[pyfunction]
fn half_set_certificate(s: &PyPairSet) -> (bool, Vec<(u64, u64, u64, bool)>) {
    let c = certificate(&s.inner);
    let entries = c
        .entries
        .iter()
        .map(|e| (e.pair.low, e.pair.high, e.difference, e.in_half_set))
        .collect();
    (c.holds(), entries)
}

/// `[(q, beta, alpha, PairSet), ...]` sorted by q, then β = 2 first.
#[pyfunction]
fn enumerate_theorem_starters(q_max: u64) -> Vec<(u64, u64, u64, PyPairSet)> {
    core_enumerate(q_max)
        .into_iter()
        .map(|r| (r.q, r.beta, r.alpha, PyPairSet { inner: r.starter }))
        .collect()
}

/// `mode` is `"count"`, `"first"` or `"enumerate"`.
#[pyfunction]
#[pyo3(signature = (n, strong=true, mode="count", limit=None, override_ceiling=false, parallel=false, smallest_first=false))]
fn search(
    py: Python<'_>,
    n: u64,
    strong: bool,
    mode: &str,
    limit: Option<usize>,
    override_ceiling: bool,
    parallel: bool,
    smallest_first: bool,
) -> PyResult<PySearchResult> {
    let mode = match mode {
        "count" => SearchMode::CountAll,
        "first" => SearchMode::FirstWitness,
        "enumerate" => SearchMode::EnumerateAll,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let order = if smallest_first {
        DifferenceOrder::SmallestFirst
    } else {
        DifferenceOrder::LargestFirst
    };
    let cfg = SearchConfig::new(n, mode)
        .map_err(value_err)?
        .strong(strong)
        .limit(limit)
        .order(order)
        .override_ceiling(override_ceiling)
        .parallel(parallel);
    let r = py
        .detach(|| search_skolem_starters(&cfg))
        .map_err(value_err)?;
    Ok(PySearchResult {
        n: r.n,
        count: r.count,
        nodes_explored: r.nodes_explored,
        wall_time_s: r.wall_time.as_secs_f64(),
        witnesses: r.witnesses.into_iter().map(|inner| PyPairSet { inner }).collect(),
    })
}

/// `[(q, strong_skolem_count), ...]`; raises if a construction is missing.
#[pyfunction]
fn cross_validate(py: Python<'_>, q_max: u64) -> PyResult<Vec<(u64, u64)>> {
    let report = py
        .detach(|| cross_validate_construction(q_max))
        .map_err(value_err)?;
    Ok(report
        .into_iter()
        .map(|e| (e.q, e.strong_skolem_count))
        .collect())
}

/// Non-residues β (other than -1) whose S_β is Skolem.
#[pyfunction]
#[pyo3(signature = (q, alpha=None))]
fn skolem_betas(q: u64, alpha: Option<u64>) -> PyResult<Vec<u64>> {
    probe_betas(q, alpha).map_err(value_err)
}

#[pymodule]
pub fn strong_skolem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPairSet>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_class, m)?)?;
    m.add_function(wrap_pyfunction!(mod_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(qr_table, m)?)?;
    m.add_function(wrap_pyfunction!(qr_generators, m)?)?;
    m.add_function(wrap_pyfunction!(skolem_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(verify_starter, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strong, m)?)?;
    m.add_function(wrap_pyfunction!(verify_skolem, m)?)?;
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    m.add_function(wrap_pyfunction!(build_s_beta, m)?)?;
    m.add_function(wrap_pyfunction!(build_strong_skolem, m)?)?;
    m.add_function(wrap_pyfunction!(half_set_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_theorem_starters, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(skolem_betas, m)?)?;
    Ok(())
}
