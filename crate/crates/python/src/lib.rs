//! Python bindings: subspaces, channels and certificates, plus the capacity verdicts.
//!
//! Matrices cross the boundary as lists of rows whose entries are anything `str()`
//! renders as a Gaussian rational (`3`, `"1/2"`, `"2-3i"`). Reports come back as plain
//! dicts decoded from the same JSON the CLI writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use qzero_core::channel::KrausChannel;
use qzero_core::cli::reproduce::cmd_reproduce;
use qzero_core::cli::{parse_input, verify_text, InputFile, RunConfig};
use qzero_core::constructions::fixtures;
use qzero_core::constructions::synthesis;
use qzero_core::gaussian::classify_zero_error;
use qzero_core::rank1::{self, SearchConfig};
use qzero_core::subspace::SubspaceFile;
use qzero_core::zeroerr::ledger::{nonsuperactivation_ledger, ChannelGraph, LedgerChannel};
use qzero_core::zeroerr::superactivation::{ri2_classify, superactivation_check};
use qzero_core::zeroerr::{cbar0_positive_space, qbar0_positive, ZeroErrorContext};
use qzero_core::{QMatrix, QScalar};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn matrix(rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<QMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| x.str()?.to_str()?.parse::<QScalar>().map_err(value_err)).collect::<PyResult<Vec<_>>>())
        .collect::<PyResult<Vec<_>>>()?;
    QMatrix::from_rows(parsed).map_err(value_err)
}

fn rows_of(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn context(seed: u64) -> PyResult<ZeroErrorContext> {
    ZeroErrorContext::with_fixtures(SearchConfig { seed, ..SearchConfig::default() }).map_err(value_err)
}

/// A subspace of `n × n` complex matrices, stored in reduced row echelon form.
#[pyclass(module = "qzero")]
struct Subspace {
    inner: qzero_core::subspace::Subspace,
}

#[pymethods]
impl Subspace {
    #[new]
    fn new(ambient: usize, basis: Vec<Vec<Vec<Bound<'_, PyAny>>>>) -> PyResult<Self> {
        let mats = basis.iter().map(|m| matrix(m)).collect::<PyResult<Vec<_>>>()?;
        let inner = qzero_core::subspace::Subspace::span(ambient, &mats).map_err(value_err)?;
        Ok(Subspace { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let f: SubspaceFile = serde_json::from_str(text).map_err(value_err)?;
        Ok(Subspace { inner: f.to_subspace().map_err(value_err)? })
    }

    /// One of the named constructions: `theorem1`, `l0`, `l0_perp`, `l1`, `l2`, `m`, `n`, `remark1`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let inner = match name {
            "theorem1" => fixtures::l_theorem1(),
            "l0" => fixtures::l0(),
            "l0_perp" => fixtures::l0_perp(),
            "l1" => fixtures::l1(),
            "l2" => fixtures::l2(),
            "m" => fixtures::m_subspace(),
            "n" => fixtures::n_subspace(),
            "remark1" => fixtures::remark1_subspace(),
            other => return Err(PyValueError::new_err(format!("unknown fixture {other:?}"))),
        };
        Ok(Subspace { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&SubspaceFile::from(&self.inner)).map_err(value_err)
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn basis(&self) -> Vec<Vec<Vec<String>>> {
        self.inner.basis().iter().map(rows_of).collect()
    }

    fn contains(&self, m: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
        Ok(self.inner.contains(&matrix(&m)?))
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn contains_identity(&self) -> bool {
        self.inner.contains_identity()
    }

    fn is_algebra(&self) -> bool {
        self.inner.is_algebra()
    }

    fn perp(&self) -> Self {
        Subspace { inner: self.inner.perp() }
    }

    fn adjoint(&self) -> Self {
        Subspace { inner: self.inner.adjoint() }
    }

    fn tensor(&self, other: &Subspace) -> Self {
        Subspace { inner: self.inner.tensor(&other.inner) }
    }

    fn __eq__(&self, other: &Subspace) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Subspace(ambient={}, dim={})", self.inner.ambient(), self.inner.dim())
    }
}

/// A CPTP map given by Kraus operators with Gaussian-rational entries.
#[pyclass(module = "qzero")]
struct Channel {
    inner: KrausChannel,
}

#[pymethods]
impl Channel {
    #[new]
    fn new(kraus: Vec<Vec<Vec<Bound<'_, PyAny>>>>) -> PyResult<Self> {
        let ops = kraus.iter().map(|m| matrix(m)).collect::<PyResult<Vec<_>>>()?;
        Ok(Channel { inner: KrausChannel::new(ops).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_input(text).map_err(value_err)? {
            InputFile::Channel(inner) => Ok(Channel { inner }),
            _ => Err(PyValueError::new_err("not a channel file")),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_file()).map_err(value_err)
    }

    #[getter]
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }

    #[getter]
    fn dim_out(&self) -> usize {
        self.inner.dim_out()
    }

    fn kraus(&self) -> Vec<Vec<Vec<String>>> {
        self.inner.kraus().iter().map(rows_of).collect()
    }

    fn choi_rank(&self) -> usize {
        self.inner.choi_rank()
    }

    /// The non-commutative graph `span{V_j† V_k}`.
    fn graph(&self) -> Subspace {
        Subspace { inner: self.inner.graph() }
    }

    fn tensor(&self, other: &Channel) -> Self {
        Channel { inner: self.inner.tensor(&other.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Channel(dim_in={}, dim_out={}, kraus={})", self.inner.dim_in(), self.inner.dim_out(), self.inner.kraus().len())
    }
}

/// An exactly re-checkable answer to a rank-one or transitivity question.
#[pyclass(module = "qzero")]
struct Certificate {
    inner: rank1::Certificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate { inner: serde_json::from_str(text).map_err(value_err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict.name()
    }

    #[getter]
    fn strategy(&self) -> String {
        self.inner.strategy.clone()
    }

    #[getter]
    fn evidence(&self) -> &'static str {
        self.inner.evidence.kind()
    }

    #[getter]
    fn digest(&self) -> String {
        self.inner.digest.clone()
    }

    /// Exact re-verification; raises with the reason on failure.
    fn verify(&self) -> PyResult<bool> {
        self.inner.verify().map_err(value_err)?;
        Ok(true)
    }

    fn __repr__(&self) -> String {
        format!("Certificate({}, strategy={:?}, evidence={})", self.inner.verdict.name(), self.inner.strategy, self.inner.evidence.kind())
    }
}

/// Either a channel or a bare graph, for the ledger and superactivation checks.
fn as_graph<'a>(x: &'a Bound<'_, PyAny>, hold: &'a mut Option<Box<dyn ChannelGraph>>) -> PyResult<&'a dyn ChannelGraph> {
    if let Ok(c) = x.cast::<Channel>() {
        *hold = Some(Box::new(c.borrow().inner.clone()));
    } else if let Ok(s) = x.cast::<Subspace>() {
        *hold = Some(Box::new(s.borrow().inner.clone()));
    } else {
        return Err(PyValueError::new_err("expected a Channel or a Subspace"));
    }
    Ok(hold.as_deref().expect("just set"))
}

#[pyfunction]
#[pyo3(signature = (space, seed = 0))]
fn is_transitive(space: &Subspace, seed: u64) -> PyResult<Certificate> {
    let ctx = context(seed)?;
    Ok(Certificate { inner: rank1::is_transitive(&space.inner, &ctx.knowledge, &ctx.config) })
}

/// `C̄₀ > 0`?  Returns the verdict with its route and evidence.
#[pyfunction]
#[pyo3(signature = (graph, seed = 0))]
fn cbar0<'py>(py: Python<'py>, graph: &Subspace, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let v = cbar0_positive_space(&graph.inner, &context(seed)?).map_err(value_err)?;
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (graph, seed = 0))]
fn qbar0<'py>(py: Python<'py>, graph: &Subspace, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let subject = rank1::Subject::Space { space: graph.inner.clone() };
    let v = qbar0_positive(&subject, &context(seed)?).map_err(value_err)?;
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (channel, seed = 0))]
fn ri2<'py>(py: Python<'py>, channel: &Bound<'py, PyAny>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let mut hold = None;
    let ch = as_graph(channel, &mut hold)?;
    let r = ri2_classify(ch, &context(seed)?).map_err(value_err)?;
    to_py(py, &r)
}

/// Fired non-superactivation clauses for one channel, or a pair.
#[pyfunction]
#[pyo3(signature = (first, second = None))]
fn ledger<'py>(py: Python<'py>, first: &Bound<'py, PyAny>, second: Option<&Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let (mut h1, mut h2) = (None, None);
    let a = LedgerChannel::finite(as_graph(first, &mut h1)?);
    let b = match second {
        Some(s) => Some(LedgerChannel::finite(as_graph(s, &mut h2)?)),
        None => None,
    };
    to_py(py, &nonsuperactivation_ledger(&a, b.as_ref()))
}

#[pyfunction]
#[pyo3(signature = (first, second, seed = 0))]
fn superactivation<'py>(py: Python<'py>, first: &Bound<'py, PyAny>, second: &Bound<'py, PyAny>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (mut h1, mut h2) = (None, None);
    let a = LedgerChannel::finite(as_graph(first, &mut h1)?);
    let b = LedgerChannel::finite(as_graph(second, &mut h2)?);
    let r = superactivation_check(&a, &b, &context(seed)?, None).map_err(value_err)?;
    to_py(py, &r)
}

/// A channel whose graph is exactly `graph`, as the pseudo-diagonal data dict.
#[pyfunction]
fn synthesize<'py>(py: Python<'py>, graph: &Subspace) -> PyResult<Bound<'py, PyAny>> {
    let spec = synthesis::synthesize(&graph.inner).map_err(value_err)?;
    to_py(py, &spec)
}

/// Classify a Gaussian channel given as a `"kind": "gaussian"` JSON document.
#[pyfunction]
fn gaussian_classify<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    match parse_input(text).map_err(value_err)? {
        InputFile::Gaussian(spec) => to_py(py, &classify_zero_error(&spec).map_err(value_err)?),
        _ => Err(PyValueError::new_err("not a gaussian file")),
    }
}

/// Re-derive a named construction; returns the list of check records and whether all passed.
#[pyfunction]
#[pyo3(signature = (name, deep = false, seed = 0))]
fn reproduce<'py>(py: Python<'py>, name: &str, deep: bool, seed: u64) -> PyResult<(bool, Bound<'py, PyAny>)> {
    let cfg = RunConfig { deep, seed, ..RunConfig::default() };
    let r = cmd_reproduce(name, &cfg).map_err(value_err)?;
    Ok((r.passed(), to_py(py, &r.records)?))
}

/// Re-check a saved certificate or verdict file.
#[pyfunction]
fn verify(text: &str) -> PyResult<bool> {
    Ok(verify_text(text).map_err(value_err)?.passed())
}

#[pymodule]
fn qzero(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Subspace>()?;
    m.add_class::<Channel>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(is_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(cbar0, m)?)?;
    m.add_function(wrap_pyfunction!(qbar0, m)?)?;
    m.add_function(wrap_pyfunction!(ri2, m)?)?;
    m.add_function(wrap_pyfunction!(ledger, m)?)?;
    m.add_function(wrap_pyfunction!(superactivation, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_classify, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
