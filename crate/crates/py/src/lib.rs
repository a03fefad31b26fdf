//! Python bindings: instances, the tangle data structure and decompositions.
//! Subsets cross the boundary as lists of element ids.

use std::sync::Arc;

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use tanglekit::decomposition::{
    canonical_decomposition, directed_decomposition, verify_directed, verify_tangle_decomposition, VerificationReport,
};
use tanglekit::io::{self, DecompositionJson, FnKind};
use tanglekit::{ConnectivityOracle, Engine, Subset, TangleDataStructure};

fn py_err(e: tanglekit::Error) -> PyErr {
    match e {
        tanglekit::Error::Parse { .. } | tanglekit::Error::Domain(_) => PyValueError::new_err(e.to_string()),
        tanglekit::Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn subset(k: &ConnectivityOracle, ids: &[usize]) -> PyResult<Subset> {
    if let Some(&bad) = ids.iter().find(|&&i| i >= k.n()) {
        return Err(PyValueError::new_err(format!("element {bad} outside ground set of size {}", k.n())));
    }
    Ok(Subset::from_ids(ids.iter().copied()))
}

/// A connectivity function over a parsed instance.
#[pyclass(frozen, name = "Oracle", module = "tanglekit")]
struct PyOracle {
    engine: Arc<Engine>,
}

#[pymethods]
impl PyOracle {
    /// Parse instance text. `function` is one of edge-boundary, vertex-cut,
    /// cut-rank, matroid; the instance kind picks the default.
    #[new]
    #[pyo3(signature = (text, function = None))]
    fn new(text: &str, function: Option<&str>) -> PyResult<Self> {
        let inst = io::parse_instance(text).map_err(py_err)?;
        let kind = match function {
            Some(f) => f.parse::<FnKind>().map_err(py_err)?,
            None => inst.default_fn(),
        };
        let k = inst.oracle(kind).map_err(py_err)?;
        Ok(PyOracle { engine: Engine::new(Arc::new(k)) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.engine.oracle().n()
    }

    #[getter]
    fn name(&self) -> String {
        self.engine.oracle().name().to_string()
    }

    fn value(&self, ids: Vec<usize>) -> PyResult<u32> {
        let k = self.engine.oracle();
        Ok(k.value(subset(k, &ids)?))
    }

    fn max_tangle_order(&self) -> PyResult<u32> {
        self.engine.max_tangle_order().map_err(py_err)
    }

    fn has_tangle_of_order(&self, k: u32) -> PyResult<bool> {
        self.engine.has_tangle_of_order(k).map_err(py_err)
    }

    /// Canonical tangle tree decomposition of the given order, as JSON.
    fn decompose(&self, order: u32) -> PyResult<String> {
        let ttd = canonical_decomposition(&self.engine, order).map_err(py_err)?;
        Ok(io::canonical_json(&ttd).map_err(py_err)?.to_pretty())
    }

    /// Directed decomposition rooted at the tangle with the given index.
    fn directed(&self, order: u32, root_index: usize) -> PyResult<String> {
        let d = directed_decomposition(&self.engine, order, root_index).map_err(py_err)?;
        Ok(io::directed_json(&d).map_err(py_err)?.to_pretty())
    }

    /// Check a decomposition document. Returns the violated conditions as
    /// `(condition, detail)` pairs; empty means it passed.
    fn verify(&self, document: &str) -> PyResult<Vec<(String, String)>> {
        let doc = DecompositionJson::parse(document).map_err(py_err)?;
        let ds = TangleDataStructure::build(Arc::clone(&self.engine), doc.order).map_err(py_err)?;
        let rep: VerificationReport = if doc.variant == "directed" {
            verify_directed(&io::directed_from_json(&ds, &doc).map_err(py_err)?)
        } else {
            verify_tangle_decomposition(&io::tangle_decomposition_from_json(&ds, &doc).map_err(py_err)?)
        }
        .map_err(py_err)?;
        Ok(rep.violations.into_iter().map(|v| (v.condition.to_string(), v.detail)).collect())
    }

    fn tangles(&self, order: u32) -> PyResult<PyTangles> {
        let ds = TangleDataStructure::build(Arc::clone(&self.engine), order).map_err(py_err)?;
        Ok(PyTangles { ds })
    }

    /// (oracle calls, decisions, decision cache hits)
    fn stats(&self) -> (u64, u64, u64) {
        let s = self.engine.stats();
        (s.oracle_calls, s.decisions, s.decision_cache_hits)
    }

    fn __repr__(&self) -> String {
        format!("Oracle({}, n={})", self.name(), self.n())
    }
}

/// All tangles up to a fixed order, indexed from 0 by increasing order.
#[pyclass(frozen, name = "Tangles", module = "tanglekit")]
struct PyTangles {
    ds: TangleDataStructure,
}

#[pymethods]
impl PyTangles {
    fn __len__(&self) -> usize {
        self.ds.len()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.ds.k()
    }

    /// Number of tangles of order at most `l`.
    fn size(&self, l: u32) -> usize {
        self.ds.size(l)
    }

    fn order(&self, i: usize) -> PyResult<u32> {
        self.ds.order(i).map_err(py_err)
    }

    fn indices_of_order(&self, l: u32) -> Vec<usize> {
        self.ds.indices_of_order(l).collect()
    }

    fn contains(&self, i: usize, ids: Vec<usize>) -> PyResult<bool> {
        let x = subset(self.ds.engine().oracle(), &ids)?;
        self.ds.membership(i, x).map_err(py_err)
    }

    fn truncation(&self, i: usize, l: u32) -> PyResult<usize> {
        self.ds.truncation(i, l).map_err(py_err)
    }

    fn maximal(&self, l: u32) -> PyResult<Vec<usize>> {
        self.ds.maximal(l).map_err(py_err)
    }

    /// Leftmost minimum-order set in tangle `i` whose complement is in `j`;
    /// `None` when one truncates the other.
    fn separation(&self, i: usize, j: usize) -> PyResult<Option<Vec<usize>>> {
        Ok(self.ds.separation(i, j).map_err(py_err)?.map(Subset::to_vec))
    }

    fn signature(&self, i: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.ds.tangle(i).map_err(py_err)?.signature().iter().map(|x| x.to_vec()).collect())
    }

    fn to_json(&self) -> String {
        self.ds.to_json()
    }
}

#[pymodule]
#[pyo3(name = "tanglekit")]
fn tanglekit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOracle>()?;
    m.add_class::<PyTangles>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
