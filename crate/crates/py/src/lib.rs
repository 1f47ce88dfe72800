//! Python bindings for `mgeseq`.

use mgeseq::canonize::{self, Equivalence};
use mgeseq::learn::{construct_minimal, FunctionOracle, TableOracle};
use mgeseq::props::{run_axiom_suite, SampleConfig};
use mgeseq::{Element, Monoid, SubseqTransducer, Word};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: mgeseq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn word(s: &str) -> PyResult<Word> {
    s.parse().map_err(err)
}

#[pyclass(name = "Monoid", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMonoid(Monoid);

#[pymethods]
impl PyMonoid {
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        descriptor.parse().map(PyMonoid).map_err(err)
    }

    fn unit(&self) -> PyElement {
        PyElement(self.0.unit())
    }

    /// Parse an element literal such as `ab`, `3/2`, `-4` or `(ab,1)`.
    fn element(&self, literal: &str) -> PyResult<PyElement> {
        self.0.parse_element(literal).map(PyElement).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Monoid('{}')", self.0)
    }
}

#[pyclass(name = "Element", frozen, from_py_object)]
#[derive(Clone)]
struct PyElement(Element);

#[pymethods]
impl PyElement {
    fn monoid(&self) -> PyMonoid {
        PyMonoid(self.0.monoid().clone())
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.0.op(&other.0).map(PyElement).map_err(err)
    }

    fn le(&self, other: &PyElement) -> PyResult<bool> {
        self.0.le(&other.0).map_err(err)
    }

    fn sim(&self, other: &PyElement) -> PyResult<bool> {
        self.0.sim(&other.0).map_err(err)
    }

    /// `self = divisor · q`, returns `q`.
    fn quotient(&self, divisor: &PyElement) -> PyResult<PyElement> {
        self.0.quotient(&divisor.0).map(PyElement).map_err(err)
    }

    fn join(&self, other: &PyElement) -> PyResult<Option<PyElement>> {
        Ok(self.0.join(&other.0).map_err(err)?.map(PyElement))
    }

    fn meet(&self, other: &PyElement) -> PyResult<PyElement> {
        self.0.meet(&other.0).map(PyElement).map_err(err)
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.0)
    }
}

/// Most general equaliser of the tuple, or None.
#[pyfunction]
fn mge(items: Vec<PyElement>) -> PyResult<Option<Vec<PyElement>>> {
    let items: Vec<Element> = items.into_iter().map(|e| e.0).collect();
    let m = mgeseq::monoid::mge_tuple(&items).map_err(err)?;
    Ok(m.map(|v| v.into_iter().map(PyElement).collect()))
}

#[pyclass(name = "Transducer", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTransducer(SubseqTransducer);

#[pymethods]
impl PyTransducer {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        SubseqTransducer::parse(text).map(PyTransducer).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn monoid(&self) -> PyMonoid {
        PyMonoid(self.0.monoid().clone())
    }

    #[getter]
    fn num_states(&self) -> usize {
        self.0.num_states()
    }

    /// `_` is the empty word; None when the word is outside the domain.
    fn eval(&self, w: &str) -> PyResult<Option<PyElement>> {
        let w = word(w)?;
        Ok(self.0.eval(w.letters()).map_err(err)?.map(PyElement))
    }

    fn trim(&self) -> Self {
        PyTransducer(self.0.trim())
    }

    fn complete(&self) -> Self {
        PyTransducer(self.0.complete())
    }

    fn onward(&self) -> PyResult<Self> {
        canonize::onward(&self.0).map(PyTransducer).map_err(err)
    }

    fn minimize(&self) -> PyResult<Self> {
        canonize::minimize(&self.0).map(PyTransducer).map_err(err)
    }

    /// None when equivalent, otherwise the certificate line.
    #[pyo3(signature = (other, depth = 8))]
    fn difference(&self, other: &PyTransducer, depth: usize) -> PyResult<Option<String>> {
        match canonize::equivalent(&self.0, &other.0, depth).map_err(err)? {
            Equivalence::Equivalent => Ok(None),
            Equivalence::Distinct(c) => Ok(Some(c.to_string())),
        }
    }

    #[pyo3(signature = (other, depth = 8))]
    fn equivalent(&self, other: &PyTransducer, depth: usize) -> PyResult<bool> {
        Ok(self.difference(other, depth)?.is_none())
    }

    /// `(u, v)` with `f(alpha z) = u s(z)` and `f(beta z) = v s(z)`, or None.
    fn witness(&self, alpha: &str, beta: &str) -> PyResult<Option<(PyElement, PyElement)>> {
        let (a, b) = (word(alpha)?, word(beta)?);
        let w = canonize::witness_from_transducer(&self.0.complete(), a.letters(), b.letters()).map_err(err)?;
        Ok(w.map(|w| (PyElement(w.u), PyElement(w.v))))
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }
}

/// Learn the minimal machine of a function given as a Transducer or a table text.
#[pyfunction]
#[pyo3(signature = (oracle, bound, depth))]
fn learn(oracle: &Bound<'_, PyAny>, bound: usize, depth: usize) -> PyResult<PyTransducer> {
    let f: FunctionOracle = if let Ok(t) = oracle.cast::<PyTransducer>() {
        t.get().0.clone().into()
    } else {
        let text: String = oracle.extract()?;
        TableOracle::parse(&text).map_err(err)?.into()
    };
    construct_minimal(&f, bound, depth).map(PyTransducer).map_err(err)
}

/// Run the sampled axiom suite; one `(name, passed, trials)` per axiom.
#[pyfunction]
#[pyo3(signature = (descriptor, samples = 1000, seed = 1))]
fn axioms(descriptor: &str, samples: usize, seed: u64) -> PyResult<Vec<(String, bool, usize)>> {
    let m: Monoid = descriptor.parse().map_err(err)?;
    let cfg = SampleConfig {
        seed,
        count: samples,
        ..SampleConfig::default()
    };
    let reports = run_axiom_suite(&m, &cfg).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.axiom.name().to_string(), r.passed, r.trials))
        .collect())
}

#[pymodule]
fn pymgeseq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMonoid>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyTransducer>()?;
    m.add_function(wrap_pyfunction!(mge, m)?)?;
    m.add_function(wrap_pyfunction!(learn, m)?)?;
    m.add_function(wrap_pyfunction!(axioms, m)?)?;
    Ok(())
}
