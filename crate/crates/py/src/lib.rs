use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use flag_pieces::analysis::{
    derived_primes, variants_of, xi_from_samples, Counter, Criterion, SampleMode, Verifier, VerifyConfig,
};
use flag_pieces::coxeter::{build_weyl, CoxeterGroup, TypeLabel};
use flag_pieces::error::Error;
use flag_pieces::groups::{find_class, unipotent_partitions, Variant};
use flag_pieces::hecke_chars::solve_unipotent_traces;
use flag_pieces::tables::{Kind, Tables, Payload, Z};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Json(_) => PyRuntimeError::new_err(e.to_string()),
        Error::OverdeterminedMismatch { .. }
        | Error::NonIntegerCoefficients(_)
        | Error::NotCentral(_)
        | Error::MinCoeffMismatch { .. }
        | Error::FullSystemMismatch { .. }
        | Error::SingularAtPoint(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn label(text: &str) -> PyResult<TypeLabel> {
    text.parse().map_err(py_err)
}

fn variant(text: &str) -> PyResult<Variant> {
    text.parse().map_err(py_err)
}

/// A finite Weyl group with elements ordered by length.
#[pyclass(name = "WeylGroup", frozen)]
struct PyWeylGroup {
    inner: CoxeterGroup,
}

#[pymethods]
impl PyWeylGroup {
    #[new]
    fn new(type_label: &str) -> PyResult<Self> {
        Ok(Self { inner: build_weyl(label(type_label)?).map_err(py_err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Reduced words, e.g. "s1s2"; the identity is "1".
    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|w| self.inner.word_label(w)).collect()
    }

    fn length(&self, word: &str) -> PyResult<usize> {
        Ok(self.inner.length(self.inner.parse_element(word).map_err(py_err)?))
    }

    /// Conjugacy class labels such as "(s1s2)".
    fn classes(&self) -> Vec<String> {
        (0..self.inner.classes().len()).map(|c| self.inner.class_label(c)).collect()
    }

    fn class_of(&self, word: &str) -> PyResult<String> {
        let w = self.inner.parse_element(word).map_err(py_err)?;
        Ok(self.inner.class_label(self.inner.class_of(w)))
    }

    fn __repr__(&self) -> String {
        format!("WeylGroup('{}')", self.inner.label())
    }
}

/// `(name, partition)` for each unipotent class, e.g. `("u1", "2,1")`.
#[pyfunction]
fn unipotent_classes(type_label: &str) -> PyResult<Vec<(String, String)>> {
    Ok(unipotent_partitions(label(type_label)?)
        .map_err(py_err)?
        .into_iter()
        .map(|c| (c.name(), c.partition.to_string()))
        .collect())
}

/// Number of flags in each relative position to their image, by reduced word.
#[pyfunction]
#[pyo3(signature = (type_label, q, unipotent, form = "std", jobs = 1))]
fn count(type_label: &str, q: u64, unipotent: &str, form: &str, jobs: usize) -> PyResult<BTreeMap<String, u64>> {
    let t = label(type_label)?;
    let group = build_weyl(t).map_err(py_err)?;
    let class = find_class(t, unipotent).map_err(py_err)?;
    let cv = Counter::new(jobs).unipotent(&group, q, &[(&class, variant(form)?)]).map_err(py_err)?.remove(0);
    Ok(group.elements().map(|w| (group.word_label(w), cv.get(w))).collect())
}

/// Xi polynomials in `u = q` by Weyl conjugacy class.
#[pyfunction]
#[pyo3(signature = (type_label, unipotent, form = "std", primes = None, jobs = 1))]
fn interpolate(
    type_label: &str,
    unipotent: &str,
    form: &str,
    primes: Option<Vec<u64>>,
    jobs: usize,
) -> PyResult<BTreeMap<String, String>> {
    let t = label(type_label)?;
    let group = build_weyl(t).map_err(py_err)?;
    let class = find_class(t, unipotent).map_err(py_err)?;
    let v = variant(form)?;
    if !variants_of(&class).contains(&v) {
        return Err(PyValueError::new_err(format!("{} has a single rational form", class.name())));
    }
    let mut counter = Counter::new(jobs);
    let samples = primes
        .unwrap_or_else(|| derived_primes(t))
        .into_iter()
        .map(|q| Ok(counter.unipotent(&group, q, &[(&class, v)])?.remove(0)))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(py_err)?;
    let entry = xi_from_samples(&group, &class.name(), &samples, SampleMode::Full).map_err(py_err)?;
    Ok((0..group.classes().len()).map(|c| (group.class_label(c), entry.per_class[c].to_string())).collect())
}

/// Unipotent traces on the Hecke characters at `u = q`, as exact rationals in text.
#[pyfunction]
#[pyo3(signature = (type_label, q, unipotent, form = "std"))]
fn solve_traces(type_label: &str, q: u64, unipotent: &str, form: &str) -> PyResult<BTreeMap<String, String>> {
    let t = label(type_label)?;
    let group = build_weyl(t).map_err(py_err)?;
    let class = find_class(t, unipotent).map_err(py_err)?;
    let cv = Counter::new(1).unipotent(&group, q, &[(&class, variant(form)?)]).map_err(py_err)?.remove(0);
    let counts: Vec<_> = cv.counts.iter().map(|&n| n.into()).collect();
    let x = solve_unipotent_traces(&group, &counts, q).map_err(py_err)?;
    Ok(x.into_iter().map(|(l, v)| (l.to_string(), v.to_string())).collect())
}

/// A tabulated value: kind is one of Xi, xi, S, ss, c_u, n_u.
#[pyfunction]
#[pyo3(signature = (type_label, kind, unipotent, w_class = None, z = "1"))]
fn table_value(type_label: &str, kind: &str, unipotent: &str, w_class: Option<&str>, z: &str) -> PyResult<String> {
    let tables = Tables::load(label(type_label)?).map_err(py_err)?;
    let kind: Kind = kind.parse().map_err(py_err)?;
    let z: Z = z.parse().map_err(py_err)?;
    let g = tables.group();
    let w = w_class.map(|c| g.parse_class(c)).transpose().map_err(py_err)?;
    let needs_z = matches!(kind, Kind::Xi | Kind::XiAtOne);
    let entry = tables.lookup(kind, unipotent, w, needs_z.then_some(z)).map_err(py_err)?;
    Ok(match &entry.payload {
        Payload::Poly(p) => p.to_string(),
        Payload::Int(n) => n.to_string(),
        Payload::Classes(cs) => {
            let labels: Vec<String> = cs.iter().map(|&c| g.class_label(c)).collect();
            format!("{{{}}}", labels.join(", "))
        }
        Payload::Class(c) => g.class_label(*c),
    })
}

/// Runs the verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (types = None, sampled_primes = None, derive = true, jobs = 1, cache_dir = None))]
fn verify(
    types: Option<Vec<String>>,
    sampled_primes: Option<Vec<u64>>,
    derive: bool,
    jobs: usize,
    cache_dir: Option<std::path::PathBuf>,
) -> PyResult<(bool, String)> {
    let defaults = VerifyConfig::default();
    let config = VerifyConfig {
        types: match types {
            Some(ts) => ts.iter().map(|t| label(t)).collect::<PyResult<_>>()?,
            None => defaults.types,
        },
        sampled_primes: sampled_primes.unwrap_or(defaults.sampled_primes),
        jobs,
        cache_dir,
        derive,
        ..defaults
    };
    let report = Verifier::new(config).and_then(|mut v| v.run_all(&Criterion::ALL)).map_err(py_err)?;
    Ok((report.passed(), report.to_json().map_err(py_err)?))
}

#[pymodule]
#[pyo3(name = "flag_pieces")]
fn flag_pieces_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeylGroup>()?;
    m.add_function(wrap_pyfunction!(unipotent_classes, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_traces, m)?)?;
    m.add_function(wrap_pyfunction!(table_value, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
