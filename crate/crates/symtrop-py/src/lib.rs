//! Python bindings for `symtrop`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use symtrop::acceptance::run_all;
use symtrop::certify::{self, RationalSymMatrix, Report};
use symtrop::exactnum::{fmt_rat, parse_rat};
use symtrop::partitions::{self, Partition};
use symtrop::polyhedra;
use symtrop::symfunc::find_binomial_violation;
use symtrop::symreduce::{build_pencil, trop_of_sos, PencilKind};
use symtrop::tropical::{self, facet_string};

fn err(e: symtrop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn int_rows(rows: &[polyhedra::IntVec]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// An integer partition, built from "4,2^2", "(4,2,2)" or a list of parts.
#[pyclass(name = "Partition", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition {
    inner: Partition,
}

fn partition_from(obj: &Bound<'_, PyAny>) -> PyResult<Partition> {
    if let Ok(p) = obj.cast::<PyPartition>() {
        return Ok(p.get().inner.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return Partition::parse(&s).map_err(err);
    }
    let parts: Vec<u32> = obj.extract()?;
    Partition::new(parts).map_err(err)
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPartition { inner: partition_from(obj)? })
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> u32 {
        self.inner.size()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn superdominates(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        partitions::superdominates(&self.inner, &partition_from(other)?).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition('{}')", self.inner.to_list_string())
    }
}

/// A polyhedral cone with both representations; vectors are lists of
/// integer strings so nothing overflows.
#[pyclass(name = "Cone", frozen)]
struct PyCone {
    inner: polyhedra::Cone,
    labels: Option<Vec<Partition>>,
}

#[pymethods]
impl PyCone {
    #[staticmethod]
    #[pyo3(signature = (dim, inequalities, equations = Vec::new()))]
    fn from_h(dim: usize, inequalities: Vec<Vec<String>>, equations: Vec<Vec<String>>) -> PyResult<Self> {
        let parse = |rows: Vec<Vec<String>>| -> PyResult<Vec<Vec<symtrop::Rational>>> {
            rows.iter().map(|r| r.iter().map(|s| parse_rat(s).map_err(err)).collect()).collect()
        };
        let c = polyhedra::Cone::from_h(dim, &parse(inequalities)?, &parse(equations)?).map_err(err)?;
        Ok(PyCone { inner: c, labels: None })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<String>> {
        int_rows(self.inner.facets())
    }

    #[getter]
    fn equations(&self) -> Vec<Vec<String>> {
        int_rows(self.inner.equations())
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<String>> {
        int_rows(self.inner.extreme_rays())
    }

    #[getter]
    fn lineality(&self) -> Vec<Vec<String>> {
        int_rows(self.inner.lineality_space())
    }

    /// Facets as readable inequalities, when coordinates are partitions.
    fn inequalities(&self) -> Vec<String> {
        let labels: Vec<Partition> = match &self.labels {
            Some(l) => l.clone(),
            None => (1..=self.inner.dim() as u32).map(|k| Partition::of(&[k])).collect(),
        };
        self.inner.facets().iter().map(|f| facet_string(f, &labels)).collect()
    }

    fn contains(&self, point: Vec<String>) -> PyResult<bool> {
        let x = point.iter().map(|s| parse_rat(s).map_err(err)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.contains_point(&x))
    }

    fn dual(&self) -> Self {
        PyCone { inner: self.inner.dual(), labels: self.labels.clone() }
    }

    fn __eq__(&self, other: &Self) -> bool {
        polyhedra::cone_equal(&self.inner, &other.inner)
    }
}

fn labelled(inner: polyhedra::Cone, labels: Vec<Partition>) -> PyCone {
    PyCone { inner, labels: Some(labels) }
}

#[pyfunction]
fn superdominates(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<bool> {
    partitions::superdominates(&partition_from(a)?, &partition_from(b)?).map_err(err)
}

/// Partitions of d in revlex order (even parts only with even=True).
#[pyfunction]
#[pyo3(signature = (d, even = false))]
fn partitions_of(d: u32, even: bool) -> Vec<PyPartition> {
    let ps = if even { partitions::enum_even_partitions(d) } else { partitions::enum_partitions(d) };
    ps.into_iter().map(|inner| PyPartition { inner }).collect()
}

/// Cover relations (upper, lower) of the superdominance poset on partitions of d.
#[pyfunction]
fn hasse(d: u32) -> Vec<(PyPartition, PyPartition)> {
    partitions::hasse(d)
        .edge_partitions()
        .into_iter()
        .map(|(a, b)| (PyPartition { inner: a }, PyPartition { inner: b }))
        .collect()
}

#[pyfunction]
fn hasse_dot(d: u32) -> String {
    partitions::hasse(d).to_dot()
}

/// A point x >= 0 with p_a(x) < p_b(x), or None.
#[pyfunction]
#[pyo3(signature = (a, b, max_n = 12))]
fn binomial_violation(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, max_n: usize) -> PyResult<Option<Vec<String>>> {
    let (a, b) = (partition_from(a)?, partition_from(b)?);
    if a.size() != b.size() {
        return Err(PyValueError::new_err("partitions must have the same size"));
    }
    Ok(find_binomial_violation(&a, &b, max_n).map(|x| x.iter().map(fmt_rat).collect()))
}

#[pyfunction]
fn trop_vandermonde(d: usize) -> PyResult<PyCone> {
    Ok(PyCone { inner: tropical::trop_vandermonde(d).map_err(err)?, labels: None })
}

#[pyfunction]
fn trop_bp_dual(d: usize) -> PyResult<PyCone> {
    Ok(labelled(tropical::trop_bp_dual(d).map_err(err)?, tropical::even_coords(d)))
}

#[pyfunction]
fn t_k(d: usize, k: usize) -> PyResult<PyCone> {
    Ok(labelled(tropical::t_k_cone(d, k).map_err(err)?, tropical::even_coords(d)))
}

/// Smallest k <= k_max with T^(k) equal to trop_bp_dual(d), or None.
#[pyfunction]
#[pyo3(signature = (d, k_max = 4))]
fn tau(d: usize, k_max: usize) -> PyResult<Option<usize>> {
    Ok(tropical::stabilization_tau(d, k_max).map_err(err)?.tau)
}

fn pencil_kind(kind: &str) -> PyResult<PencilKind> {
    PencilKind::parse(kind).map_err(err)
}

#[pyfunction]
fn pencil<'py>(py: Python<'py>, kind: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = build_pencil(&pencil_kind(kind)?).map_err(err)?;
    json_to_py(py, &p.to_json())
}

#[pyfunction]
fn trop_sos(kind: &str) -> PyResult<PyCone> {
    let p = build_pencil(&pencil_kind(kind)?).map_err(err)?;
    let c = trop_of_sos(&p).map_err(err)?;
    Ok(labelled(c, p.coords))
}

/// Exact PSD test; entries may be ints or strings such as "2/3".
#[pyfunction]
fn is_psd(matrix: &Bound<'_, PyList>) -> PyResult<bool> {
    let mut rows = Vec::new();
    for row in matrix.iter() {
        let mut r = Vec::new();
        for x in row.cast::<PyList>()?.iter() {
            r.push(parse_rat(&x.str()?.to_cow()?).map_err(err)?);
        }
        rows.push(r);
    }
    Ok(certify::is_psd(&RationalSymMatrix::new(rows).map_err(err)?))
}

/// Runs "quartic", "decic" or "sos4-rays" and returns the report as a dict.
#[pyfunction]
fn certify_check<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let r: Report = match name {
        "quartic" => certify::verify_quartic(),
        "decic" => certify::verify_decic(),
        "sos4-rays" => certify::verify_sos4_extreme_rays(&certify::default_sos4_samples()).map_err(err)?,
        other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
    };
    let v = serde_json::to_value(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// (criterion line, passed) for every acceptance criterion.
#[pyfunction]
fn verify_all() -> Vec<(String, bool)> {
    run_all().iter().map(|r| (r.line(), r.passed)).collect()
}

#[pymodule]
fn symtrop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyCone>()?;
    m.add_function(wrap_pyfunction!(superdominates, m)?)?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(hasse, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_dot, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_violation, m)?)?;
    m.add_function(wrap_pyfunction!(trop_vandermonde, m)?)?;
    m.add_function(wrap_pyfunction!(trop_bp_dual, m)?)?;
    m.add_function(wrap_pyfunction!(t_k, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(pencil, m)?)?;
    m.add_function(wrap_pyfunction!(trop_sos, m)?)?;
    m.add_function(wrap_pyfunction!(is_psd, m)?)?;
    m.add_function(wrap_pyfunction!(certify_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
