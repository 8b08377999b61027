//! Python bindings: JSON artifacts in, plain Python values out.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gerbe_core::algebra::{automorphism_structure, group_cohomology as bar_cohomology, FiniteGroup};
use gerbe_core::cohomology::{cech_cohomology as nerve_cohomology, classify_bound_gerbes};
use gerbe_core::extension::{band as band_of, band_class, validate_cocycle, BandClass, Sites};
use gerbe_core::groupoid::{CoverMode, CoverModel};
use gerbe_core::io::{builtin_cover, builtin_group, parse_artifacts, IoError};
use gerbe_core::{CohomologyValue, Limits};

create_exception!(gerbe, SizeBoundError, PyValueError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_error(e: IoError) -> PyErr {
    match e {
        IoError::SizeBound(b) => SizeBoundError::new_err(b.to_string()),
        e => value_error(e),
    }
}

fn named_group(name: &str) -> PyResult<FiniteGroup> {
    builtin_group(name).ok_or_else(|| PyValueError::new_err(format!("unknown group {name}")))
}

fn cohomology_dict<'py>(py: Python<'py>, v: &CohomologyValue) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    match v {
        CohomologyValue::Rational { dim } => d.set_item("dim", dim)?,
        CohomologyValue::Finite(a) => {
            d.set_item("free_rank", a.free_rank)?;
            d.set_item("torsion", a.torsion.clone())?;
        }
    }
    Ok(d)
}

/// Artifacts loaded from JSON text, resolved by name.
#[pyclass]
struct Workspace {
    inner: gerbe_core::io::Workspace,
}

#[pymethods]
impl Workspace {
    #[new]
    #[pyo3(signature = (mode = None))]
    fn new(mode: Option<&str>) -> PyResult<Self> {
        let mode = match mode {
            None => None,
            Some("pointwise") => Some(CoverMode::Pointwise),
            Some("nerve") | Some("nerve-constant") => Some(CoverMode::NerveConstant),
            Some(m) => return Err(PyValueError::new_err(format!("unknown mode {m}"))),
        };
        Ok(Self { inner: gerbe_core::io::Workspace::new(Limits::default(), mode) })
    }

    /// Adds every artifact in `text`; returns their names in order.
    #[pyo3(signature = (text, source = "<string>"))]
    fn load(&mut self, text: &str, source: &str) -> PyResult<Vec<String>> {
        let mut names = Vec::new();
        for a in parse_artifacts(text, source).map_err(io_error)? {
            names.push(a.name().to_string());
            self.inner.insert(a).map_err(io_error)?;
        }
        Ok(names)
    }

    /// Violated cocycle relations of a cocycle artifact; empty when valid.
    fn violations(&self, cocycle: &str) -> PyResult<Vec<String>> {
        let d = self.inner.cocycle(cocycle).map_err(io_error)?;
        Ok(validate_cocycle(&d).violations.iter().map(ToString::to_string).collect())
    }

    /// `(trivial, holonomies)`: whether the band of a valid cocycle is
    /// trivializable, and the Out(G) holonomy of each obstructing loop.
    fn band(&self, cocycle: &str) -> PyResult<(bool, Vec<usize>)> {
        let d = self.inner.cocycle(cocycle).map_err(io_error)?;
        let report = validate_cocycle(&d);
        if let Some(v) = report.violations.first() {
            return Err(PyValueError::new_err(format!("not a cocycle: {v}")));
        }
        let aut = automorphism_structure(&d.group, &self.inner.limits).map_err(value_error)?;
        let b = band_of(&d, &aut);
        Ok(match band_class(&b, &d.cech.groupoid, &Sites::for_cocycle(&d), &aut.out) {
            BandClass::Trivial { .. } => (true, Vec::new()),
            BandClass::Nontrivial { loops } => (false, loops.iter().map(|w| w.holonomy).collect()),
        })
    }
}

/// `(|Aut|, |Inn|, |Out|)` of a group given by its Cayley table.
#[pyfunction]
fn automorphism_counts(table: Vec<Vec<usize>>) -> PyResult<(usize, usize, usize)> {
    let g = FiniteGroup::validate(&table).map_err(value_error)?;
    let s = automorphism_structure(&g, &Limits::default()).map_err(value_error)?;
    Ok((s.reps.len(), s.inn.len(), s.out.order()))
}

/// Number of bound gerbes with the given builtin group over the nerve of a
/// builtin cover, with one representative per class when enumerable.
#[pyfunction]
fn classify(group: &str, cover: &str) -> PyResult<(u64, Option<Vec<Vec<usize>>>)> {
    let g = named_group(group)?;
    let c = builtin_cover(cover).ok_or_else(|| PyValueError::new_err(format!("unknown cover {cover}")))?;
    let out = classify_bound_gerbes(&c.nerve(), &g, &Limits::default()).map_err(value_error)?;
    Ok((out.count, out.representatives))
}

/// `(free_rank, torsion)` of `H^k` of the nerve with coefficients `⊕ Z/a`
/// (`a = 0` is the integers).
#[pyfunction]
fn cech_cohomology(
    points: usize,
    sets: Vec<Vec<usize>>,
    coefficients: Vec<u64>,
    degree: usize,
) -> PyResult<(usize, Vec<u64>)> {
    let cover = CoverModel::new(points, sets, CoverMode::NerveConstant).map_err(value_error)?;
    let h = nerve_cohomology(&cover.nerve(), &coefficients, degree).map_err(value_error)?;
    Ok((h.free_rank, h.torsion))
}

/// `H^n(G, M)` for a builtin group and builtin module such as `Q`,
/// `Z/2` or `sign-Q`.
#[pyfunction]
fn group_cohomology<'py>(py: Python<'py>, group: &str, module: &str, degree: usize) -> PyResult<Bound<'py, PyDict>> {
    let g = named_group(group)?;
    let ws = gerbe_core::io::Workspace::new(Limits::default(), None);
    let m = ws.group_module(module, &g).map_err(io_error)?;
    let v = bar_cohomology(&g, &m, degree, &Limits::default()).map_err(value_error)?;
    cohomology_dict(py, &v)
}

#[pymodule]
fn gerbe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Workspace>()?;
    m.add_function(wrap_pyfunction!(automorphism_counts, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(cech_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(group_cohomology, m)?)?;
    m.add("SizeBoundError", m.py().get_type_bound::<SizeBoundError>())?;
    Ok(())
}
