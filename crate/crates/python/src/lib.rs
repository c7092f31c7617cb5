//! Python bindings: structures and formulas, Tarski–Vaught checks, posets,
//! hypergraphs and the LRK lattices. Reports come back as plain dicts.

use std::collections::BTreeMap;

use mll_core::fo::{parse_formula, Assignment, FinStructure};
use mll_core::hypergraph::{Hypergraph, Threshold};
use mll_core::io::{structure_to_json, StructureFile};
use mll_core::lattice::{FinPoset, PosetFile};
use mll_core::lrk::{self, SignedTypeSet, TypeSpectrum};
use mll_core::tv::{self, EnumerateOptions, FormulaFamily, JoinParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn threshold(tau: usize) -> PyResult<Threshold> {
    Threshold::new(tau).map_err(err)
}

/// A finite structure over a relational signature with constants.
#[pyclass(name = "Structure", module = "mll", frozen)]
struct PyStructure(FinStructure);

#[pymethods]
impl PyStructure {
    /// `relations` maps a name to `(arity, tuples)`, `constants` a name to
    /// an element.
    #[new]
    #[pyo3(signature = (universe, relations, constants=BTreeMap::new()))]
    fn new(
        universe: Vec<String>,
        relations: BTreeMap<String, (usize, Vec<Vec<String>>)>,
        constants: BTreeMap<String, String>,
    ) -> PyResult<Self> {
        let rels = relations
            .into_iter()
            .map(|(name, (arity, tuples))| (name, arity, tuples));
        FinStructure::new(universe, rels, constants).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: StructureFile = serde_json::from_str(text).map_err(err)?;
        file.to_structure().map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        structure_to_json(&self.0).to_string()
    }

    #[getter]
    fn universe(&self) -> Vec<String> {
        self.0.universe().to_vec()
    }

    #[pyo3(signature = (formula, assignment=BTreeMap::new()))]
    fn evaluate(&self, formula: &str, assignment: BTreeMap<String, String>) -> PyResult<bool> {
        let phi = parse_formula(formula, self.0.signature()).map_err(err)?;
        let a: Assignment = assignment.into_iter().collect();
        self.0.evaluate(&phi, &a).map_err(err)
    }

    fn ef_equivalent(&self, left: Vec<String>, right: Vec<String>, rank: usize) -> PyResult<bool> {
        self.0.ef_equivalent(&left, &right, rank).map_err(err)
    }

    fn induced(&self, subset: Vec<String>) -> PyResult<Self> {
        self.0.induced_substructure(&subset).map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }
}

/// The given formulas, or the generated rank-one family when `None`.
fn family(m: &FinStructure, formulas: Option<Vec<String>>) -> PyResult<FormulaFamily> {
    match formulas {
        None => Ok(FormulaFamily::rank_one(m.signature())),
        Some(fs) => fs
            .iter()
            .map(|f| parse_formula(f, m.signature()))
            .collect::<Result<Vec<_>, _>>()
            .map(FormulaFamily::new)
            .map_err(err),
    }
}

#[pyfunction]
#[pyo3(signature = (structure, subset, formulas=None))]
fn tv_check<'py>(
    py: Python<'py>,
    structure: &PyStructure,
    subset: Vec<String>,
    formulas: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let m = &structure.0;
    to_py(py, &tv::tv_check(m, &subset, &family(m, formulas)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (structure, n1, n2, formulas=None))]
fn tv_pair_check<'py>(
    py: Python<'py>,
    structure: &PyStructure,
    n1: Vec<String>,
    n2: Vec<String>,
    formulas: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let m = &structure.0;
    to_py(py, &tv::tv_pair_check(m, &n1, &n2, &family(m, formulas)?).map_err(err)?)
}

/// `params` is `"as-written"` or `"generated"`.
#[pyfunction]
#[pyo3(signature = (structure, n1, n2, formulas=None, params="as-written"))]
fn tv_join_check<'py>(
    py: Python<'py>,
    structure: &PyStructure,
    n1: Vec<String>,
    n2: Vec<String>,
    formulas: Option<Vec<String>>,
    params: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = match params {
        "as-written" => JoinParams::AsWritten,
        "generated" => JoinParams::Generated,
        other => return Err(err(format!("unknown parameter mode `{other}`"))),
    };
    let m = &structure.0;
    to_py(
        py,
        &tv::tv_join_check_with(m, &n1, &n2, &family(m, formulas)?, mode).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (structure, formulas=None, threads=1))]
fn enumerate_substructural(
    structure: &PyStructure,
    formulas: Option<Vec<String>>,
    threads: usize,
) -> PyResult<Vec<Vec<String>>> {
    let m = &structure.0;
    let opts = EnumerateOptions {
        threads,
        ..Default::default()
    };
    tv::enumerate_substructural(m, &family(m, formulas)?, opts).map_err(err)
}

/// A finite partial order.
#[pyclass(name = "Poset", module = "mll", frozen)]
struct PyPoset(FinPoset);

#[pymethods]
impl PyPoset {
    /// The reflexive-transitive closure of `leq` over `elements`.
    #[new]
    fn new(elements: Vec<String>, leq: Vec<(String, String)>) -> PyResult<Self> {
        FinPoset::from_relation(elements, &leq).map(Self).map_err(err)
    }

    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        FinPoset::chain(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn pentagon() -> Self {
        Self(FinPoset::pentagon())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(err)?;
        FinPoset::from_file(&file).map(Self).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0.to_file()).map_err(err)
    }

    #[staticmethod]
    fn from_dot(text: &str) -> PyResult<Self> {
        FinPoset::from_dot(text).map(Self).map_err(err)
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        self.0.leq_labels(a, b).map_err(err)
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        self.0.meet(a, b).map_err(err)
    }

    fn join(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        self.0.join(a, b).map_err(err)
    }

    /// Covering pairs `(lower, upper)`.
    fn covers(&self) -> Vec<(String, String)> {
        self.0.hasse()
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.classify())
    }

    fn product(&self, other: &PyPoset) -> Self {
        Self(self.0.product(&other.0))
    }

    /// An order isomorphism as a dict, or `None`.
    fn isomorphism(&self, other: &PyPoset) -> PyResult<Option<BTreeMap<String, String>>> {
        let map = self.0.isomorphism(&other.0).map_err(err)?;
        Ok(map.map(|pairs| pairs.into_iter().collect()))
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }
}

/// A set of vertices with a family of edges over it.
#[pyclass(name = "Hypergraph", module = "mll", frozen)]
struct PyHypergraph(Hypergraph);

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<Vec<String>>) -> PyResult<Self> {
        Hypergraph::new(vertices, edges).map(Self).map_err(err)
    }

    #[staticmethod]
    fn powerset(vertices: Vec<String>) -> PyResult<Self> {
        Hypergraph::powerset(vertices).map(Self).map_err(err)
    }

    #[staticmethod]
    fn complete_union(parts: Vec<PyRef<'_, PyHypergraph>>) -> PyResult<Self> {
        let hs: Vec<Hypergraph> = parts.iter().map(|h| h.0.clone()).collect();
        Hypergraph::complete_union(&hs).map(Self).map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.0.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<String>> {
        self.0.edges()
    }

    fn restrict(&self, a: Vec<String>) -> PyResult<Self> {
        self.0.restrict(&a).map(Self).map_err(err)
    }

    #[pyo3(signature = (a, tau=2))]
    fn is_free(&self, a: Vec<String>, tau: usize) -> PyResult<bool> {
        self.0.is_h_free(&a, threshold(tau)?).map_err(err)
    }

    #[pyo3(signature = (a, b, tau=2))]
    fn are_independent(&self, a: Vec<String>, b: Vec<String>, tau: usize) -> PyResult<bool> {
        self.0.are_h_independent(&a, &b, threshold(tau)?).map_err(err)
    }

    #[pyo3(signature = (a, b, tau=2))]
    fn check_decomposition(&self, a: Vec<String>, b: Vec<String>, tau: usize) -> PyResult<bool> {
        self.0.check_decomposition(&a, &b, threshold(tau)?).map_err(err)
    }

    #[pyo3(signature = (a, acl0=Vec::new()))]
    fn restriction_profile<'py>(
        &self,
        py: Python<'py>,
        a: Vec<String>,
        acl0: Vec<String>,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.restriction_profile(&a, &acl0).map_err(err)?)
    }

    fn __len__(&self) -> usize {
        self.0.edge_count()
    }
}

#[pyfunction]
fn lrk_lattice(k: usize, s: usize) -> PyResult<PyPoset> {
    lrk::lrk_lattice(&TypeSpectrum::new(k, s)).map(PyPoset).map_err(err)
}

#[pyfunction]
fn lrk_classify<'py>(py: Python<'py>, k: usize, s: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &lrk::classify_lrk(&TypeSpectrum::new(k, s)).map_err(err)?)
}

#[pyfunction]
fn lrk_count(py: Python<'_>, k: usize, s: usize) -> PyResult<Bound<'_, PyAny>> {
    let n = lrk::count_countable_models(&TypeSpectrum::new(k, s)).map_err(err)?;
    py.import("builtins")?.getattr("int")?.call1((n.to_string(),))
}

fn signed_op(
    k: usize,
    s: usize,
    x: &str,
    y: &str,
    op: fn(&SignedTypeSet, &SignedTypeSet, &TypeSpectrum) -> Result<SignedTypeSet, lrk::LrkError>,
) -> PyResult<String> {
    let sp = TypeSpectrum::new(k, s);
    let x = SignedTypeSet::parse(&sp, x).map_err(err)?;
    let y = SignedTypeSet::parse(&sp, y).map_err(err)?;
    op(&x, &y, &sp).map(|z| z.to_string()).map_err(err)
}

/// Meet of two signed type-sets written as `"p1:0,q1:1"` or `"{}"`.
#[pyfunction]
fn lrk_meet(k: usize, s: usize, x: &str, y: &str) -> PyResult<String> {
    signed_op(k, s, x, y, lrk::lrk_meet)
}

#[pyfunction]
fn lrk_join(k: usize, s: usize, x: &str, y: &str) -> PyResult<String> {
    signed_op(k, s, x, y, lrk::lrk_join)
}

#[pymodule]
fn mll(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(tv_check, m)?)?;
    m.add_function(wrap_pyfunction!(tv_pair_check, m)?)?;
    m.add_function(wrap_pyfunction!(tv_join_check, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_substructural, m)?)?;
    m.add_function(wrap_pyfunction!(lrk_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(lrk_classify, m)?)?;
    m.add_function(wrap_pyfunction!(lrk_count, m)?)?;
    m.add_function(wrap_pyfunction!(lrk_meet, m)?)?;
    m.add_function(wrap_pyfunction!(lrk_join, m)?)?;
    Ok(())
}
