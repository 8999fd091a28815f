use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use quotshrink::blocks::{is_primitive, minimal_block, nontrivial_block_system};
use quotshrink::cert::{emit_certificate, verify_certificate, Certificate, ProblemInput};
use quotshrink::{catalog, mindeg, normal, wreath, Error};

create_exception!(_quotshrink, QuotshrinkError, PyException);

fn py_err(e: Error) -> PyErr {
    QuotshrinkError::new_err(format!("[{}] {e}", e.kind()))
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for quotshrink::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A permutation of `1..degree`.
#[pyclass(name = "Perm", module = "quotshrink", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPerm(quotshrink::Perm);

#[pymethods]
impl PyPerm {
    /// From a 1-based image list: `images[i - 1]` is the image of `i`.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        quotshrink::Perm::from_images(&images).py().map(PyPerm)
    }

    #[staticmethod]
    fn parse(cycles: &str, degree: usize) -> PyResult<Self> {
        quotshrink::Perm::parse_cycles(cycles, degree).py().map(PyPerm)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.0.images()
    }

    fn act(&self, x: usize) -> PyResult<usize> {
        self.0.act(x).py()
    }

    /// `self * other` applies `self` first.
    fn __mul__(&self, other: &PyPerm) -> PyResult<Self> {
        self.0.compose(&other.0).py().map(PyPerm)
    }

    fn inverse(&self) -> Self {
        PyPerm(self.0.inverse())
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn __str__(&self) -> String {
        self.0.format_cycles()
    }

    fn __repr__(&self) -> String {
        format!("Perm.parse({:?}, {})", self.0.format_cycles(), self.0.degree())
    }
}

/// Permutation group given by generators.
#[pyclass(name = "PermGroup", module = "quotshrink", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroup(quotshrink::PermGroup);

#[pymethods]
impl PyGroup {
    /// `generators` are cycle-notation strings.
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens = quotshrink::perm::parse_all(&generators, degree).py()?;
        quotshrink::PermGroup::new(degree, gens).py().map(PyGroup)
    }

    #[staticmethod]
    fn from_perms(degree: usize, generators: Vec<PyPerm>) -> PyResult<Self> {
        quotshrink::PermGroup::new(degree, generators.into_iter().map(|p| p.0).collect())
            .py()
            .map(PyGroup)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn generators(&self) -> Vec<String> {
        quotshrink::perm::format_all(self.0.generators())
    }

    fn order(&self) -> BigUint {
        self.0.order()
    }

    fn contains(&self, p: &PyPerm) -> PyResult<bool> {
        self.0.contains(&p.0).py()
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn is_primitive(&self) -> PyResult<bool> {
        is_primitive(&self.0).py()
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.0.orbits()
    }

    fn is_subgroup_of(&self, other: &PyGroup) -> bool {
        self.0.is_subgroup_of(&other.0)
    }

    fn is_normal_in(&self, other: &PyGroup) -> bool {
        self.0.is_normal_in(&other.0)
    }

    fn derived_subgroup(&self) -> Self {
        PyGroup(self.0.derived_subgroup())
    }

    fn stabilizer(&self, x: usize) -> PyResult<Self> {
        self.0.stabilizer(x).py().map(PyGroup)
    }

    /// Blocks of the finest block system joining `a` and `b`.
    fn minimal_block(&self, a: usize, b: usize) -> PyResult<Vec<Vec<usize>>> {
        minimal_block(&self.0, a, b).py().map(|s| s.blocks())
    }

    fn block_system(&self) -> PyResult<Option<Vec<Vec<usize>>>> {
        nontrivial_block_system(&self.0).py().map(|s| s.map(|s| s.blocks()))
    }

    fn __repr__(&self) -> String {
        format!("PermGroup({}, {:?})", self.0.degree(), self.generators())
    }
}

/// Result of a reduction: images of the generators of `G` in `Sym(m)`.
#[pyclass(name = "QuotientRep", module = "quotshrink", frozen)]
struct PyQuotientRep(quotshrink::QuotientRep);

#[pymethods]
impl PyQuotientRep {
    #[getter]
    fn m(&self) -> usize {
        self.0.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn transitive(&self) -> bool {
        self.0.bound_certificate.transitive
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.0.bound_certificate.max_degree
    }

    #[getter]
    fn kernel_order(&self) -> BigUint {
        self.0.kernel_certificate.kernel_order.clone()
    }

    fn images(&self) -> Vec<String> {
        quotshrink::perm::format_all(self.0.rho.gen_images())
    }

    fn image(&self) -> PyGroup {
        PyGroup(self.0.rho.image().clone())
    }

    /// `(depth, branch, degree_in, degree_out)` per step.
    fn trace(&self) -> Vec<(usize, String, usize, usize)> {
        self.0
            .trace
            .iter()
            .map(|t| (t.depth, t.branch.clone(), t.degree_in, t.degree_out))
            .collect()
    }

    fn certificate_json(&self) -> String {
        emit_certificate(&self.0).to_json()
    }
}

#[pyfunction]
fn embed_quotient(g: &PyGroup, n: &PyGroup) -> PyResult<PyQuotientRep> {
    quotshrink::embed_quotient(&g.0, &n.0).py().map(PyQuotientRep)
}

#[pyfunction]
fn embed_quotient_radical(g: &PyGroup, n: &PyGroup) -> PyResult<PyQuotientRep> {
    quotshrink::embed_quotient_radical(&g.0, &n.0).py().map(PyQuotientRep)
}

/// Checks a certificate JSON document; returns `m` on success.
#[pyfunction]
fn verify(certificate_json: &str) -> PyResult<usize> {
    let cert = Certificate::from_json(certificate_json).py()?;
    verify_certificate(&cert).py().map(|r| r.m)
}

/// `(degree, images of the generators)` of a smallest faithful action.
#[pyfunction]
fn min_faithful_rep(g: &PyGroup) -> PyResult<(usize, Vec<String>)> {
    let r = mindeg::min_faithful_rep(&g.0).py()?;
    Ok((r.degree, quotshrink::perm::format_all(r.witness.gen_images())))
}

#[pyfunction]
fn min_degree(g: &PyGroup) -> PyResult<usize> {
    mindeg::min_degree(&g.0).py()
}

/// Images of the generators of `g` acting on the right cosets of `h`.
#[pyfunction]
fn coset_action(g: &PyGroup, h: &PyGroup) -> PyResult<Vec<String>> {
    quotshrink::coset_action(&g.0, &h.0)
        .py()
        .map(|a| quotshrink::perm::format_all(a.gen_images()))
}

#[pyfunction]
fn normal_closure(g: &PyGroup, seeds: Vec<PyPerm>) -> PyResult<PyGroup> {
    let seeds: Vec<_> = seeds.into_iter().map(|p| p.0).collect();
    quotshrink::normal_closure(&g.0, &seeds).py().map(PyGroup)
}

#[pyfunction]
fn is_minimal_normal(g: &PyGroup, n: &PyGroup) -> PyResult<bool> {
    normal::is_minimal_normal(&g.0, &n.0).py()
}

/// `(k, |S|, |T|, |T/S|)` for `N = S^k` normal in `G`.
#[pyfunction]
fn socle_decomposition(g: &PyGroup, n: &PyGroup) -> PyResult<(usize, BigUint, BigUint, BigUint)> {
    let d = normal::socle_decomposition(&g.0, &n.0).py()?;
    Ok((d.k(), d.factors()[0].order(), d.t_rep().order(), d.outer_order()))
}

#[pyfunction]
fn wreath_imprimitive(u: &PyGroup, v: &PyGroup) -> PyResult<PyGroup> {
    wreath::wreath_imprimitive(&u.0, &v.0).py().map(|w| PyGroup(w.group().clone()))
}

#[pyfunction]
fn wreath_product_action(u: &PyGroup, v: &PyGroup) -> PyResult<PyGroup> {
    wreath::wreath_product_action(&u.0, &v.0).py().map(|w| PyGroup(w.group().clone()))
}

#[pyfunction]
fn symmetric(n: usize) -> PyGroup {
    PyGroup(catalog::symmetric(n))
}

#[pyfunction]
fn alternating(n: usize) -> PyGroup {
    PyGroup(catalog::alternating(n))
}

#[pyfunction]
fn cyclic(n: usize) -> PyGroup {
    PyGroup(catalog::cyclic(n))
}

#[pyfunction]
fn psl2(q: usize) -> PyResult<PyGroup> {
    catalog::psl2(q).py().map(PyGroup)
}

#[pyfunction]
fn pgl2(q: usize) -> PyResult<PyGroup> {
    catalog::pgl2(q).py().map(PyGroup)
}

#[pyfunction]
fn pgaml2(q: usize) -> PyResult<PyGroup> {
    catalog::pgaml2(q).py().map(PyGroup)
}

#[pyfunction]
fn direct_product(parts: Vec<PyGroup>) -> PyGroup {
    let refs: Vec<&quotshrink::PermGroup> = parts.iter().map(|g| &g.0).collect();
    PyGroup(catalog::direct_product(&refs))
}

/// Problem document in the JSON input format.
#[pyfunction]
#[pyo3(signature = (g, n=None))]
fn problem_json(g: &PyGroup, n: Option<&PyGroup>) -> String {
    ProblemInput::new(&g.0, n.map(|n| &n.0), None).to_json()
}

#[pymodule]
fn _quotshrink(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QuotshrinkError", m.py().get_type::<QuotshrinkError>())?;
    m.add_class::<PyPerm>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyQuotientRep>()?;
    m.add_function(wrap_pyfunction!(embed_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(embed_quotient_radical, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(min_faithful_rep, m)?)?;
    m.add_function(wrap_pyfunction!(min_degree, m)?)?;
    m.add_function(wrap_pyfunction!(coset_action, m)?)?;
    m.add_function(wrap_pyfunction!(normal_closure, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal_normal, m)?)?;
    m.add_function(wrap_pyfunction!(socle_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_imprimitive, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_product_action, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(alternating, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(psl2, m)?)?;
    m.add_function(wrap_pyfunction!(pgl2, m)?)?;
    m.add_function(wrap_pyfunction!(pgaml2, m)?)?;
    m.add_function(wrap_pyfunction!(direct_product, m)?)?;
    m.add_function(wrap_pyfunction!(problem_json, m)?)?;
    Ok(())
}
