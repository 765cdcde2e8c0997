//! Python bindings: groups, cocycles, twisted characters, Bredon cohomology and K-ranks.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use twistk_core::bredon::{bredon_cochains, coefficient_system_from_cocycle, integral_cohomology, ComplexSpec, GCWComplex};
use twistk_core::cocycle::{self, CocycleTable};
use twistk_core::group::enumerate_subgroups;
use twistk_core::spectral::rational_k_ranks;
use twistk_core::twisted::{self, RAlphaElement};
use twistk_core::{GroupTable, Subgroup};

fn err(e: twistk_core::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

#[pyclass(name = "Group", frozen, skip_from_py_object, module = "twistk")]
#[derive(Clone)]
struct PyGroup {
    inner: Arc<GroupTable>,
}

impl PyGroup {
    fn wrap(g: GroupTable) -> Self {
        PyGroup { inner: Arc::new(g) }
    }

    fn subgroup(&self, elements: Vec<usize>) -> PyResult<Subgroup> {
        Subgroup::new(&self.inner, elements).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn from_table(table: Vec<Vec<usize>>) -> PyResult<Self> {
        GroupTable::from_table(&table).map(Self::wrap).map_err(err)
    }

    #[staticmethod]
    fn from_permutations(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        GroupTable::from_permutations(degree, &generators).map(Self::wrap).map_err(err)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        Self::wrap(GroupTable::cyclic(n))
    }

    #[staticmethod]
    fn dihedral(n: usize) -> Self {
        Self::wrap(GroupTable::dihedral(n))
    }

    #[staticmethod]
    fn klein_four() -> Self {
        Self::wrap(GroupTable::klein_four())
    }

    #[staticmethod]
    fn symmetric3() -> Self {
        Self::wrap(GroupTable::symmetric3())
    }

    #[staticmethod]
    fn quaternion() -> Self {
        Self::wrap(GroupTable::quaternion())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.inner.inv(a)
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.inner.conjugacy_classes().to_vec()
    }

    fn subgroups(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(enumerate_subgroups(&self.inner).map_err(err)?.iter().map(|s| s.elements().to_vec()).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.inner.order())
    }
}

#[pyclass(name = "Cocycle", frozen, skip_from_py_object, module = "twistk")]
#[derive(Clone)]
struct PyCocycle {
    inner: CocycleTable,
}

#[pymethods]
impl PyCocycle {
    #[new]
    fn new(group: &PyGroup, modulus: u64, entries: Vec<Vec<i64>>) -> PyResult<Self> {
        cocycle::validate_cocycle(&group.inner, modulus, &entries).map(|inner| PyCocycle { inner }).map_err(err)
    }

    #[staticmethod]
    fn trivial(group: &PyGroup) -> Self {
        PyCocycle { inner: CocycleTable::trivial(&group.inner, 1) }
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup { inner: self.inner.group().clone() }
    }

    fn entries(&self) -> Vec<Vec<u64>> {
        self.inner.rows()
    }

    fn class_order(&self) -> u64 {
        cocycle::class_order(&self.inner)
    }

    /// Returns `(normalized cocycle, witness modulus, witness values)`.
    fn normalize(&self) -> PyResult<(PyCocycle, u64, Vec<u64>)> {
        let n = cocycle::normalize_cocycle(&self.inner).map_err(err)?;
        Ok((PyCocycle { inner: n.cocycle }, n.witness.modulus, n.witness.values))
    }

    fn __add__(&self, other: &PyCocycle) -> PyResult<PyCocycle> {
        cocycle::add_cocycles(&self.inner, &other.inner).map(|inner| PyCocycle { inner }).map_err(err)
    }

    fn __eq__(&self, other: &PyCocycle) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Cocycle(order={}, modulus={})", self.inner.group().order(), self.inner.modulus())
    }
}

/// Invariant factors and generating cocycles of `H^2(G, Z/N)`.
#[pyfunction]
fn h2(group: &PyGroup, modulus: u64) -> PyResult<(Vec<u64>, Vec<PyCocycle>)> {
    let h = cocycle::h2_group(&group.inner, modulus).map_err(err)?;
    Ok((h.invariant_factors, h.generators.into_iter().map(|inner| PyCocycle { inner }).collect()))
}

/// Irreducible twisted characters as `(degree, values)` with values in `c:N:a/b,...` form.
#[pyfunction]
fn character_basis(alpha: &PyCocycle) -> PyResult<Vec<(i64, Vec<String>)>> {
    let b = twisted::alpha_character_basis(&alpha.inner).map_err(err)?;
    Ok(b.irreducibles().iter().zip(b.degrees()).map(|(c, d)| (d, c.values().iter().map(ToString::to_string).collect())).collect())
}

fn rows(m: twistk_core::intmat::IntMatrix) -> Vec<Vec<i64>> {
    m.row_slices().to_vec()
}

#[pyfunction]
fn restriction_matrix(alpha: &PyCocycle, subgroup: Vec<usize>) -> PyResult<Vec<Vec<i64>>> {
    let h = alpha.group().subgroup(subgroup)?;
    twisted::restriction_matrix(&alpha.inner, &h).map(rows).map_err(err)
}

#[pyfunction]
fn induction_matrix(alpha: &PyCocycle, subgroup: Vec<usize>) -> PyResult<Vec<Vec<i64>>> {
    let h = alpha.group().subgroup(subgroup)?;
    twisted::induction_matrix(&alpha.inner, &h).map(rows).map_err(err)
}

#[pyfunction]
fn conjugation_matrix(alpha: &PyCocycle, subgroup: Vec<usize>, g: usize) -> PyResult<Vec<Vec<i64>>> {
    let h = alpha.group().subgroup(subgroup)?;
    twisted::conjugation_matrix(&alpha.inner, &h, g).map(rows).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, all_ambient = false))]
fn verify_mackey(alpha: &PyCocycle, all_ambient: bool) -> PyResult<bool> {
    Ok(twisted::verify_mackey(&alpha.inner, all_ambient).map_err(err)?.passed())
}

/// Product of two twisted characters given by basis coordinates; returns `(twist, coordinates)`.
#[pyfunction]
fn twisted_product(alpha: &PyCocycle, x: Vec<i64>, beta: &PyCocycle, y: Vec<i64>) -> PyResult<(PyCocycle, Vec<i64>)> {
    let bx = twisted::alpha_character_basis(&alpha.inner).map_err(err)?;
    let by = twisted::alpha_character_basis(&beta.inner).map_err(err)?;
    let ex = RAlphaElement::new(bx, x).map_err(err)?;
    let ey = RAlphaElement::new(by, y).map_err(err)?;
    let p = twisted::twisted_product(&ex, &ey).map_err(err)?;
    Ok((PyCocycle { inner: (**p.value.cocycle()).clone() }, p.value.coords().to_vec()))
}

#[pyclass(name = "Complex", frozen, module = "twistk")]
struct PyComplex {
    inner: GCWComplex,
}

#[pymethods]
impl PyComplex {
    /// Parses the JSON cell description over `group`.
    #[staticmethod]
    fn from_json(group: &PyGroup, text: &str) -> PyResult<Self> {
        let spec: ComplexSpec = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        GCWComplex::new(&group.inner, &spec).map(|inner| PyComplex { inner }).map_err(err)
    }

    #[staticmethod]
    fn orbit(group: &PyGroup, subgroup: Vec<usize>) -> PyResult<Self> {
        let h = group.subgroup(subgroup)?;
        GCWComplex::orbit(&group.inner, &h).map(|inner| PyComplex { inner }).map_err(err)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// `[(free rank, torsion factors)]` per degree, relative to the listed cells when given.
    #[pyo3(signature = (alpha, rel = None))]
    fn bredon(&self, alpha: &PyCocycle, rel: Option<Vec<String>>) -> PyResult<Vec<(usize, Vec<u64>)>> {
        let a = rel.map(|ids| self.inner.resolve_subcomplex(&ids)).transpose().map_err(err)?;
        let sys = coefficient_system_from_cocycle(&alpha.inner, &self.inner.isotropy_family()).map_err(err)?;
        let c = bredon_cochains(&self.inner, &sys, a.as_deref()).map_err(err)?;
        let h = integral_cohomology(&c).map_err(err)?;
        Ok(h.degrees.into_iter().map(|d| (d.free_rank, d.torsion)).collect())
    }

    /// Rational ranks of twisted `K^0` and `K^1`.
    fn k_ranks(&self, alpha: &PyCocycle) -> PyResult<(usize, usize)> {
        let k = rational_k_ranks(&self.inner, &alpha.inner).map_err(err)?;
        Ok((k.k0_rank, k.k1_rank))
    }
}

#[pymodule]
fn twistk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCocycle>()?;
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(h2, m)?)?;
    m.add_function(wrap_pyfunction!(character_basis, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(induction_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(conjugation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mackey, m)?)?;
    m.add_function(wrap_pyfunction!(twisted_product, m)?)?;
    Ok(())
}
