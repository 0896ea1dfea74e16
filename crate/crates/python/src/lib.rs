//! Python bindings: quandle tables, affine meshes, Hom sets and the catalog.

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use quandle::cli::format::{parse_mesh, parse_qnd, write_mesh, write_qnd};
use quandle::hom::{
    count_homs_two_reductive, enumerate_homs, enumerate_homs_two_reductive, enumerate_mesh_homs,
    hom_quandle, triv_homs,
};
use quandle::mesh::decompose_two_reductive;
use quandle::terms::satisfies_identity;
use quandle::{
    check_property, parse_identity, quotient, standard_congruence, verify_quandle, CongruenceKind,
    HomSet, Property, ValidationReport,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn property(name: &str) -> PyResult<Property> {
    name.parse::<Property>().map_err(value_error)
}

fn images(set: &HomSet) -> Vec<Vec<usize>> {
    set.records().iter().map(|r| r.image.clone()).collect()
}

/// A finite quandle given by its table, `q.op(x, y) == rows[x][y]`.
#[pyclass(name = "Quandle", module = "pyquandle", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyQuandle(quandle::Quandle);

#[pymethods]
impl PyQuandle {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        quandle::Quandle::from_rows(&rows).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn trivial(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("order must be positive"));
        }
        Ok(Self(quandle::Quandle::trivial(n)))
    }

    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("order must be positive"));
        }
        Ok(Self(quandle::Quandle::dihedral(n)))
    }

    /// `x ▷ y = t·x + (1 − t)·y` over `Z_n`.
    #[staticmethod]
    fn affine(n: usize, t: usize) -> PyResult<Self> {
        quandle::Quandle::affine_cyclic(n, t).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_qnd(text: &str) -> PyResult<Self> {
        parse_qnd(text).map(Self).map_err(value_error)
    }

    fn to_qnd(&self) -> String {
        write_qnd(&self.0)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn op(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.0.order();
        if x >= n || y >= n {
            return Err(PyIndexError::new_err(format!("element outside 0..{n}")));
        }
        Ok(self.0.op(x, y))
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.0.components().blocks().to_vec()
    }

    /// `(holds, witness)` for one of trivial, medial, two_reductive, latin,
    /// connected, involutory.
    fn check(&self, name: &str) -> PyResult<(bool, Vec<usize>)> {
        let c = check_property(&self.0, property(name)?);
        Ok((c.holds, c.witness))
    }

    fn has(&self, name: &str) -> PyResult<bool> {
        Ok(self.check(name)?.0)
    }

    /// `(holds, witness)`; the witness is one value per variable.
    fn satisfies(&self, identity: &str) -> PyResult<(bool, Option<Vec<usize>>)> {
        let id = parse_identity(identity).map_err(value_error)?;
        let c = satisfies_identity(&self.0, &id);
        Ok((c.holds, c.witness))
    }

    /// Quotient by `medial`, `two_reductive`, `components`, or an identity
    /// such as `"x*(x*y) = y"`. Returns the quotient and the projection.
    fn quotient(&self, by: &str) -> PyResult<(PyQuandle, Vec<usize>)> {
        let kind = match by {
            "medial" => CongruenceKind::Medial,
            "two_reductive" => CongruenceKind::TwoReductive,
            "components" => CongruenceKind::Components,
            src => CongruenceKind::Identities(vec![parse_identity(src).map_err(value_error)?]),
        };
        let alpha = standard_congruence(&self.0, &kind);
        let (q, proj) = quotient(&self.0, &alpha).map_err(value_error)?;
        Ok((Self(q), proj))
    }

    fn is_isomorphic(&self, other: &PyQuandle) -> Option<Vec<usize>> {
        quandle::is_isomorphic(&self.0, &other.0)
    }

    fn canonical(&self) -> PyQuandle {
        Self(quandle::canonical_form(&self.0))
    }

    fn is_homomorphism(&self, target: &PyQuandle, image: Vec<usize>) -> bool {
        image.len() == self.0.order()
            && image.iter().all(|&x| x < target.0.order())
            && self.0.is_homomorphism(&target.0, &image)
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("Quandle({:?})", self.0.rows())
    }
}

/// An affine mesh of abelian groups.
#[pyclass(name = "Mesh", module = "pyquandle", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMesh(quandle::AffineMesh);

#[pymethods]
impl PyMesh {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_mesh(text).map(Self).map_err(value_error)
    }

    /// Mesh of a 2-reductive quandle, with `labels[x] = (component, element)`.
    #[staticmethod]
    fn decompose(q: &PyQuandle) -> PyResult<(PyMesh, Vec<(usize, usize)>)> {
        let d = decompose_two_reductive(&q.0).map_err(value_error)?;
        Ok((Self(d.mesh), d.labels))
    }

    fn to_text(&self) -> PyResult<String> {
        write_mesh(&self.0).map_err(value_error)
    }

    fn to_quandle(&self) -> PyResult<PyQuandle> {
        self.0.to_quandle().map(|(q, _)| PyQuandle(q)).map_err(value_error)
    }

    fn groups(&self) -> Vec<Option<String>> {
        self.0.groups().iter().map(|g| g.label()).collect()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("Mesh(groups={:?})", self.groups())
    }
}

/// `None` when the table is a quandle, else `(axiom, witness)`.
#[pyfunction]
fn verify(rows: Vec<Vec<usize>>) -> PyResult<Option<(String, Vec<usize>)>> {
    match verify_quandle(&rows).map_err(value_error)? {
        ValidationReport::Ok => Ok(None),
        ValidationReport::Failed(f) => Ok(Some((f.axiom_name().to_string(), f.witness()))),
    }
}

/// `|Hom(s, t)|`; `method` is `brute`, `mesh` (2-reductive target) or `auto`.
#[pyfunction]
#[pyo3(signature = (s, t, method = "auto"))]
fn hom_count(s: &PyQuandle, t: &PyQuandle, method: &str) -> PyResult<u128> {
    let fast = match method {
        "brute" => false,
        "mesh" | "auto" => t.has("two_reductive")?,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    if fast {
        Ok(count_homs_two_reductive(&s.0, &t.0).map_err(value_error)?.total)
    } else if method == "mesh" {
        Err(PyValueError::new_err("mesh method needs a 2-reductive target"))
    } else {
        Ok(enumerate_homs(&s.0, &t.0).map_err(value_error)?.len() as u128)
    }
}

/// Every homomorphism as its image list, sorted.
#[pyfunction]
#[pyo3(signature = (s, t, method = "auto"))]
fn homs(s: &PyQuandle, t: &PyQuandle, method: &str) -> PyResult<Vec<Vec<usize>>> {
    let set = match method {
        "brute" => enumerate_homs(&s.0, &t.0),
        "mesh" => enumerate_homs_two_reductive(&s.0, &t.0),
        "auto" if t.has("two_reductive")? => enumerate_homs_two_reductive(&s.0, &t.0),
        "auto" => enumerate_homs(&s.0, &t.0),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(value_error)?;
    Ok(images(&set))
}

/// Homomorphisms between the quandles of two meshes.
#[pyfunction]
fn mesh_homs(s: &PyMesh, t: &PyMesh) -> PyResult<Vec<Vec<usize>>> {
    Ok(images(&enumerate_mesh_homs(&s.0, &t.0).map_err(value_error)?))
}

/// The pointwise Hom quandle for a medial target, with its elements.
#[pyfunction]
fn hom_table(s: &PyQuandle, t: &PyQuandle) -> PyResult<(PyQuandle, Vec<Vec<usize>>)> {
    let (q, set) = hom_quandle(&s.0, &t.0).map_err(value_error)?;
    Ok((PyQuandle(q), images(&set)))
}

/// `(enumerated, predicted)` counts of homomorphisms with trivial image.
#[pyfunction]
fn triv_counts(s: &PyQuandle, t: &PyQuandle) -> PyResult<(usize, u128)> {
    let r = triv_homs(&s.0, &t.0).map_err(value_error)?;
    Ok((r.homs.len(), r.predicted))
}

/// All quandles of order `n` (1..=6) up to isomorphism, in catalog order.
#[pyfunction]
fn enumerate(n: usize) -> PyResult<Vec<PyQuandle>> {
    let cat = quandle::enumerate_quandles(n).map_err(value_error)?;
    Ok(cat.quandles().cloned().map(PyQuandle).collect())
}

/// Runs the command-line interface in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = quandle::cli::execute(std::iter::once("quandle".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pyquandle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuandle>()?;
    m.add_class::<PyMesh>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hom_count, m)?)?;
    m.add_function(wrap_pyfunction!(homs, m)?)?;
    m.add_function(wrap_pyfunction!(mesh_homs, m)?)?;
    m.add_function(wrap_pyfunction!(hom_table, m)?)?;
    m.add_function(wrap_pyfunction!(triv_counts, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
