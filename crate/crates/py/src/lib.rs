//! Python bindings: the main lattice types and operations, plus the runnable
//! verification reports as JSON strings. Rationals cross the boundary as
//! "p/q" strings; integers as arbitrary-precision Python ints.

use num_traits::Zero;
use pyo3::exceptions::{PyValueError, PyRuntimeError};
use pyo3::prelude::*;

use k3twist::constructions;
use k3twist::exactlin::{Int, IntMatrix, Rat};
use k3twist::hodge::{self, BField, SurfaceDatum};
use k3twist::lattice::{self, IntLattice, Represents};
use k3twist::mukai::{self, MukaiVector, LAMBDA_RANK, MUKAI_RANK};

fn to_py_err(e: k3twist::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_from_rows(rows: Vec<Vec<Int>>) -> PyResult<IntMatrix> {
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(IntMatrix::from_row_vectors(rows))
}

fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row_vec(i)).collect()
}

fn parse_rat(s: &str) -> PyResult<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<Int>()
            .map_err(|_| PyValueError::new_err(format!("not an integer: {t}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(PyValueError::new_err("zero denominator"));
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_rat_vec(v: Vec<String>, want: usize) -> PyResult<Vec<Rat>> {
    if v.len() > want {
        return Err(PyValueError::new_err(format!(
            "vector has {} coordinates, at most {want} allowed",
            v.len()
        )));
    }
    let mut out: Vec<Rat> = v.iter().map(|s| parse_rat(s)).collect::<PyResult<_>>()?;
    out.resize(want, Rat::zero());
    Ok(out)
}

fn mukai_vector_from(v: Vec<String>) -> PyResult<MukaiVector> {
    let coords = parse_rat_vec(v, MUKAI_RANK)?;
    Ok(MukaiVector::from_coords(&coords))
}

fn surface_from_opt_basis(t_basis: Option<Vec<Vec<Int>>>) -> PyResult<SurfaceDatum> {
    match t_basis {
        Some(rows) => {
            hodge::surface_from_transcendental(matrix_from_rows(rows)?).map_err(to_py_err)
        }
        None => Ok(SurfaceDatum::maximal()),
    }
}

/// An integral lattice given by its Gram matrix.
#[pyclass(name = "Lattice")]
struct PyLattice {
    inner: IntLattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(gram: Vec<Vec<Int>>) -> PyResult<Self> {
        let m = matrix_from_rows(gram)?;
        if m.rows() != m.cols() {
            return Err(PyValueError::new_err("gram matrix must be square"));
        }
        Ok(PyLattice {
            inner: IntLattice::new(m).map_err(to_py_err)?,
        })
    }

    /// The hyperbolic plane U.
    #[staticmethod]
    fn u() -> Self {
        PyLattice {
            inner: lattice::hyperbolic_plane(),
        }
    }

    /// The K3 lattice U³ ⊕ (−E8)².
    #[staticmethod]
    fn k3() -> Self {
        PyLattice {
            inner: mukai::lambda_lattice(),
        }
    }

    /// The full cohomology lattice with the Mukai pairing.
    #[staticmethod]
    fn mukai() -> Self {
        PyLattice {
            inner: mukai::mukai_lattice(),
        }
    }

    #[staticmethod]
    fn minus_e8() -> Self {
        PyLattice {
            inner: mukai::minus_e8_lattice(),
        }
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn gram(&self) -> Vec<Vec<Int>> {
        matrix_to_rows(&self.inner.gram)
    }

    /// dict with rank, signature, det, parity, invariant factors, ell, |disc|
    fn invariants(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let inv = self.inner.invariants();
        let d = pyo3::types::PyDict::new(py);
        d.set_item("rank", inv.rank)?;
        d.set_item("signature", inv.signature)?;
        d.set_item("det", inv.det)?;
        d.set_item("even", inv.even)?;
        d.set_item("invariant_factors", inv.invariant_factors)?;
        d.set_item("ell", inv.ell)?;
        d.set_item("abs_disc", inv.abs_disc)?;
        Ok(d.into_any().unbind())
    }

    fn direct_sum(&self, other: &PyLattice) -> Self {
        PyLattice {
            inner: self.inner.direct_sum(&other.inner),
        }
    }

    fn rescale(&self, n: i64) -> Self {
        PyLattice {
            inner: self.inner.rescale(n),
        }
    }

    fn __repr__(&self) -> String {
        format!("Lattice(rank={})", self.inner.rank())
    }
}

/// Row Hermite normal form: returns (h, u) with u unimodular and u·m = h.
#[pyfunction]
fn hnf(m: Vec<Vec<Int>>) -> PyResult<(Vec<Vec<Int>>, Vec<Vec<Int>>)> {
    let m = matrix_from_rows(m)?;
    let (h, u) = m.hnf();
    Ok((matrix_to_rows(&h), matrix_to_rows(&u)))
}

/// Smith normal form: returns (factors, u, v) with u·m·v diagonal.
#[pyfunction]
fn snf(m: Vec<Vec<Int>>) -> PyResult<(Vec<Int>, Vec<Vec<Int>>, Vec<Vec<Int>>)> {
    let m = matrix_from_rows(m)?;
    let s = m.snf();
    Ok((s.factors, matrix_to_rows(&s.u), matrix_to_rows(&s.v)))
}

/// Basis rows of the saturated integer kernel {x : m·x = 0}.
#[pyfunction]
fn integer_kernel(m: Vec<Vec<Int>>) -> PyResult<Vec<Vec<Int>>> {
    let m = matrix_from_rows(m)?;
    Ok(matrix_to_rows(&m.integer_kernel()))
}

/// Some integral solution of m·x = b, or None.
#[pyfunction]
fn solve_integer(m: Vec<Vec<Int>>, b: Vec<Int>) -> PyResult<Option<Vec<Int>>> {
    let m = matrix_from_rows(m)?;
    if b.len() != m.rows() {
        return Err(PyValueError::new_err("rhs length mismatch"));
    }
    Ok(m.solve_integer(&b))
}

/// Sylvester signature (pos, neg, zero) of a symmetric integer matrix.
#[pyfunction]
fn signature(gram: Vec<Vec<Int>>) -> PyResult<(usize, usize, usize)> {
    let m = matrix_from_rows(gram)?;
    m.signature_of_symmetric().map_err(to_py_err)
}

/// Base change P with P·g2·Pᵀ = g1 within the coefficient box, or None.
#[pyfunction]
#[pyo3(signature = (g1, g2, bound = 10))]
fn isometry_search(
    g1: Vec<Vec<Int>>,
    g2: Vec<Vec<Int>>,
    bound: u32,
) -> PyResult<Option<Vec<Vec<Int>>>> {
    let l1 = IntLattice::new(matrix_from_rows(g1)?).map_err(to_py_err)?;
    let l2 = IntLattice::new(matrix_from_rows(g2)?).map_err(to_py_err)?;
    Ok(lattice::isometry_search(&l1, &l2, bound)
        .map_err(to_py_err)?
        .map(|m| matrix_to_rows(&m)))
}

/// First vector v with vᵀ·gram·v = n inside the box, or None.
#[pyfunction]
#[pyo3(signature = (gram, n, bound = 25))]
fn represents_bounded(gram: Vec<Vec<Int>>, n: Int, bound: u32) -> PyResult<Option<Vec<Int>>> {
    let l = IntLattice::new(matrix_from_rows(gram)?).map_err(to_py_err)?;
    Ok(lattice::represents_bounded(&l, &n, bound))
}

/// Exact decision of n = Q(a,b) for Gram [[0,−m],[−m,2c]]; None is a proof
/// of absence, not a bounded miss.
#[pyfunction]
fn represents_binary_exact(m: u64, c: Int, n: Int) -> PyResult<Option<(Int, Int)>> {
    match lattice::represents_zero_diag_binary_exact(m, &c, &n).map_err(to_py_err)? {
        Represents::Witness(w) => Ok(Some((w[0].clone(), w[1].clone()))),
        Represents::ProvenAbsent => Ok(None),
    }
}

/// Mukai pairing of two 24-coordinate vectors ("p/q" strings or ints).
#[pyfunction]
fn mukai_pairing(v: Vec<String>, w: Vec<String>) -> PyResult<String> {
    let v = mukai_vector_from(v)?;
    let w = mukai_vector_from(w)?;
    Ok(rat_string(&mukai::pairing(&v, &w)))
}

/// Euler pairing χ(v, w).
#[pyfunction]
fn euler_pairing(v: Vec<String>, w: Vec<String>) -> PyResult<String> {
    let v = mukai_vector_from(v)?;
    let w = mukai_vector_from(w)?;
    Ok(rat_string(&mukai::euler_pairing(&v, &w)))
}

/// Multiplication of a 24-coordinate vector by exp(B), B a 22-coordinate
/// rational degree-2 class.
#[pyfunction]
fn exp_b(b: Vec<String>, v: Vec<String>) -> PyResult<Vec<String>> {
    let b = parse_rat_vec(b, LAMBDA_RANK)?;
    let v = mukai_vector_from(v)?;
    Ok(mukai::exp_b(&b, &v)
        .to_coords()
        .iter()
        .map(rat_string)
        .collect())
}

/// Gram matrix of the twisted Picard lattice of (T, B).
#[pyfunction]
#[pyo3(signature = (b, t_basis = None))]
fn twisted_picard_gram(b: Vec<String>, t_basis: Option<Vec<Vec<Int>>>) -> PyResult<Vec<Vec<Int>>> {
    let surface = surface_from_opt_basis(t_basis)?;
    let b = BField::new(parse_rat_vec(b, LAMBDA_RANK)?);
    let pic = hodge::twisted_picard(&surface, &b);
    Ok(matrix_to_rows(&pic.gram().gram))
}

/// Order of the Brauer class induced by B on T (default: the full lattice).
#[pyfunction]
#[pyo3(signature = (b, t_basis = None))]
fn brauer_order(b: Vec<String>, t_basis: Option<Vec<Vec<Int>>>) -> PyResult<Int> {
    let surface = surface_from_opt_basis(t_basis)?;
    let b = BField::new(parse_rat_vec(b, LAMBDA_RANK)?);
    Ok(hodge::brauer_class(&surface, &b).order)
}

/// 24×24 matrix of a deterministic word in the standard isometry generators.
#[pyfunction]
fn random_word_matrix(seed: u64, length: usize) -> Vec<Vec<Int>> {
    matrix_to_rows(mukai::random_word(seed, length).matrix())
}

/// Match a random generator word to a twisted period; returns a dict with
/// the periods, the B-field and the certificate flag.
#[pyfunction]
fn match_twist_random(py: Python<'_>, seed: u64, length: usize) -> PyResult<Py<PyAny>> {
    let g = mukai::random_word(seed, length);
    let r = constructions::match_twist(&g).map_err(to_py_err)?;
    let d = pyo3::types::PyDict::new(py);
    let strings = |v: &[Rat]| v.iter().map(rat_string).collect::<Vec<_>>();
    d.set_item("x1", strings(&r.x.x1))?;
    d.set_item("x2", strings(&r.x.x2))?;
    d.set_item("y1", strings(&r.y.x1))?;
    d.set_item("y2", strings(&r.y.x2))?;
    d.set_item("b", strings(&r.b))?;
    d.set_item("b_integral", r.b_integral)?;
    d.set_item("certificate_holds", r.certificate_holds)?;
    Ok(d.into_any().unbind())
}

/// Full counterexample pipeline; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (z_max = 1000))]
fn verify_counterexample(z_max: u64) -> PyResult<String> {
    let rep = constructions::example_counter_report(z_max);
    serde_json::to_string(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Partner family over the first n primes; returns the report as JSON.
#[pyfunction]
fn fm_partner_family(n: usize) -> PyResult<String> {
    let rep = constructions::fm_partner_family(n).map_err(to_py_err)?;
    serde_json::to_string(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn k3twist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(hnf, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(integer_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(solve_integer, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(isometry_search, m)?)?;
    m.add_function(wrap_pyfunction!(represents_bounded, m)?)?;
    m.add_function(wrap_pyfunction!(represents_binary_exact, m)?)?;
    m.add_function(wrap_pyfunction!(mukai_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(euler_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(exp_b, m)?)?;
    m.add_function(wrap_pyfunction!(twisted_picard_gram, m)?)?;
    m.add_function(wrap_pyfunction!(brauer_order, m)?)?;
    m.add_function(wrap_pyfunction!(random_word_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(match_twist_random, m)?)?;
    m.add_function(wrap_pyfunction!(verify_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(fm_partner_family, m)?)?;
    Ok(())
}
