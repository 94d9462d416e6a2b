//! Python bindings: diagram monomials, word evaluation in both presentations,
//! counting, normal forms, and structural sweeps.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use brauer::diagram::{evaluate_word, parse_word_a, Monomial as CoreMonomial};
use brauer::structure::{decompose as core_decompose, parabolic_rank as core_parabolic_rank, tl_subalgebra};
use brauer::typec::{
    count_closed, count_recursion, eval_c, normal_form_basis, parse_word_c, phi_word,
    relation_suite_c, WeylGroup,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A diagram with a power of the loop parameter δ.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Monomial {
    inner: CoreMonomial,
}

#[pymethods]
impl Monomial {
    #[getter]
    fn delta_exp(&self) -> i64 {
        self.inner.delta_exp
    }

    #[getter]
    fn n_strands(&self) -> usize {
        self.inner.n_strands()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        self.inner.diagram.pairs()
    }

    fn height(&self) -> usize {
        self.inner.height()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.diagram.is_symmetric()
    }

    fn op(&self) -> Monomial {
        Monomial { inner: self.inner.op() }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __mul__(&self, other: &Monomial) -> PyResult<Monomial> {
        Ok(Monomial { inner: self.inner.multiply(&other.inner).map_err(err)? })
    }

    fn __eq__(&self, other: &Monomial) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Monomial(delta_exp={}, pairs={:?})", self.inner.delta_exp, self.inner.diagram.pairs())
    }
}

/// Evaluate a type A word (tokens like "R2,E1,d") on n strands.
#[pyfunction]
fn eval_type_a(word: &str, n: usize) -> PyResult<Monomial> {
    let w = parse_word_a(word).map_err(err)?;
    Ok(Monomial { inner: evaluate_word(&w, n).map_err(err)? })
}

/// Evaluate a type C word (tokens like "r1,e0,d") as a diagram on 2n strands.
#[pyfunction]
fn eval_type_c(word: &str, n: usize) -> PyResult<Monomial> {
    let w = parse_word_c(word).map_err(err)?;
    Ok(Monomial { inner: eval_c(&w, n).map_err(err)? })
}

/// Image of a type C word under the strand-doubling substitution.
#[pyfunction]
fn phi(word: &str, n: usize) -> PyResult<Vec<String>> {
    let w = parse_word_c(word).map_err(err)?;
    Ok(phi_word(&w, n)
        .map_err(err)?
        .iter()
        .map(|t| t.to_string())
        .collect())
}

/// Rank of the type C algebra at rank n (closed formula).
#[pyfunction]
fn rank_type_c(n: usize) -> u64 {
    count_closed(n)
}

/// k-th value of the rank recursion a_k = a_{k−1} + 2(k−1)a_{k−2}.
#[pyfunction]
fn rank_recursion(k: usize) -> u64 {
    count_recursion(k)
}

/// Run the full relation suite; returns (name, passed) pairs.
#[pyfunction]
fn relation_suite(n: usize) -> PyResult<Vec<(String, bool)>> {
    Ok(relation_suite_c(n)
        .map_err(err)?
        .into_iter()
        .map(|c| (c.name, c.passed))
        .collect())
}

/// Normal-form basis as a list of (form-JSON, monomial) pairs.
#[pyfunction]
fn normal_forms(n: usize) -> PyResult<Vec<(String, Monomial)>> {
    let w = WeylGroup::build(n).map_err(err)?;
    let basis = normal_form_basis(&w).map_err(err)?;
    basis
        .entries()
        .iter()
        .map(|(nf, m)| {
            Ok((
                serde_json::to_string(nf).map_err(err)?,
                Monomial { inner: m.clone() },
            ))
        })
        .collect()
}

/// Closure size of the parabolic subalgebra on the given nodes.
#[pyfunction]
fn parabolic_rank(n: usize, nodes: Vec<usize>) -> PyResult<u64> {
    core_parabolic_rank(n, &nodes).map_err(err)
}

/// Size of the hook (Temperley–Lieb style) subalgebra closure.
#[pyfunction]
fn hook_subalgebra_size(n: usize) -> PyResult<usize> {
    Ok(tl_subalgebra(n).map_err(err)?.closure_size)
}

/// Factor a monomial through the default height-zero reference set:
/// returns (k, U, V, W) with δ^k·a = U·V·W.
#[pyfunction]
fn decompose(a: &Monomial) -> PyResult<(i64, Monomial, Monomial, Monomial)> {
    let dec = core_decompose(&a.inner, None).map_err(err)?;
    Ok((
        dec.k,
        Monomial { inner: CoreMonomial::from_diagram(dec.u) },
        Monomial { inner: CoreMonomial::from_diagram(dec.v) },
        Monomial { inner: CoreMonomial::from_diagram(dec.w) },
    ))
}

#[pymodule]
fn brauer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Monomial>()?;
    m.add_function(wrap_pyfunction!(eval_type_a, m)?)?;
    m.add_function(wrap_pyfunction!(eval_type_c, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(rank_type_c, m)?)?;
    m.add_function(wrap_pyfunction!(rank_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(relation_suite, m)?)?;
    m.add_function(wrap_pyfunction!(normal_forms, m)?)?;
    m.add_function(wrap_pyfunction!(parabolic_rank, m)?)?;
    m.add_function(wrap_pyfunction!(hook_subalgebra_size, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    Ok(())
}
