//! Python bindings: the `interleave` extension module.

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use interleave_core::counts::{self, SizeMethod};
use interleave_core::cuts::{self, CutMethod, ProfileMethod};
use interleave_core::process::{self, annotate_weights, RunPrefix, SyntaxTree};
use interleave_core::sampling::{self, Rng};
use interleave_core::Error;

create_exception!(interleave, InterleaveError, PyValueError);
create_exception!(interleave, BudgetExceeded, InterleaveError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => InterleaveError::new_err(e.to_string()),
    }
}

fn size_method(name: &str) -> PyResult<SizeMethod> {
    match name {
        "exact_sum" => Ok(SizeMethod::ExactSum),
        "recurrence" => Ok(SizeMethod::Recurrence),
        _ => Err(PyValueError::new_err(format!("unknown method `{}`", name))),
    }
}

/// A plane process tree with nodes numbered 1..n in prefix order.
#[pyclass(module = "interleave", frozen)]
struct Tree {
    inner: SyntaxTree,
}

impl Tree {
    fn prefix(&self, actions: &[String]) -> PyResult<RunPrefix> {
        RunPrefix::from_names(&self.inner, actions).map_err(py_err)
    }
}

#[pymethods]
impl Tree {
    #[new]
    #[pyo3(signature = (term, forest = false))]
    fn new(term: &str, forest: bool) -> PyResult<Self> {
        Ok(Tree { inner: process::parse_process(term, forest).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Tree { inner: SyntaxTree::from_json(text).map_err(py_err)? })
    }

    /// Tree from a degree sequence `u` (`u_1 > 0`, last term the only zero).
    #[staticmethod]
    fn from_degree_sequence(u: Vec<usize>) -> PyResult<Self> {
        let u = process::DegreeSequence::new(u).map_err(py_err)?;
        Ok(Tree { inner: process::tree_from_degree_sequence(&u).map_err(py_err)? })
    }

    /// Uniformly random plane tree of size `n`.
    #[staticmethod]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        Ok(Tree { inner: sampling::uniform_random_tree(n, &mut Rng::seeded(seed)).map_err(py_err)? })
    }

    #[staticmethod]
    fn star(n: usize) -> Self {
        Tree { inner: process::star_tree(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Tree { inner: process::path_tree(n) }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Tree({:?})", self.inner.to_term())
    }

    fn __str__(&self) -> String {
        self.inner.to_term()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn structure(&self) -> String {
        self.inner.structure()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn degree_sequence(&self) -> Vec<usize> {
        process::degree_sequence_of_tree(&self.inner).as_slice().to_vec()
    }

    /// `i`-contraction (1-based).
    fn contract(&self, i: usize) -> PyResult<Tree> {
        Ok(Tree { inner: process::contract(&self.inner, i).map_err(py_err)? })
    }

    /// Number of runs, by the hook-length formula.
    fn run_count(&self) -> BigUint {
        counts::hook_count(&annotate_weights(self.inner.clone()))
    }

    /// Number of runs, as the inverse probability of one run.
    fn run_count_via_probability(&self) -> PyResult<BigUint> {
        sampling::count_runs_via_probability(&annotate_weights(self.inner.clone())).map_err(py_err)
    }

    /// Nodes per level of the semantic tree, root level first.
    #[pyo3(signature = (oracle = false))]
    fn profile(&self, oracle: bool) -> PyResult<Vec<BigUint>> {
        let method = if oracle { ProfileMethod::Oracle } else { ProfileMethod::Fast };
        Ok(cuts::level_profile(&self.inner, method).map_err(py_err)?.counts().to_vec())
    }

    fn semantic_size(&self) -> PyResult<BigUint> {
        cuts::semantic_size(&self.inner).map_err(py_err)
    }

    /// DOT rendering of the semantic tree; raises `BudgetExceeded` above
    /// `budget` nodes.
    #[pyo3(signature = (budget = process::DEFAULT_SEMANTIC_BUDGET))]
    fn semantic_dot(&self, budget: u64) -> PyResult<String> {
        Ok(process::build_semantic_tree(&self.inner, budget).map_err(py_err)?.to_dot())
    }

    fn cut_count(&self) -> BigUint {
        cuts::cut_count(&self.inner)
    }

    /// Probability that a uniform run starts with `actions` (labels or
    /// `label#id`).
    fn prefix_probability(&self, actions: Vec<String>) -> PyResult<BigRational> {
        let prefix = self.prefix(&actions)?;
        sampling::prefix_probability(&annotate_weights(self.inner.clone()), &prefix).map_err(py_err)
    }

    /// Actions enabled after `actions`, in prefix order, as `label#id`.
    fn suspended_view(&self, actions: Vec<String>) -> PyResult<Vec<String>> {
        let prefix = self.prefix(&actions)?;
        let w = annotate_weights(self.inner.clone());
        let view = process::suspended_view(&w, &prefix).map_err(py_err)?;
        Ok(view.frontier.iter().map(|&v| self.inner.action_name(v)).collect())
    }

    /// `count` uniform runs, each a list of `label#id` names.
    fn sample_runs(&self, seed: u64, count: usize) -> Vec<Vec<String>> {
        let w = annotate_weights(self.inner.clone());
        sampling::sample_runs(&w, seed, count)
            .iter()
            .map(|run| run.actions().iter().map(|&v| self.inner.action_name(v)).collect())
            .collect()
    }
}

#[pyfunction]
fn catalan(n: usize) -> PyResult<BigUint> {
    counts::catalan(n).map_err(py_err)
}

#[pyfunction]
fn increasing_count(n: usize) -> PyResult<BigUint> {
    counts::increasing_count(n).map_err(py_err)
}

#[pyfunction]
fn mean_width(n: usize) -> PyResult<BigRational> {
    counts::mean_width(n).map_err(py_err)
}

#[pyfunction]
fn mean_level_width(n: usize, i: usize) -> PyResult<BigRational> {
    counts::mean_level_width(n, i).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, method = "recurrence"))]
fn mean_size(n: usize, method: &str) -> PyResult<BigRational> {
    counts::mean_size(n, size_method(method)?).map_err(py_err)
}

#[pyfunction]
fn r_sequence(n: usize) -> PyResult<Vec<BigRational>> {
    counts::r_sequence(n).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, brute = false))]
fn cut_count_sequence(n: usize, brute: bool) -> PyResult<Vec<BigUint>> {
    let method = if brute { CutMethod::Brute } else { CutMethod::Recurrence };
    cuts::cut_count_sequence(n, method).map_err(py_err)
}

#[pyfunction]
fn nonplane_count(n: usize) -> PyResult<BigUint> {
    counts::nonplane_count(n).map_err(py_err)
}

/// `(value, error)`.
#[pyfunction]
#[pyo3(signature = (n, bits = 53))]
fn geometric_mean_width(n: usize, bits: u32) -> PyResult<(f64, f64)> {
    let g = counts::geometric_mean_width(n, bits).map_err(py_err)?;
    Ok((g.value, g.error))
}

/// `(value, error)`.
#[pyfunction]
fn log_constant_l(target: f64) -> PyResult<(f64, f64)> {
    let l = counts::log_constant_l(target).map_err(py_err)?;
    Ok((l.value, l.error))
}

#[pyfunction]
fn eta_estimate(n: usize) -> PyResult<f64> {
    counts::eta_estimate(n).map_err(py_err)
}

/// `(value, error)`.
#[pyfunction]
fn limit_profile(c: f64, n: usize) -> PyResult<(f64, f64)> {
    let f = cuts::limit_profile(c, n).map_err(py_err)?;
    Ok((f.value, f.error))
}

/// `[(name, passed, detail)]`.
#[pyfunction]
fn selftest() -> Vec<(String, bool, String)> {
    interleave_core::selftest::run_selftest()
        .into_iter()
        .map(|o| (o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn interleave(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ALGORITHM", sampling::ALGORITHM)?;
    m.add("InterleaveError", m.py().get_type::<InterleaveError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_class::<Tree>()?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(increasing_count, m)?)?;
    m.add_function(wrap_pyfunction!(mean_width, m)?)?;
    m.add_function(wrap_pyfunction!(mean_level_width, m)?)?;
    m.add_function(wrap_pyfunction!(mean_size, m)?)?;
    m.add_function(wrap_pyfunction!(r_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(cut_count_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(nonplane_count, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_mean_width, m)?)?;
    m.add_function(wrap_pyfunction!(log_constant_l, m)?)?;
    m.add_function(wrap_pyfunction!(eta_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(limit_profile, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
