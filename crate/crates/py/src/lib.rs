//! Python bindings for `ogp-core`, importable as `ogp_py`.
//!
//! Instances are classes (`Graph`, `Hypergraph`, `SpinTensor`); everything
//! else is a function taking an integer seed. Assignments are plain lists:
//! spins as `±1`, independent sets as sorted member lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ogp_core::algorithms::{
    degree_greedy_is, gnn_independent_set, greedy_is, local_flip_cut, random_priority_is, random_spins, Depth,
    RuleSpec, RULES,
};
use ogp_core::experiments::{self, Algorithm, Ensemble, InstanceSpec, ProbeConfig, Sampler};
use ogp_core::{generators, oracle, problems, Assignment, IndependentSet, SeededRng};

fn err(e: ogp_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spins(values: Vec<i8>) -> PyResult<Assignment> {
    Assignment::spins(values).map_err(err)
}

fn members_of(a: &Assignment) -> Vec<usize> {
    a.values().iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect()
}

#[pyclass(name = "Graph", module = "ogp_py", frozen)]
pub struct PyGraph {
    pub inner: ogp_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: ogp_core::Graph::from_edges(n, edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ogp_core::Graph::from_text(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        if u >= self.inner.n() {
            return Err(PyValueError::new_err(format!("node {u} out of range")));
        }
        Ok(self.inner.neighbors(u).to_vec())
    }

    fn degree(&self, u: usize) -> PyResult<usize> {
        self.neighbors(u).map(|v| v.len())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(name = "Hypergraph", module = "ogp_py", frozen)]
pub struct PyHypergraph {
    pub inner: ogp_core::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            inner: ogp_core::Hypergraph::from_edges(n, k, edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ogp_core::Hypergraph::from_text(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, m={}, k={})", self.inner.n(), self.inner.m(), self.inner.k())
    }
}

#[pyclass(name = "SpinTensor", module = "ogp_py", frozen)]
pub struct PySpinTensor {
    pub inner: ogp_core::SpinTensor,
}

#[pymethods]
impl PySpinTensor {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ogp_core::SpinTensor::from_text(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    /// Stored `(sorted tuple, value)` pairs.
    fn entries(&self) -> Vec<(Vec<usize>, f64)> {
        (0..self.inner.len())
            .map(|e| (self.inner.tuple(e).to_vec(), self.inner.value(e)))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("SpinTensor(n={}, p={})", self.inner.n(), self.inner.p())
    }
}

#[pyfunction]
#[pyo3(signature = (n, d, seed=0))]
pub fn gen_regular(n: usize, d: usize, seed: u64) -> PyResult<PyGraph> {
    let inner = generators::gen_regular(n, d, &mut SeededRng::new(seed)).map_err(err)?;
    Ok(PyGraph { inner })
}

#[pyfunction]
#[pyo3(signature = (n, d, seed=0))]
pub fn gen_er(n: usize, d: f64, seed: u64) -> PyResult<PyGraph> {
    let inner = generators::gen_er(n, d, &mut SeededRng::new(seed)).map_err(err)?;
    Ok(PyGraph { inner })
}

#[pyfunction]
#[pyo3(signature = (n, d, k, seed=0))]
pub fn gen_hypergraph(n: usize, d: f64, k: usize, seed: u64) -> PyResult<PyHypergraph> {
    let inner = generators::gen_hypergraph(n, d, k, &mut SeededRng::new(seed)).map_err(err)?;
    Ok(PyHypergraph { inner })
}

#[pyfunction]
#[pyo3(signature = (n, p, seed=0))]
pub fn gen_pspin(n: usize, p: usize, seed: u64) -> PyResult<PySpinTensor> {
    let inner = generators::gen_pspin(n, p, &mut SeededRng::new(seed)).map_err(err)?;
    Ok(PySpinTensor { inner })
}

/// Size of the set with indicator `x`; raises if `x` is not independent.
#[pyfunction]
pub fn is_cost(g: &PyGraph, x: Vec<u8>) -> PyResult<usize> {
    let a = Assignment::indicator(x).map_err(err)?;
    problems::is_cost(&g.inner, &a).map_err(err)
}

#[pyfunction]
pub fn is_feasible(g: &PyGraph, x: Vec<u8>) -> PyResult<bool> {
    let a = Assignment::indicator(x).map_err(err)?;
    problems::is_feasible(&g.inner, &a).map_err(err)
}

#[pyfunction]
pub fn maxcut_cost(g: &PyGraph, sigma: Vec<i8>) -> PyResult<usize> {
    problems::maxcut_cost(&g.inner, &spins(sigma)?).map_err(err)
}

#[pyfunction]
pub fn hyper_maxcut_cost(h: &PyHypergraph, sigma: Vec<i8>) -> PyResult<usize> {
    problems::hyper_maxcut_cost(&h.inner, &spins(sigma)?).map_err(err)
}

#[pyfunction]
pub fn pspin_energy(j: &PySpinTensor, sigma: Vec<i8>) -> PyResult<f64> {
    problems::pspin_energy(&j.inner, &spins(sigma)?).map_err(err)
}

fn parse_algorithm(name: &str, rule: Option<&str>, coeffs: Vec<f64>, depth: usize) -> PyResult<Algorithm> {
    match (name, rule) {
        ("rule", Some(id)) => Ok(Algorithm::Rule(
            RuleSpec {
                id: id.to_string(),
                coeffs,
            },
            Depth(depth),
        )),
        ("rule", None) => Err(PyValueError::new_err("algorithm='rule' needs rule=<id>")),
        (other, _) => Algorithm::parse(other).map_err(err),
    }
}

/// Run an independent-set algorithm and return the sorted members.
///
/// `algorithm` is `greedy`, `degree-greedy`, `random-priority` or `rule`;
/// the last takes a shipped rule id, its coefficients and a depth.
#[pyfunction]
#[pyo3(signature = (g, algorithm="greedy", seed=0, rule=None, coeffs=vec![], depth=1))]
pub fn independent_set(
    g: &PyGraph,
    algorithm: &str,
    seed: u64,
    rule: Option<&str>,
    coeffs: Vec<f64>,
    depth: usize,
) -> PyResult<Vec<usize>> {
    let mut rng = SeededRng::new(seed);
    let set = match parse_algorithm(algorithm, rule, coeffs, depth)? {
        Algorithm::Greedy => greedy_is(&g.inner, &mut rng),
        Algorithm::DegreeGreedy => degree_greedy_is(&g.inner, &mut rng),
        Algorithm::RandomPriority => random_priority_is(&g.inner, &mut rng),
        Algorithm::Rule(spec, depth) => {
            let built = spec.build().map_err(err)?;
            gnn_independent_set(&g.inner, built.as_ref(), depth, &mut rng)
        }
    };
    Ok(set.members().to_vec())
}

/// Local spin-flip search from a uniform random start: `(cut, spins)`.
#[pyfunction]
#[pyo3(signature = (h, seed=0, max_rounds=1000))]
pub fn local_flip(h: &PyHypergraph, seed: u64, max_rounds: usize) -> PyResult<(usize, Vec<i8>)> {
    let mut rng = SeededRng::new(seed);
    let start = random_spins(h.inner.n(), &mut rng);
    let out = local_flip_cut(&h.inner, &start, max_rounds, &mut rng).map_err(err)?;
    Ok((out.cut, out.assignment.values().to_vec()))
}

/// Exact maximum independent set: `(size, members of one maximizer)`.
#[pyfunction]
pub fn exact_max_is(g: &PyGraph) -> PyResult<(usize, Vec<usize>)> {
    let r = oracle::exact_max_is(&g.inner).map_err(err)?;
    Ok((r.optimum, r.witnesses.first().map(members_of).unwrap_or_default()))
}

/// Exact maximum cut of a graph: `(cut, spins of one maximizer)`.
#[pyfunction]
pub fn exact_max_cut(g: &PyGraph) -> PyResult<(usize, Vec<i8>)> {
    let r = oracle::exact_max_cut(&g.inner, oracle::Witnesses::One).map_err(err)?;
    Ok((r.optimum, r.witnesses.first().map(|a| a.values().to_vec()).unwrap_or_default()))
}

#[pyfunction]
pub fn exact_ground_state(j: &PySpinTensor) -> PyResult<(f64, Vec<i8>)> {
    let r = oracle::exact_ground_state(&j.inner, oracle::Witnesses::One).map_err(err)?;
    Ok((r.optimum, r.witnesses.first().map(|a| a.values().to_vec()).unwrap_or_default()))
}

/// Every θ-optimal independent set, as member lists.
#[pyfunction]
pub fn theta_optimal_sets(g: &PyGraph, theta: f64) -> PyResult<Vec<Vec<usize>>> {
    let sets = oracle::enumerate_theta_optimal_is(&g.inner, theta).map_err(err)?;
    Ok(sets.iter().map(|s| s.members().to_vec()).collect())
}

/// Exact overlap spectrum: `{intersection size: pair count}`.
#[pyfunction]
#[pyo3(signature = (g, theta, include_diagonal=false))]
pub fn overlap_spectrum(
    g: &PyGraph,
    theta: f64,
    include_diagonal: bool,
) -> PyResult<std::collections::BTreeMap<usize, u64>> {
    Ok(oracle::overlap_spectrum_exact(&g.inner, theta, include_diagonal)
        .map_err(err)?
        .counts)
}

/// `|a ∩ b| / n` for two independent sets of `g`.
#[pyfunction]
pub fn pairwise_overlap(g: &PyGraph, a: Vec<usize>, b: Vec<usize>) -> PyResult<f64> {
    let a = IndependentSet::new(&g.inner, a).map_err(err)?;
    let b = IndependentSet::new(&g.inner, b).map_err(err)?;
    experiments::pairwise_overlap(&a, &b).map_err(err)
}

/// Mean density of an algorithm on random d-regular graphs.
#[pyfunction]
#[pyo3(signature = (d, n, trials, seed=0, algorithm="greedy", rule=None, coeffs=vec![], depth=1))]
#[allow(clippy::too_many_arguments)]
pub fn density_experiment<'py>(
    py: Python<'py>,
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
    algorithm: &str,
    rule: Option<&str>,
    coeffs: Vec<f64>,
    depth: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let alg = parse_algorithm(algorithm, rule, coeffs, depth)?;
    let est = py
        .detach(|| experiments::density_experiment(&alg, d, n, trials, seed))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("algorithm", alg.to_string())?;
    out.set_item("d", est.d)?;
    out.set_item("n", est.n)?;
    out.set_item("trials", est.trials)?;
    out.set_item("per_trial", est.per_trial)?;
    out.set_item("mean", est.mean)?;
    out.set_item("stderr", est.stderr)?;
    out.set_item("benchmark", est.benchmark)?;
    out.set_item("ratio", est.ratio)?;
    Ok(out)
}

/// Histogram of pairwise overlaps among near-optimal solutions. Samples a
/// fresh instance from `(ensemble, n, d)` unless `graph` is given.
#[pyfunction]
#[pyo3(signature = (
    n, d, theta, seed=0, ensemble="regular", sampler="exact",
    runs=200, pairs=100_000, include_diagonal=false, bins=experiments::DEFAULT_BINS, graph=None
))]
#[allow(clippy::too_many_arguments)]
pub fn overlap_probe<'py>(
    py: Python<'py>,
    n: usize,
    d: f64,
    theta: f64,
    seed: u64,
    ensemble: &str,
    sampler: &str,
    runs: usize,
    pairs: usize,
    include_diagonal: bool,
    bins: usize,
    graph: Option<PyRef<'py, PyGraph>>,
) -> PyResult<Bound<'py, PyDict>> {
    let ensemble = Ensemble::parse(ensemble).map_err(err)?;
    let sampler = match sampler {
        "exact" => Sampler::Exact,
        other => Sampler::Algorithm(Algorithm::parse(other).map_err(err)?),
    };
    let cfg = ProbeConfig {
        instance: InstanceSpec { ensemble, n, d },
        theta,
        sampler,
        runs,
        pairs,
        include_diagonal,
        bins,
    };
    let h = match &graph {
        Some(g) => {
            let g = &g.inner;
            py.detach(|| experiments::overlap_probe_on(g, &cfg, seed))
        }
        None => py.detach(|| experiments::overlap_probe(&cfg, seed)),
    }
    .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("edges", h.edges.clone())?;
    out.set_item("counts", h.counts.clone())?;
    out.set_item("support", h.support())?;
    out.set_item("samples", h.samples)?;
    out.set_item("gap", h.gap)?;
    out.set_item("insufficient_yield", h.insufficient_yield)?;
    out.set_item("instance", h.provenance.instance.clone())?;
    out.set_item("threshold", h.provenance.threshold)?;
    out.set_item("retained", h.provenance.retained)?;
    out.set_item("census", h.provenance.census)?;
    Ok(out)
}

/// Cut scaling fit `cut/n - d/(2K) = a + γ sqrt(d)` over `degrees`.
#[pyfunction]
#[pyo3(signature = (k, degrees, n, trials, seed=0, algorithm="random", max_rounds=1000))]
#[allow(clippy::too_many_arguments)]
pub fn maxcut_scaling<'py>(
    py: Python<'py>,
    k: usize,
    degrees: Vec<f64>,
    n: usize,
    trials: usize,
    seed: u64,
    algorithm: &str,
    max_rounds: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let alg = match algorithm {
        "random" => experiments::CutAlgorithm::RandomAssignment,
        "local-flip" => experiments::CutAlgorithm::LocalFlip { max_rounds },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown cut algorithm `{other}` (random, local-flip)"
            )))
        }
    };
    let fit = py
        .detach(|| experiments::maxcut_scaling_experiment(k, &degrees, n, trials, alg, seed))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("k", fit.k)?;
    out.set_item("gamma", fit.gamma)?;
    out.set_item("gamma_se", fit.gamma_se)?;
    out.set_item("intercept", fit.intercept)?;
    out.set_item("intercept_se", fit.intercept_se)?;
    out.set_item("residuals", fit.residuals.clone())?;
    let points: Vec<(f64, f64, f64)> = fit.points.iter().map(|p| (p.d, p.mean, p.stderr)).collect();
    out.set_item("points", points)?;
    Ok(out)
}

/// Shipped local rules as `(id, coefficient arity, parameter names)`.
#[pyfunction]
pub fn rules() -> Vec<(String, String, String)> {
    RULES
        .iter()
        .map(|r| (r.id.to_string(), r.arity.to_string(), r.params.to_string()))
        .collect()
}

#[pymodule]
fn ogp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PySpinTensor>()?;
    m.add_function(wrap_pyfunction!(gen_regular, m)?)?;
    m.add_function(wrap_pyfunction!(gen_er, m)?)?;
    m.add_function(wrap_pyfunction!(gen_hypergraph, m)?)?;
    m.add_function(wrap_pyfunction!(gen_pspin, m)?)?;
    m.add_function(wrap_pyfunction!(is_cost, m)?)?;
    m.add_function(wrap_pyfunction!(is_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(maxcut_cost, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_maxcut_cost, m)?)?;
    m.add_function(wrap_pyfunction!(pspin_energy, m)?)?;
    m.add_function(wrap_pyfunction!(independent_set, m)?)?;
    m.add_function(wrap_pyfunction!(local_flip, m)?)?;
    m.add_function(wrap_pyfunction!(exact_max_is, m)?)?;
    m.add_function(wrap_pyfunction!(exact_max_cut, m)?)?;
    m.add_function(wrap_pyfunction!(exact_ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(theta_optimal_sets, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(density_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_probe, m)?)?;
    m.add_function(wrap_pyfunction!(maxcut_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(rules, m)?)?;
    Ok(())
}
