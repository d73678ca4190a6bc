//! Python bindings. Items and ranks are one-based on the Python side too;
//! a ballot is a list of per-item ranks with `None` for unranked items.

use std::path::PathBuf;

use gossip_rank::consensus::{
    borda_consensus_with, copeland_consensus, footrule_consensus, kemeny_bruteforce, ConsensusResult, Rule,
};
use gossip_rank::data::{mallows_sample, uniform_permutation, MallowsModel, PreferenceProfile};
use gossip_rank::experiment::metrics::kendall_error_of;
use gossip_rank::experiment::robustness::robustness_study;
use gossip_rank::experiment::{run_experiment, write_outputs, ExperimentConfig, OutputFormat};
use gossip_rank::gossip::{effective_completion, GossipMethod, NodeStates};
use gossip_rank::graph::{edge_distribution, spectral_info, GraphSpec, Topology};
use gossip_rank::ranking::{kendall_tau_fast, PartialRanking, Permutation, Ranking};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn py_err(e: gossip_rank::Error) -> PyErr {
    if e.is_io() {
        PyIOError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gossip_rank::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn parse<T: std::str::FromStr<Err = gossip_rank::Error>>(s: &str) -> PyResult<T> {
    s.parse().py()
}

fn ballot(ranks: Vec<Option<usize>>) -> PyResult<Ranking> {
    if ranks.iter().all(Option::is_some) {
        Ok(Ranking::Complete(
            Permutation::new(ranks.into_iter().flatten().collect()).py()?,
        ))
    } else {
        Ok(Ranking::Partial(PartialRanking::new(ranks).py()?))
    }
}

fn ballot_ranks(r: &Ranking) -> Vec<Option<usize>> {
    match r {
        Ranking::Complete(p) => p.ranks().iter().map(|&x| Some(x)).collect(),
        Ranking::Partial(p) => p.ranks().to_vec(),
    }
}

/// The ballots of `n` voters over `m` items.
#[pyclass(name = "Profile", module = "gossip_rank", frozen)]
struct PyProfile {
    inner: PreferenceProfile,
}

#[pymethods]
impl PyProfile {
    #[new]
    fn new(voters: Vec<Vec<Option<usize>>>) -> PyResult<Self> {
        let voters = voters.into_iter().map(ballot).collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: PreferenceProfile::new(voters).py()?,
        })
    }

    /// Reads a `.soc`, `.soi` or `.csv` profile.
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Self {
            inner: PreferenceProfile::load(&path).py()?,
        })
    }

    /// `n` Mallows draws around `center` (uniformly random when omitted).
    #[staticmethod]
    #[pyo3(signature = (n, m, phi, seed=0, center=None))]
    fn mallows(n: usize, m: usize, phi: f64, seed: u64, center: Option<Vec<usize>>) -> PyResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let center = match center {
            Some(c) => Permutation::new(c).py()?,
            None => uniform_permutation(m, &mut rng),
        };
        let model = MallowsModel::new(center, phi).py()?;
        Ok(Self {
            inner: mallows_sample(&model, n, &mut rng).py()?,
        })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).py()
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
    fn has_partial(&self) -> bool {
        self.inner.has_partial()
    }

    #[getter]
    fn voters(&self) -> Vec<Vec<Option<usize>>> {
        self.inner.voters().iter().map(ballot_ranks).collect()
    }

    /// `p[i][j]`: fraction of voters preferring item `i + 1` to item `j + 1`.
    fn pairwise(&self) -> PyResult<Vec<Vec<f64>>> {
        let p = self.inner.pairwise().py()?;
        Ok(p.as_slice().chunks(p.m()).map(<[f64]>::to_vec).collect())
    }

    /// Centralized consensus under `rule` (borda, copeland, footrule, kemeny).
    fn consensus<'py>(&self, py: Python<'py>, rule: &str) -> PyResult<Bound<'py, PyDict>> {
        let res = consensus(&self.inner, parse(rule)?)?;
        let d = PyDict::new(py);
        d.set_item("rule", res.rule.name())?;
        d.set_item("ranking", res.ranking.ranks().to_vec())?;
        d.set_item("ordering", res.ranking.to_ordering().items().to_vec())?;
        d.set_item("scores", res.scores.map(|s| s.into_vec()))?;
        d.set_item("objective", res.objective)?;
        Ok(d)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile(n={}, m={}, partial={})",
            self.inner.n(),
            self.inner.m(),
            self.inner.has_partial()
        )
    }
}

fn consensus(profile: &PreferenceProfile, rule: Rule) -> PyResult<ConsensusResult> {
    let p = profile.pairwise().py()?;
    match rule {
        Rule::Borda => borda_consensus_with(profile.voters(), effective_completion(profile.voters(), None)),
        Rule::Copeland => copeland_consensus(&p),
        Rule::Footrule => match profile.complete() {
            Some(perms) => footrule_consensus(&perms),
            None => return Err(PyValueError::new_err("footrule needs complete rankings")),
        },
        Rule::Kemeny => kemeny_bruteforce(&p, profile.n()),
    }
    .py()
}

/// Communication graph between voters; nodes are numbered from zero.
#[pyclass(name = "Graph", module = "gossip_rank", frozen)]
struct PyGraph {
    inner: Topology,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: Topology::from_edges(n, edges).py()?,
        })
    }

    /// Builds a `complete`, `watts-strogatz`, `geometric` or `grid` graph;
    /// unset parameters take their defaults.
    #[staticmethod]
    #[pyo3(signature = (kind, n, seed=0, k=None, beta=None, radius=None, rows=None, cols=None))]
    #[allow(clippy::too_many_arguments)]
    fn generate(
        kind: &str,
        n: usize,
        seed: u64,
        k: Option<usize>,
        beta: Option<f64>,
        radius: Option<f64>,
        rows: Option<usize>,
        cols: Option<usize>,
    ) -> PyResult<Self> {
        let spec = match GraphSpec::from_name(kind).py()? {
            GraphSpec::WattsStrogatz { beta: b, .. } => GraphSpec::WattsStrogatz {
                k,
                beta: beta.unwrap_or(b),
            },
            GraphSpec::Geometric { .. } => GraphSpec::Geometric { radius },
            GraphSpec::Grid { .. } => GraphSpec::Grid { rows, cols },
            other => other,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self {
            inner: spec.generate(n, &mut rng).py()?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees().to_vec()
    }

    #[getter]
    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    /// Activation probability of each edge, in `edges` order.
    fn edge_probabilities(&self) -> Vec<f64> {
        edge_distribution(&self.inner).probs().to_vec()
    }

    /// Second-smallest eigenvalue `c` of the activation-weighted Laplacian.
    fn spectral_gap(&self) -> PyResult<f64> {
        Ok(spectral_info(&self.inner, &edge_distribution(&self.inner)).py()?.c)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edges().len())
    }
}

/// Pairwise gossip of one method's state over a graph.
#[pyclass(name = "Simulation", module = "gossip_rank")]
struct PySimulation {
    inner: gossip_rank::gossip::Simulation,
}

#[pymethods]
impl PySimulation {
    /// `method` is one of borda, copeland, footrule, lk-borda, lk-copeland,
    /// lk-footrule.
    #[new]
    #[pyo3(signature = (method, profile, graph, seed=0))]
    fn new(method: &str, profile: &PyProfile, graph: &PyGraph, seed: u64) -> PyResult<Self> {
        let method: GossipMethod = parse(method)?;
        Ok(Self {
            inner: gossip_rank::gossip::Simulation::init(method, profile.inner.voters(), &graph.inner, seed).py()?,
        })
    }

    #[getter]
    fn t(&self) -> u64 {
        self.inner.t()
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method().name()
    }

    /// Activates one edge; returns its index in `Graph.edges`.
    fn step(&mut self) -> usize {
        self.inner.step()
    }

    /// Advances `steps` iterations (releases the GIL while running).
    fn run(&mut self, py: Python<'_>, steps: u64) {
        let sim = &mut self.inner;
        py.detach(|| {
            for _ in 0..steps {
                sim.step();
            }
        });
    }

    /// Node states as rows of length `dim`.
    fn states(&self) -> Vec<Vec<f64>> {
        self.inner
            .states()
            .chunks(self.inner.dim())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Each node's current ranking, as per-item ranks.
    fn rankings(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .extract_all()
            .py()?
            .into_iter()
            .map(|e| e.ranking.into_ranks())
            .collect())
    }

    /// Mean Kendall distance of the node rankings to `truth`.
    fn kendall_error(&self, truth: Vec<usize>) -> PyResult<f64> {
        kendall_error_of(&self.inner, &Permutation::new(truth).py()?).py()
    }
}

/// Kendall distance between two rank vectors.
#[pyfunction]
fn kendall_tau(a: Vec<usize>, b: Vec<usize>) -> PyResult<u64> {
    kendall_tau_fast(&Permutation::new(a).py()?, &Permutation::new(b).py()?).py()
}

/// Spectral gap of the gossip process on `graph`.
#[pyfunction]
fn spectral_gap(graph: &PyGraph) -> PyResult<f64> {
    graph.spectral_gap()
}

fn load_config(config: &str) -> PyResult<ExperimentConfig> {
    let path = std::path::Path::new(config);
    if path.extension().is_some_and(|e| e == "toml") {
        ExperimentConfig::load(path).py()
    } else {
        ExperimentConfig::from_toml(config).py()
    }
}

/// Runs an experiment from a TOML path or TOML text. Returns the summary
/// rows as dicts; writes CSV outputs when `out` is given.
#[pyfunction]
#[pyo3(signature = (config, out=None))]
fn run<'py>(py: Python<'py>, config: &str, out: Option<PathBuf>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = load_config(config)?;
    let res = py.detach(|| run_experiment(&cfg)).py()?;
    if let Some(dir) = out {
        write_outputs(&res, &dir, OutputFormat::Csv).py()?;
    }
    res.summary
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("t", r.t)?;
            d.set_item("graph", r.graph)?;
            d.set_item("method", r.method)?;
            d.set_item("metric", r.metric)?;
            d.set_item("mean", r.mean)?;
            d.set_item("std", r.std)?;
            Ok(d)
        })
        .collect()
}

/// Centralized robustness study; one dict per rule with mean and standard
/// deviation of `d_tau`, `delta_loss` and `delta_loss_lk`.
#[pyfunction]
fn robustness<'py>(py: Python<'py>, config: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = load_config(config)?;
    let res = py.detach(|| robustness_study(&cfg)).py()?;
    res.table
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("rule", r.rule.name())?;
            for (key, s) in [
                ("d_tau", r.d_tau),
                ("delta_loss", r.delta_loss),
                ("delta_loss_lk", r.delta_loss_lk),
            ] {
                d.set_item(key, (s.mean, s.std))?;
            }
            Ok(d)
        })
        .collect()
}

/// Module initializer; public so embedding tests can register it.
#[pymodule(name = "gossip_rank")]
pub fn gossip_rank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProfile>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PySimulation>()?;
    m.add_function(wrap_pyfunction!(kendall_tau, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(robustness, m)?)?;
    Ok(())
}
