//! Asynchronous randomized gossip: one edge fires per step and both endpoints
//! replace their state by the pairwise mean.
//!
//! Node states are rows of a flat `n x dim` array. The layout of a row depends
//! on the method:
//!
//! | method        | row layout                                      |
//! |---------------|-------------------------------------------------|
//! | Borda         | `m` scores                                      |
//! | Copeland      | `m(m-1)` off-diagonal pairwise entries          |
//! | Footrule      | median-estimator state (`m x m` histogram)      |
//! | LocalKemeny   | base row, then `m(m-1)` pairwise entries        |
//!
//! A Copeland-based LK row is just the Copeland row.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::consensus::local_kemenize_by;
use crate::error::{Error, Result};
use crate::graph::{edge_distribution, Topology};
use crate::ranking::{
    add_pairwise, median_ranks_from_rows, CompletionScheme, Permutation, Ranking, ScoreVector, SortDirection,
};

/// Consensus rule whose decentralized counterpart is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseMethod {
    Borda,
    Copeland,
    Footrule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GossipMethod {
    Borda,
    Copeland,
    Footrule,
    /// Base-method extraction followed by local Kemenization against the
    /// node's gossiped pairwise entries.
    LocalKemeny(BaseMethod),
}

impl GossipMethod {
    pub const ALL: [GossipMethod; 6] = [
        GossipMethod::Borda,
        GossipMethod::Copeland,
        GossipMethod::Footrule,
        GossipMethod::LocalKemeny(BaseMethod::Borda),
        GossipMethod::LocalKemeny(BaseMethod::Copeland),
        GossipMethod::LocalKemeny(BaseMethod::Footrule),
    ];

    pub fn name(self) -> &'static str {
        match self {
            GossipMethod::Borda => "borda",
            GossipMethod::Copeland => "copeland",
            GossipMethod::Footrule => "footrule",
            GossipMethod::LocalKemeny(BaseMethod::Borda) => "lk-borda",
            GossipMethod::LocalKemeny(BaseMethod::Copeland) => "lk-copeland",
            GossipMethod::LocalKemeny(BaseMethod::Footrule) => "lk-footrule",
        }
    }

    fn base(self) -> BaseMethod {
        match self {
            GossipMethod::Borda => BaseMethod::Borda,
            GossipMethod::Copeland => BaseMethod::Copeland,
            GossipMethod::Footrule => BaseMethod::Footrule,
            GossipMethod::LocalKemeny(b) => b,
        }
    }

    fn supports_partial(self) -> bool {
        self.base() != BaseMethod::Footrule
    }
}

impl fmt::Display for GossipMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GossipMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        GossipMethod::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or(Error::Unknown {
                kind: "gossip method",
                name: s.to_string(),
            })
    }
}

/// Decentralized median estimator for the Footrule method.
///
/// The state is mixed by pairwise averaging, so an implementation must encode
/// its ballot in a form whose node average determines the median.
pub trait MedianEstimator: Send + Sync + fmt::Debug {
    fn dim(&self, m: usize) -> usize;
    fn init(&self, ballot: &Permutation, out: &mut [f64]);
    /// Per-item median rank estimate from one node's state.
    fn medians(&self, state: &[f64], m: usize) -> Vec<f64>;
}

/// Default estimator: each node holds a one-hot `m x m` rank histogram
/// (row = item, column = rank); averaging yields the empirical rank
/// distribution, from which the exact median is read.
#[derive(Debug, Clone, Copy, Default)]
pub struct HistogramGossip;

impl MedianEstimator for HistogramGossip {
    fn dim(&self, m: usize) -> usize {
        m * m
    }

    fn init(&self, ballot: &Permutation, out: &mut [f64]) {
        let m = ballot.m();
        out.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..m {
            out[i * m + ballot.rank(i) - 1] = 1.0;
        }
    }

    fn medians(&self, state: &[f64], m: usize) -> Vec<f64> {
        median_ranks_from_rows(state, m)
    }
}

/// Position of the off-diagonal entry `(i, j)` in a pairwise row.
#[inline]
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    debug_assert!(i != j);
    i * (m - 1) + if j < i { j } else { j - 1 }
}

/// One node's consensus estimate. For local Kemenization `scores` are the
/// base-method scores and `ranking` is the refined ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalEstimate {
    pub node: usize,
    pub ranking: Permutation,
    pub scores: ScoreVector,
}

/// Row layout shared by the simulation and its snapshots.
#[derive(Debug, Clone)]
struct Layout {
    method: GossipMethod,
    m: usize,
    base_dim: usize,
    pair_offset: Option<usize>,
    dim: usize,
    estimator: Arc<dyn MedianEstimator>,
}

impl Layout {
    fn new(method: GossipMethod, m: usize, estimator: Arc<dyn MedianEstimator>) -> Self {
        let pairs = m * (m - 1);
        let base_dim = match method.base() {
            BaseMethod::Borda => m,
            BaseMethod::Copeland => pairs,
            BaseMethod::Footrule => estimator.dim(m),
        };
        let (pair_offset, dim) = match method {
            GossipMethod::Copeland | GossipMethod::LocalKemeny(BaseMethod::Copeland) => (Some(0), pairs),
            GossipMethod::LocalKemeny(_) => (Some(base_dim), base_dim + pairs),
            _ => (None, base_dim),
        };
        Self {
            method,
            m,
            base_dim,
            pair_offset,
            dim,
            estimator,
        }
    }

    fn init_row(&self, ballot: &Ranking, scheme: CompletionScheme, row: &mut [f64]) {
        let m = self.m;
        match self.method.base() {
            BaseMethod::Borda => row[..m].copy_from_slice(ballot.completed_scores(scheme).as_slice()),
            BaseMethod::Copeland => {}
            BaseMethod::Footrule => {
                let p = ballot.as_complete().expect("checked by init");
                self.estimator.init(p, &mut row[..self.base_dim]);
            }
        }
        if let Some(off) = self.pair_offset {
            let mut full = vec![0.0; m * m];
            add_pairwise(ballot, &mut full);
            for i in 0..m {
                for j in (0..m).filter(|&j| j != i) {
                    row[off + pair_index(i, j, m)] = full[i * m + j];
                }
            }
        }
    }

    fn copeland_scores(&self, row: &[f64]) -> Vec<f64> {
        let (m, off) = (self.m, self.pair_offset.expect("pairwise layout"));
        (0..m)
            .map(|i| {
                (0..m)
                    .filter(|&j| j != i)
                    .map(|j| {
                        if row[off + pair_index(i, j, m)] > 0.5 {
                            1.0
                        } else {
                            -1.0
                        }
                    })
                    .sum()
            })
            .collect()
    }

    fn extract(&self, node: usize, row: &[f64]) -> Result<LocalEstimate> {
        let m = self.m;
        let (scores, dir) = match self.method.base() {
            BaseMethod::Borda => (row[..m].to_vec(), SortDirection::Ascending),
            BaseMethod::Copeland => (self.copeland_scores(row), SortDirection::Descending),
            BaseMethod::Footrule => (
                self.estimator.medians(&row[..self.base_dim], m),
                SortDirection::Ascending,
            ),
        };
        let mut ranking = Permutation::from_scores(&scores, dir)?;
        if let GossipMethod::LocalKemeny(_) = self.method {
            let off = self.pair_offset.expect("pairwise layout");
            let order = local_kemenize_by(ranking.to_ordering(), |i, j| row[off + pair_index(i, j, m)])?;
            ranking = order.to_permutation();
        }
        Ok(LocalEstimate {
            node,
            ranking,
            scores: ScoreVector::new(scores)?,
        })
    }
}

/// Read access to all node states, shared by live simulations and snapshots.
pub trait NodeStates {
    fn n(&self) -> usize;
    fn m(&self) -> usize;
    fn method(&self) -> GossipMethod;
    fn state(&self, node: usize) -> &[f64];
    fn extract(&self, node: usize) -> Result<LocalEstimate>;

    /// Borda score part of a row, for Borda-based methods.
    fn borda_scores(&self, node: usize) -> Option<&[f64]> {
        matches!(
            self.method(),
            GossipMethod::Borda | GossipMethod::LocalKemeny(BaseMethod::Borda)
        )
        .then(|| &self.state(node)[..self.m()])
    }

    /// Off-diagonal pairwise entries in [`pair_index`] order, for
    /// pairwise-carrying methods.
    fn pairwise_entries(&self, node: usize) -> Option<&[f64]> {
        let m = self.m();
        let pairs = m * (m - 1);
        match self.method() {
            GossipMethod::Borda | GossipMethod::Footrule => None,
            _ => {
                let row = self.state(node);
                Some(&row[row.len() - pairs..])
            }
        }
    }

    fn extract_all(&self) -> Result<Vec<LocalEstimate>> {
        (0..self.n()).map(|v| self.extract(v)).collect()
    }
}

/// Options for [`Simulation::init_with`].
#[derive(Debug, Clone)]
pub struct SimulationOptions {
    /// Borda completion of partial ballots. `None` keeps raw ranks for fully
    /// complete profiles and normalizes otherwise.
    pub completion: Option<CompletionScheme>,
    pub estimator: Arc<dyn MedianEstimator>,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            completion: None,
            estimator: Arc::new(HistogramGossip),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Simulation {
    layout: Layout,
    n: usize,
    edges: Vec<(usize, usize)>,
    sampler: WeightedIndex<f64>,
    states: Vec<f64>,
    t: u64,
    rng: ChaCha8Rng,
}

impl Simulation {
    pub fn init(method: GossipMethod, profile: &[Ranking], topology: &Topology, seed: u64) -> Result<Self> {
        Self::init_with(method, profile, topology, seed, SimulationOptions::default())
    }

    pub fn init_with(
        method: GossipMethod,
        profile: &[Ranking],
        topology: &Topology,
        seed: u64,
        options: SimulationOptions,
    ) -> Result<Self> {
        Self::init_with_rng(method, profile, topology, ChaCha8Rng::seed_from_u64(seed), options)
    }

    /// As [`Simulation::init_with`] with an explicit edge-sampling stream.
    pub fn init_with_rng(
        method: GossipMethod,
        profile: &[Ranking],
        topology: &Topology,
        rng: ChaCha8Rng,
        options: SimulationOptions,
    ) -> Result<Self> {
        let n = topology.n();
        if profile.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: profile.len(),
            });
        }
        let m = crate::consensus::uniform_m(profile)?;
        if !method.supports_partial() && profile.iter().any(Ranking::is_partial) {
            return Err(Error::InvalidParameter(format!(
                "method `{method}` requires complete rankings"
            )));
        }
        let completion = effective_completion(profile, options.completion);
        let layout = Layout::new(method, m, options.estimator);
        let mut states = vec![0.0; n * layout.dim];
        for (row, ballot) in states.chunks_mut(layout.dim).zip(profile) {
            layout.init_row(ballot, completion, row);
        }
        let probs = edge_distribution(topology);
        let sampler = WeightedIndex::new(probs.probs())
            .map_err(|e| Error::InvalidParameter(format!("edge distribution: {e}")))?;
        Ok(Self {
            layout,
            n,
            edges: topology.edges().to_vec(),
            sampler,
            states,
            t: 0,
            rng,
        })
    }

    /// Row length of one node's state.
    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    /// Activates one edge, averages its endpoints and returns the edge index.
    pub fn step(&mut self) -> usize {
        let e = self.sampler.sample(&mut self.rng);
        let (u, v) = self.edges[e];
        average_rows(&mut self.states, self.layout.dim, u, v);
        self.t += 1;
        e
    }

    /// Runs until `t == T`, emitting a snapshot at `t = 0` (if the simulation
    /// has not moved yet) and at every checkpoint in `(t, T]`.
    pub fn run(&mut self, t_end: u64, checkpoints: &[u64]) -> Vec<Snapshot> {
        let mut out = Vec::new();
        self.run_with(t_end, checkpoints, |s| out.push(s.snapshot()));
        out
    }

    /// As [`Simulation::run`] but hands the live simulation to `visit`
    /// instead of cloning the states.
    pub fn run_with(&mut self, t_end: u64, checkpoints: &[u64], mut visit: impl FnMut(&Simulation)) {
        if self.t == 0 {
            visit(self);
        }
        let mut pending: Vec<u64> = checkpoints
            .iter()
            .copied()
            .filter(|&c| c > self.t && c <= t_end)
            .collect();
        pending.sort_unstable();
        pending.dedup();
        for c in pending {
            while self.t < c {
                self.step();
            }
            visit(self);
        }
        while self.t < t_end {
            self.step();
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            t: self.t,
            layout: self.layout.clone(),
            n: self.n,
            states: self.states.clone(),
        }
    }
}

/// Borda completion used for a profile: raw ranks when every ballot is
/// complete, normalized scores otherwise, unless `requested` overrides.
pub fn effective_completion(profile: &[Ranking], requested: Option<CompletionScheme>) -> CompletionScheme {
    requested.unwrap_or(if profile.iter().any(Ranking::is_partial) {
        CompletionScheme::Normalize
    } else {
        CompletionScheme::AverageImpute
    })
}

/// Replaces rows `u` and `v` by their coordinate-wise mean.
#[inline]
pub fn average_rows(states: &mut [f64], dim: usize, u: usize, v: usize) {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    let (head, tail) = states.split_at_mut(hi * dim);
    let a = &mut head[lo * dim..(lo + 1) * dim];
    let b = &mut tail[..dim];
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let mean = 0.5 * (*x + *y);
        *x = mean;
        *y = mean;
    }
}

/// Read-only copy of all node states at one iteration.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: u64,
    layout: Layout,
    n: usize,
    states: Vec<f64>,
}

impl Snapshot {
    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    /// Debug dump with columns `trial,t,node,method,coordinate,value`.
    pub fn write_csv<W: Write>(&self, trial: usize, w: W, header: bool) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let fail = |e: csv::Error| Error::Config(format!("csv write: {e}"));
        if header {
            out.write_record(["trial", "t", "node", "method", "coordinate", "value"])
                .map_err(fail)?;
        }
        let (trial, t, method) = (trial.to_string(), self.t.to_string(), self.layout.method.name());
        for node in 0..self.n {
            let node_s = node.to_string();
            for (k, x) in self.state(node).iter().enumerate() {
                out.write_record([&trial, &t, &node_s, method, &k.to_string(), &format!("{x:?}")])
                    .map_err(fail)?;
            }
        }
        out.flush().map_err(|e| Error::io("<snapshot csv>", e))
    }
}

macro_rules! node_states_impl {
    ($ty:ty) => {
        impl NodeStates for $ty {
            fn n(&self) -> usize {
                self.n
            }

            fn m(&self) -> usize {
                self.layout.m
            }

            fn method(&self) -> GossipMethod {
                self.layout.method
            }

            fn state(&self, node: usize) -> &[f64] {
                &self.states[node * self.layout.dim..(node + 1) * self.layout.dim]
            }

            fn extract(&self, node: usize) -> Result<LocalEstimate> {
                if node >= self.n {
                    return Err(Error::InvalidParameter(format!(
                        "node {node} out of range 0..{}",
                        self.n
                    )));
                }
                self.layout.extract(node, self.state(node))
            }
        }
    };
}

node_states_impl!(Simulation);
node_states_impl!(Snapshot);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consensus::{borda_consensus, copeland_consensus, footrule_consensus};
    use crate::graph::{gen_complete, gen_grid, gen_watts_strogatz};
    use crate::ranking::{pairwise_of, PartialRanking};

    fn perm(r: &[usize]) -> Permutation {
        Permutation::new(r.to_vec()).unwrap()
    }

    fn ballots(ps: &[&[usize]]) -> Vec<Ranking> {
        ps.iter().map(|r| perm(r).into()).collect()
    }

    #[test]
    fn unanimous_profile_is_a_fixed_point() {
        let profile = vec![Ranking::from(perm(&[2, 1, 3])); 4];
        let t = gen_complete(4).unwrap();
        for method in GossipMethod::ALL {
            let mut sim = Simulation::init(method, &profile, &t, 1).unwrap();
            let before = sim.states().to_vec();
            let snaps = sim.run(50, &[10, 50]);
            assert_eq!(snaps.len(), 3);
            for s in &snaps {
                assert_eq!(s.states(), &before[..], "{method}");
                assert_eq!(s.extract(2).unwrap().ranking, perm(&[2, 1, 3]));
            }
        }
    }

    #[test]
    fn copeland_init_matches_pairwise_oracle() {
        let profile = ballots(&[&[2, 3, 1], &[1, 2, 3]]);
        let sim = Simulation::init(GossipMethod::Copeland, &profile, &gen_complete(2).unwrap(), 0).unwrap();
        let oracle = pairwise_of(&profile[0]);
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                assert_eq!(sim.state(0)[pair_index(i, j, 3)], oracle.get(i, j));
            }
        }
        // item 3 beats 1 and 2; item 1 beats 2
        assert_eq!(sim.state(0)[pair_index(2, 0, 3)], 1.0);
        assert_eq!(sim.state(0)[pair_index(0, 1, 3)], 1.0);
        assert_eq!(sim.state(0)[pair_index(2, 1, 3)], 1.0);
    }

    #[test]
    fn footrule_rows_are_one_hot() {
        let profile = ballots(&[&[2, 3, 1], &[1, 2, 3], &[3, 1, 2]]);
        let sim = Simulation::init(GossipMethod::Footrule, &profile, &gen_complete(3).unwrap(), 0).unwrap();
        for v in 0..3 {
            for row in sim.state(v).chunks(3) {
                assert_eq!(row.iter().sum::<f64>(), 1.0);
                assert_eq!(row.iter().filter(|&&x| x == 1.0).count(), 1);
            }
        }
    }

    #[test]
    fn extraction_at_t0_returns_own_ballot() {
        let profile = ballots(&[&[2, 3, 1], &[1, 2, 3], &[3, 1, 2], &[1, 3, 2]]);
        let t = gen_complete(4).unwrap();
        for method in GossipMethod::ALL {
            let sim = Simulation::init(method, &profile, &t, 0).unwrap();
            for (v, b) in profile.iter().enumerate() {
                assert_eq!(&Ranking::from(sim.extract(v).unwrap().ranking), b, "{method}");
            }
        }
    }

    #[test]
    fn converged_states_reproduce_the_oracles() {
        let ps: Vec<Permutation> = [[1, 2, 3, 4], [2, 1, 3, 4], [1, 3, 2, 4], [4, 1, 2, 3], [1, 2, 4, 3]]
            .iter()
            .map(|r| perm(r))
            .collect();
        let profile: Vec<Ranking> = ps.iter().cloned().map(Ranking::from).collect();
        let t = gen_complete(5).unwrap();
        let p = crate::ranking::PairwiseMatrix::from_profile(&profile).unwrap();
        let oracles = [
            (GossipMethod::Borda, borda_consensus(&ps).unwrap().ranking),
            (GossipMethod::Copeland, copeland_consensus(&p).unwrap().ranking),
            (GossipMethod::Footrule, footrule_consensus(&ps).unwrap().ranking),
        ];
        for (method, truth) in oracles {
            let mut sim = Simulation::init(method, &profile, &t, 3).unwrap();
            sim.run(20_000, &[]);
            for est in sim.extract_all().unwrap() {
                assert_eq!(est.ranking, truth, "{method}");
            }
        }
    }

    #[test]
    fn step_conserves_mass_and_is_idempotent() {
        let mut states = vec![2.0, 10.0, 4.0, -2.0, 7.0, 7.0];
        average_rows(&mut states, 2, 0, 1);
        assert_eq!(states, vec![3.0, 4.0, 3.0, 4.0, 7.0, 7.0]);
        let again = {
            let mut s = states.clone();
            average_rows(&mut s, 2, 1, 0);
            s
        };
        assert_eq!(again, states);
    }

    #[test]
    fn same_seed_same_trajectory() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = gen_watts_strogatz(30, 2, 0.3, &mut rng).unwrap();
        let profile: Vec<Ranking> = (0..30)
            .map(|_| crate::data::uniform_permutation(5, &mut rng).into())
            .collect();
        let run = |seed| {
            let mut sim = Simulation::init(GossipMethod::Borda, &profile, &t, seed).unwrap();
            let edges: Vec<usize> = (0..500).map(|_| sim.step()).collect();
            (edges, sim.states().to_vec())
        };
        assert_eq!(run(11), run(11));
        assert_ne!(run(11).0, run(12).0);
    }

    #[test]
    fn edge_frequencies_match_distribution() {
        // chi-square goodness of fit against p_e
        let t = gen_grid(3, 4).unwrap();
        let d = edge_distribution(&t);
        let profile = vec![Ranking::from(Permutation::identity(2)); t.n()];
        let mut sim = Simulation::init(GossipMethod::Borda, &profile, &t, 99).unwrap();
        let steps = 1_000_000;
        let mut counts = vec![0u64; t.edges().len()];
        for _ in 0..steps {
            counts[sim.step()] += 1;
        }
        let chi2: f64 = counts
            .iter()
            .zip(d.probs())
            .map(|(&o, &p)| {
                let e = p * steps as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        // 16 degrees of freedom; the 0.999 quantile is about 39.3
        assert_eq!(counts.len(), 17);
        assert!(chi2 < 39.3, "chi2 = {chi2}");
    }

    #[test]
    fn partial_ballots() {
        let profile: Vec<Ranking> = vec![
            PartialRanking::from_top(3, &[2]).unwrap().into(),
            perm(&[1, 2, 3]).into(),
        ];
        let t = gen_complete(2).unwrap();
        assert!(Simulation::init(GossipMethod::Borda, &profile, &t, 0).is_ok());
        let sim = Simulation::init(GossipMethod::Copeland, &profile, &t, 0).unwrap();
        // unranked items 1 and 3 tie at one half
        assert_eq!(sim.state(0)[pair_index(0, 2, 3)], 0.5);
        for method in [GossipMethod::Footrule, GossipMethod::LocalKemeny(BaseMethod::Footrule)] {
            assert!(Simulation::init(method, &profile, &t, 0).is_err());
        }
        assert!(Simulation::init(GossipMethod::Borda, &profile[..1], &t, 0).is_err());
    }

    #[test]
    fn method_names_roundtrip() {
        for m in GossipMethod::ALL {
            assert_eq!(m.name().parse::<GossipMethod>().unwrap(), m);
        }
        assert!("median".parse::<GossipMethod>().is_err());
    }

    #[test]
    fn snapshot_csv_columns() {
        let profile = ballots(&[&[1, 2], &[2, 1]]);
        let sim = Simulation::init(GossipMethod::Borda, &profile, &gen_complete(2).unwrap(), 0).unwrap();
        let mut buf = Vec::new();
        sim.snapshot().write_csv(7, &mut buf, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "trial,t,node,method,coordinate,value\n7,0,0,borda,0,1.0\n7,0,0,borda,1,2.0\n7,0,1,borda,0,2.0\n7,0,1,borda,1,1.0\n"
        );
    }
}
