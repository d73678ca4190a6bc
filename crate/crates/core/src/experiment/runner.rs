//! Monte-Carlo convergence experiments over graphs and gossip methods.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{bound_constants, BoundConstants, GAP_TOL};
use super::config::{DataSource, ExperimentConfig};
use super::metrics::{kendall_error_of, pairwise_mse, score_mse};
use crate::consensus::{
    borda_consensus_with, check_transitivity, copeland_consensus, footrule_consensus, local_kemenize,
};
use crate::data::{contaminate, mallows_sample, uniform_permutation, MallowsModel, PreferenceProfile};
use crate::error::{Error, Result};
use crate::gossip::{effective_completion, BaseMethod, GossipMethod, Simulation, SimulationOptions};
use crate::graph::{edge_distribution, spectral_info, GraphSpec};
use crate::ranking::{PairwiseMatrix, Permutation, ScoreVector};

pub const METRIC_SCORE_MSE: &str = "score-mse";
pub const METRIC_PAIRWISE_MSE: &str = "pairwise-mse";
pub const METRIC_KENDALL: &str = "kendall-error";
pub const METRIC_PROP1: &str = "bound-prop1";
pub const METRIC_PROP1_FAST: &str = "bound-prop1-c1";
pub const METRIC_PROP1_SLOW: &str = "bound-prop1-c2";
pub const METRIC_PROP2: &str = "bound-prop2";
pub const METRIC_PROP2_FAST: &str = "bound-prop2-c1";
pub const METRIC_PROP2_SLOW: &str = "bound-prop2-c2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    /// CSV plus a JSON mirror of every table.
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Unknown {
                kind: "output format",
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub trial: usize,
    pub t: u64,
    pub graph: &'static str,
    pub method: &'static str,
    pub metric: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub t: u64,
    pub graph: &'static str,
    pub method: &'static str,
    pub metric: &'static str,
    pub mean: f64,
    /// Population standard deviation over trials.
    pub std: f64,
}

/// Per-trial, per-graph facts recorded in the run metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphInfo {
    pub graph: &'static str,
    pub nodes: usize,
    pub edges: usize,
    pub spectral_gap: f64,
    pub bounds: BoundConstants,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialInfo {
    pub trial: usize,
    /// Profiles discarded as degenerate before this trial's profile.
    pub resamples: usize,
    pub graphs: Vec<GraphInfo>,
}

#[derive(Debug, Clone)]
pub struct TrialOutput {
    pub info: TrialInfo,
    pub records: Vec<TraceRecord>,
    /// Node-state dump when `debug_snapshots` is set.
    pub snapshots_csv: Option<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub checkpoints: Vec<u64>,
    /// Mallows center shared by all trials.
    pub center: Option<Permutation>,
    pub trials: Vec<TrialOutput>,
    pub summary: Vec<SummaryRow>,
}

impl ExperimentResult {
    pub fn records(&self) -> impl Iterator<Item = &TraceRecord> {
        self.trials.iter().flat_map(|t| t.records.iter())
    }

    pub fn summary_value(&self, graph: &str, method: &str, metric: &str, t: u64) -> Option<&SummaryRow> {
        self.summary
            .iter()
            .find(|r| r.graph == graph && r.method == method && r.metric == metric && r.t == t)
    }

    /// Summary rows of one curve, ordered by `t`.
    pub fn curve(&self, graph: &str, method: &str, metric: &str) -> Vec<&SummaryRow> {
        let mut v: Vec<&SummaryRow> = self
            .summary
            .iter()
            .filter(|r| r.graph == graph && r.method == method && r.metric == metric)
            .collect();
        v.sort_by_key(|r| r.t);
        v
    }
}

/// Random stream for `(trial, purpose)`; stream 0 is reserved for data shared
/// by all trials.
pub fn trial_rng(master: u64, trial: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(((trial as u64 + 1) << 8) | purpose);
    rng
}

fn shared_rng(master: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master)
}

fn graph_purpose(spec: &GraphSpec) -> u64 {
    match spec {
        GraphSpec::Complete => 1,
        GraphSpec::WattsStrogatz { .. } => 2,
        GraphSpec::Geometric { .. } => 3,
        GraphSpec::Grid { .. } => 4,
    }
}

const DATA_PURPOSE: u64 = 0;
const GOSSIP_PURPOSE: u64 = 64;

fn is_copeland_type(m: GossipMethod) -> bool {
    matches!(
        m,
        GossipMethod::Copeland | GossipMethod::LocalKemeny(BaseMethod::Copeland)
    )
}

fn is_borda_type(m: GossipMethod) -> bool {
    matches!(m, GossipMethod::Borda | GossipMethod::LocalKemeny(BaseMethod::Borda))
}

/// Centralized targets of every gossip method on one profile.
struct Truth {
    borda_scores: ScoreVector,
    pairwise: PairwiseMatrix,
    rankings: HashMap<GossipMethod, Permutation>,
}

fn truths(profile: &PreferenceProfile, methods: &[GossipMethod], cfg: &ExperimentConfig) -> Result<Truth> {
    let voters = profile.voters();
    let scheme = effective_completion(voters, cfg.data.completion);
    let borda = borda_consensus_with(voters, scheme)?;
    let pairwise = profile.pairwise()?;
    let copeland = copeland_consensus(&pairwise)?.ranking;
    let mut rankings = HashMap::new();
    for &method in methods {
        let base = match method {
            GossipMethod::Borda | GossipMethod::LocalKemeny(BaseMethod::Borda) => borda.ranking.clone(),
            GossipMethod::Copeland | GossipMethod::LocalKemeny(BaseMethod::Copeland) => copeland.clone(),
            GossipMethod::Footrule | GossipMethod::LocalKemeny(BaseMethod::Footrule) => {
                let complete = profile
                    .complete()
                    .ok_or_else(|| Error::InvalidParameter(format!("method `{method}` requires complete rankings")))?;
                footrule_consensus(&complete)?.ranking
            }
        };
        let ranking = match method {
            GossipMethod::LocalKemeny(_) => local_kemenize(&base.to_ordering(), &pairwise)?.to_permutation(),
            _ => base,
        };
        rankings.insert(method, ranking);
    }
    Ok(Truth {
        borda_scores: borda.scores.expect("Borda has scores"),
        pairwise,
        rankings,
    })
}

fn is_degenerate(profile: &PreferenceProfile, methods: &[GossipMethod], truth: &Truth) -> bool {
    let borda_tied = || {
        let mut s = truth.borda_scores.as_slice().to_vec();
        s.sort_by(f64::total_cmp);
        s.windows(2).any(|w| w[1] - w[0] <= GAP_TOL)
    };
    (methods.iter().any(|&m| is_borda_type(m)) && borda_tied())
        || (methods.iter().any(|&m| is_copeland_type(m)) && !check_transitivity(&truth.pairwise).is_strict())
        || profile.n() == 0
}

fn trial_profile(
    cfg: &ExperimentConfig,
    methods: &[GossipMethod],
    base: Option<&PreferenceProfile>,
    center: Option<&Permutation>,
    trial: usize,
) -> Result<(PreferenceProfile, Truth, usize)> {
    let mut rng = trial_rng(cfg.experiment.seed, trial, DATA_PURPOSE);
    let contamination = cfg.contamination_spec()?;
    let mut resamples = 0;
    loop {
        let (clean, model) = match (base, center) {
            (Some(p), _) => (p.clone(), None),
            (None, Some(c)) => {
                let model = MallowsModel::new(c.clone(), cfg.data.phi)?;
                (mallows_sample(&model, cfg.data.n, &mut rng)?, Some(model))
            }
            (None, None) => unreachable!("either a file profile or a Mallows center"),
        };
        let profile = match (&contamination, &model) {
            (Some(spec), Some(model)) => contaminate(&clean, spec, model, &mut rng)?,
            (Some(spec), None) => {
                // file data: the adversary centres on the Borda consensus
                let scheme = effective_completion(clean.voters(), cfg.data.completion);
                let center = borda_consensus_with(clean.voters(), scheme)?.ranking;
                contaminate(&clean, spec, &MallowsModel::new(center, spec.phi)?, &mut rng)?
            }
            _ => clean,
        };
        let truth = truths(&profile, methods, cfg)?;
        let redraw = model.is_some() && cfg.data.resample_degenerate && is_degenerate(&profile, methods, &truth);
        if !redraw {
            return Ok((profile, truth, resamples));
        }
        resamples += 1;
        if resamples > cfg.data.max_resamples {
            return Err(Error::InvalidParameter(format!(
                "trial {trial}: no non-degenerate profile after {} draws",
                cfg.data.max_resamples
            )));
        }
    }
}

fn run_trial(
    cfg: &ExperimentConfig,
    methods: &[GossipMethod],
    graphs: &[GraphSpec],
    checkpoints: &[u64],
    base: Option<&PreferenceProfile>,
    center: Option<&Permutation>,
    trial: usize,
) -> Result<TrialOutput> {
    let (profile, truth, resamples) = trial_profile(cfg, methods, base, center, trial)?;
    let voters = profile.voters();
    let n = profile.n();
    let mut records = Vec::new();
    let mut infos = Vec::new();
    let mut dump = cfg.experiment.debug_snapshots.then(Vec::new);
    let options = SimulationOptions {
        completion: cfg.data.completion,
        ..SimulationOptions::default()
    };

    for spec in graphs {
        let graph = spec.name();
        let mut grng = trial_rng(cfg.experiment.seed, trial, graph_purpose(spec));
        let topology = spec.generate(n, &mut grng)?;
        let spectral = spectral_info(&topology, &edge_distribution(&topology))?;
        let bounds = bound_constants(voters, &spectral, cfg.data.completion)?;
        infos.push(GraphInfo {
            graph,
            nodes: topology.n(),
            edges: topology.edges().len(),
            spectral_gap: spectral.c,
            bounds,
        });

        for &method in methods {
            let gossip_rng = trial_rng(cfg.experiment.seed, trial, GOSSIP_PURPOSE + graph_purpose(spec));
            let mut sim = Simulation::init_with_rng(method, voters, &topology, gossip_rng, options.clone())?;
            let target = &truth.rankings[&method];
            let mut failure: Option<Error> = None;
            let mut push = |t: u64, metric: &'static str, value: f64| {
                records.push(TraceRecord {
                    trial,
                    t,
                    graph,
                    method: method.name(),
                    metric,
                    value,
                });
            };
            sim.run_with(cfg.experiment.iterations, checkpoints, |s| {
                if failure.is_some() {
                    return;
                }
                let t = s.t();
                let mut eval = || -> Result<()> {
                    push(t, METRIC_KENDALL, kendall_error_of(s, target)?);
                    if is_borda_type(method) {
                        push(t, METRIC_SCORE_MSE, score_mse(s, &truth.borda_scores)?);
                    }
                    if !matches!(method, GossipMethod::Borda | GossipMethod::Footrule) {
                        push(t, METRIC_PAIRWISE_MSE, pairwise_mse(s, &truth.pairwise)?);
                    }
                    let tf = t as f64;
                    if method == GossipMethod::Borda {
                        if let (Some(a), Some(b)) = (bounds.borda_fast(tf), bounds.borda_slow(tf)) {
                            push(t, METRIC_PROP1, a.min(b));
                            push(t, METRIC_PROP1_FAST, a);
                            push(t, METRIC_PROP1_SLOW, b);
                        }
                    }
                    if method == GossipMethod::Copeland {
                        if let (Some(a), Some(b)) = (bounds.copeland_fast(tf), bounds.copeland_slow(tf)) {
                            push(t, METRIC_PROP2, a.min(b));
                            push(t, METRIC_PROP2_FAST, a);
                            push(t, METRIC_PROP2_SLOW, b);
                        }
                    }
                    if let Some(buf) = dump.as_mut() {
                        let header = buf.is_empty();
                        s.snapshot().write_csv(trial, &mut *buf, header)?;
                    }
                    Ok(())
                };
                if let Err(e) = eval() {
                    failure = Some(e);
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
    }
    Ok(TrialOutput {
        info: TrialInfo {
            trial,
            resamples,
            graphs: infos,
        },
        records,
        snapshots_csv: dump,
    })
}

/// Mean and population standard deviation of every `(t, graph, method,
/// metric)` cell, in first-appearance order.
pub fn summarize<'a>(records: impl IntoIterator<Item = &'a TraceRecord>) -> Vec<SummaryRow> {
    type Key = (u64, &'static str, &'static str, &'static str);
    let mut order: Vec<Key> = Vec::new();
    let mut cells: HashMap<Key, Vec<f64>> = HashMap::new();
    for r in records {
        let key = (r.t, r.graph, r.method, r.metric);
        cells
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r.value);
    }
    order
        .into_iter()
        .map(|key| {
            let v = &cells[&key];
            let k = v.len() as f64;
            let mean = v.iter().sum::<f64>() / k;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / k;
            SummaryRow {
                t: key.0,
                graph: key.1,
                method: key.2,
                metric: key.3,
                mean,
                std: var.sqrt(),
            }
        })
        .collect()
}

/// Runs every trial on the current rayon pool; results do not depend on the
/// pool size.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let methods = cfg.methods()?;
    let graphs = cfg.graphs()?;
    let checkpoints = cfg.checkpoint_schedule();
    let (base, center) = match cfg.data.source {
        DataSource::Preflib => {
            let path = cfg.data.path.as_ref().expect("validated");
            (Some(PreferenceProfile::load(path)?), None)
        }
        DataSource::Mallows => (
            None,
            Some(uniform_permutation(cfg.data.m, &mut shared_rng(cfg.experiment.seed))),
        ),
    };
    let trials = (0..cfg.experiment.trials)
        .into_par_iter()
        .map(|k| run_trial(cfg, &methods, &graphs, &checkpoints, base.as_ref(), center.as_ref(), k))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(trials.iter().flat_map(|t| t.records.iter()));
    Ok(ExperimentResult {
        config: cfg.clone(),
        checkpoints,
        center,
        trials,
        summary,
    })
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    }
}

pub fn write_trial_csv(path: &Path, records: &[TraceRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(["trial", "t", "graph", "method", "metric", "value"])
        .map_err(csv_err(path))?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.t.to_string(),
            r.graph.to_string(),
            r.method.to_string(),
            r.metric.to_string(),
            fmt_f64(r.value),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(["t", "graph", "method", "metric", "mean", "std"])
        .map_err(csv_err(path))?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.graph.to_string(),
            r.method.to_string(),
            r.metric.to_string(),
            fmt_f64(r.mean),
            fmt_f64(r.std),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct Metadata<'a> {
    config: &'a ExperimentConfig,
    checkpoints: &'a [u64],
    center: Option<&'a [usize]>,
    normalization: Normalization,
    trials: Vec<&'a TrialInfo>,
}

#[derive(Serialize)]
struct Normalization {
    score_mse: &'static str,
    pairwise_mse: &'static str,
    kendall_error: &'static str,
    std: &'static str,
}

/// Writes `trial_<k>.csv`, `summary.csv` and `metadata.json` (plus JSON
/// mirrors and snapshot dumps when requested) into `dir`.
pub fn write_outputs(result: &ExperimentResult, dir: &Path, format: OutputFormat) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for t in &result.trials {
        let k = t.info.trial;
        write_trial_csv(&dir.join(format!("trial_{k}.csv")), &t.records)?;
        if format == OutputFormat::Json {
            write_json(&dir.join(format!("trial_{k}.json")), &t.records)?;
        }
        if let Some(buf) = &t.snapshots_csv {
            let path = dir.join(format!("snapshots_{k}.csv"));
            std::fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
        }
    }
    write_summary_csv(&dir.join("summary.csv"), &result.summary)?;
    if format == OutputFormat::Json {
        write_json(&dir.join("summary.json"), &result.summary)?;
    }
    let meta = Metadata {
        config: &result.config,
        checkpoints: &result.checkpoints,
        center: result.center.as_ref().map(|c| c.ranks()),
        normalization: Normalization {
            score_mse: "(1/(n*m)) * sum over nodes v and items i of (x_vi - s_i)^2",
            pairwise_mse: "(1/(n*m*(m-1))) * sum over nodes v and ordered pairs i != j of (x_v,ij - p_ij)^2",
            kendall_error: "(1/n) * sum over nodes v of d_tau(local estimate, centralized consensus)",
            std: "population standard deviation over trials",
        },
        trials: result.trials.iter().map(|t| &t.info).collect(),
    };
    write_json(&dir.join("metadata.json"), &meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(extra: &str) -> ExperimentConfig {
        ExperimentConfig::from_toml(&format!(
            "[experiment]\nmethods = [\"borda\", \"copeland\", \"footrule\", \"lk-borda\"]\n\
             iterations = 300\ntrials = 3\ncheckpoints = 5\nseed = 7\n\
             [data]\nn = 15\nm = 4\n[graph]\nkinds = [\"complete\", \"watts-strogatz\"]\nws_k = 2\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn unanimous_profile_has_zero_error() {
        let mut cfg = small("");
        cfg.data.phi = 0.0;
        cfg.data.resample_degenerate = false;
        cfg.experiment.trials = 1;
        cfg.experiment.iterations = 1;
        cfg.experiment.checkpoints = super::super::config::Checkpoints::Count(1);
        let res = run_experiment(&cfg).unwrap();
        for r in res.records() {
            if !r.metric.starts_with("bound") {
                assert_eq!(r.value, 0.0, "{r:?}");
            }
        }
        assert!(res.records().any(|r| r.t == 1));
    }

    #[test]
    fn summary_matches_recomputation() {
        let res = run_experiment(&small("")).unwrap();
        let row = res.summary_value("complete", "borda", METRIC_SCORE_MSE, 300).unwrap();
        let vals: Vec<f64> = res
            .records()
            .filter(|r| r.graph == "complete" && r.method == "borda" && r.metric == METRIC_SCORE_MSE && r.t == 300)
            .map(|r| r.value)
            .collect();
        assert_eq!(vals.len(), 3);
        let mean = vals.iter().sum::<f64>() / 3.0;
        assert_eq!(row.mean, mean);
        approx::assert_relative_eq!(
            row.std,
            (vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 3.0).sqrt()
        );
        // bounds are reported with both variants and are nonincreasing
        let prop1 = res.curve("complete", "borda", METRIC_PROP1);
        assert_eq!(prop1.len(), 6);
        assert!(prop1.windows(2).all(|w| w[1].mean <= w[0].mean));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let cfg = small("");
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| run_experiment(&cfg)).unwrap();
        let b = four.install(|| run_experiment(&cfg)).unwrap();
        assert_eq!(a.summary, b.summary);
        assert_eq!(a.records().collect::<Vec<_>>(), b.records().collect::<Vec<_>>());
    }

    #[test]
    fn outputs_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = small("");
        cfg.experiment.trials = 2;
        cfg.experiment.debug_snapshots = true;
        let res = run_experiment(&cfg).unwrap();
        write_outputs(&res, dir.path(), OutputFormat::Json).unwrap();
        for f in [
            "trial_0.csv",
            "trial_1.csv",
            "summary.csv",
            "summary.json",
            "metadata.json",
            "snapshots_0.csv",
        ] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        let head = std::fs::read_to_string(dir.path().join("trial_0.csv")).unwrap();
        assert!(head.starts_with("trial,t,graph,method,metric,value\n0,0,complete,borda,kendall-error,"));
        let snap = std::fs::read_to_string(dir.path().join("snapshots_0.csv")).unwrap();
        assert!(snap.starts_with("trial,t,node,method,coordinate,value\n"));
    }

    #[test]
    fn footrule_on_partial_data_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.soi");
        std::fs::write(
            &path,
            "# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 4\n2: 1,2\n2: 3,1,2\n",
        )
        .unwrap();
        let mut cfg = small("");
        cfg.data.source = DataSource::Preflib;
        cfg.data.path = Some(path);
        cfg.graph.kinds = vec!["complete".into()];
        assert!(run_experiment(&cfg).is_err());
        cfg.experiment.methods = vec!["borda".into(), "copeland".into()];
        let res = run_experiment(&cfg).unwrap();
        assert_eq!(res.trials[0].info.graphs[0].nodes, 4);
    }
}
