//! Centralized robustness of consensus rules under contaminated Mallows data.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{DataSource, ExperimentConfig};
use super::runner::trial_rng;
use crate::consensus::{
    borda_consensus, copeland_consensus, footrule_consensus, kemenize_result, kemeny_bruteforce, ConsensusResult, Rule,
};
use crate::data::{contaminate, mallows_sample, uniform_permutation, MallowsModel};
use crate::error::{Error, Result};
use crate::ranking::{kendall_tau_fast, pairwise_disagreement};

/// Excess losses below this are rounding noise.
const LOSS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub rule: Rule,
    /// `d_tau(consensus, pi0)`.
    pub d_tau: u64,
    /// Mean per-voter Kendall loss minus the Kemeny optimum.
    pub delta_loss: f64,
    /// The same after local Kemenization of the consensus.
    pub delta_loss_lk: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    /// Population standard deviation over trials.
    pub std: f64,
}

impl Stat {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        let k = v.len() as f64;
        let mean = v.iter().sum::<f64>() / k;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / k;
        Stat { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RobustnessRow {
    pub rule: Rule,
    pub d_tau: Stat,
    pub delta_loss: Stat,
    pub delta_loss_lk: Stat,
}

#[derive(Debug, Clone)]
pub struct RobustnessResult {
    pub trials: Vec<TrialRow>,
    pub table: Vec<RobustnessRow>,
}

impl RobustnessResult {
    pub fn row(&self, rule: Rule) -> &RobustnessRow {
        self.table
            .iter()
            .find(|r| r.rule == rule)
            .expect("every rule is tabulated")
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() <= LOSS_TOL {
        0.0
    } else {
        x
    }
}

fn one_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRow>> {
    let mut rng = trial_rng(cfg.experiment.seed, trial, 0);
    // a fresh center per trial keeps index tie-breaking from favouring pi0
    let center = uniform_permutation(cfg.data.m, &mut rng);
    let model = MallowsModel::new(center.clone(), cfg.data.phi)?;
    let mut profile = mallows_sample(&model, cfg.data.n, &mut rng)?;
    if let Some(spec) = cfg.contamination_spec()? {
        profile = contaminate(&profile, &spec, &model, &mut rng)?;
    }
    let perms = profile.complete().expect("synthetic ballots are complete");
    let p = profile.pairwise()?;
    let n = profile.n();
    let kemeny = kemeny_bruteforce(&p, n)?;
    let best = kemeny.objective;
    let results: [ConsensusResult; 4] = [
        borda_consensus(&perms)?,
        copeland_consensus(&p)?,
        footrule_consensus(&perms)?,
        kemeny,
    ];
    results
        .iter()
        .map(|res| {
            let lk = kemenize_result(res, &p)?;
            Ok(TrialRow {
                trial,
                rule: res.rule,
                d_tau: kendall_tau_fast(&res.ranking, &center)?,
                delta_loss: snap(res.objective - best),
                delta_loss_lk: snap(pairwise_disagreement(lk.ranks(), &p) - best),
            })
        })
        .collect()
}

/// Mean and spread of distance to the Mallows center and of excess Kendall
/// loss for Borda, Copeland, Footrule and Kemeny over `trials` profiles.
pub fn robustness_study(cfg: &ExperimentConfig) -> Result<RobustnessResult> {
    cfg.validate()?;
    if cfg.data.source != DataSource::Mallows {
        return Err(Error::Config("robustness study needs data.source = \"mallows\"".into()));
    }
    if cfg.data.m > crate::consensus::KEMENY_MAX_ITEMS {
        return Err(Error::KemenyCap {
            m: cfg.data.m,
            cap: crate::consensus::KEMENY_MAX_ITEMS,
        });
    }
    let per_trial = (0..cfg.experiment.trials)
        .into_par_iter()
        .map(|k| one_trial(cfg, k))
        .collect::<Result<Vec<_>>>()?;
    let trials: Vec<TrialRow> = per_trial.into_iter().flatten().collect();
    let table = Rule::ALL
        .iter()
        .map(|&rule| {
            let rows = || trials.iter().filter(move |r| r.rule == rule);
            RobustnessRow {
                rule,
                d_tau: Stat::of(rows().map(|r| r.d_tau as f64)),
                delta_loss: Stat::of(rows().map(|r| r.delta_loss)),
                delta_loss_lk: Stat::of(rows().map(|r| r.delta_loss_lk)),
            }
        })
        .collect();
    Ok(RobustnessResult { trials, table })
}

/// Writes `robustness_trials.csv` and `robustness.csv` (and a JSON mirror).
pub fn write_robustness(result: &RobustnessResult, dir: &Path, json: bool) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, body: String| {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))
    };
    let mut trials = String::from("trial,rule,d_tau,delta_loss,delta_loss_lk\n");
    for r in &result.trials {
        trials += &format!(
            "{},{},{},{},{}\n",
            r.trial, r.rule, r.d_tau, r.delta_loss, r.delta_loss_lk
        );
    }
    write("robustness_trials.csv", trials)?;
    write("robustness.csv", format_table(result))?;
    if json {
        let text = serde_json::to_string_pretty(&result.table).map_err(|e| Error::Config(e.to_string()))?;
        write("robustness.json", text + "\n")?;
    }
    Ok(())
}

/// `rule,d_tau_mean,d_tau_std,delta_loss_mean,...` table.
pub fn format_table(result: &RobustnessResult) -> String {
    let mut s =
        String::from("rule,d_tau_mean,d_tau_std,delta_loss_mean,delta_loss_std,delta_loss_lk_mean,delta_loss_lk_std\n");
    for r in &result.table {
        s += &format!(
            "{},{},{},{},{},{},{}\n",
            r.rule,
            r.d_tau.mean,
            r.d_tau.std,
            r.delta_loss.mean,
            r.delta_loss.std,
            r.delta_loss_lk.mean,
            r.delta_loss_lk.std
        );
    }
    s
}
