//! TOML experiment configuration.
//!
//! ```toml
//! [experiment]
//! methods = ["borda", "copeland", "footrule"]
//! iterations = 2000
//! trials = 100
//! checkpoints = 50          # count of log-spaced points, or an explicit list
//! seed = 2024
//! output = "results"
//!
//! [data]
//! source = "mallows"        # or "preflib" with `path`
//! n = 151
//! m = 8
//! phi = 0.5
//!
//! [contamination]           # optional
//! epsilon = 0.3
//! kind = "uniform-random"   # or "adversarial-reversed"
//! phi = 0.5
//!
//! [graph]
//! kinds = ["complete", "watts-strogatz", "geometric"]
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data::{ContaminationKind, ContaminationSpec};
use crate::error::{Error, Result};
use crate::gossip::GossipMethod;
use crate::graph::{GraphSpec, DEFAULT_WS_BETA};
use crate::ranking::CompletionScheme;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub data: DataSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contamination: Option<ContaminationSection>,
    pub graph: GraphSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentSection {
    pub methods: Vec<String>,
    pub iterations: u64,
    pub trials: usize,
    pub checkpoints: Checkpoints,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Also dump every node state at every checkpoint (large).
    pub debug_snapshots: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Checkpoints {
    /// Number of log-spaced points in `[1, T]`.
    Count(usize),
    List(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataSource {
    Mallows,
    Preflib,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DataSection {
    pub source: DataSource,
    pub n: usize,
    pub m: usize,
    pub phi: f64,
    /// Profile file (`.soc`, `.soi` or `.csv`) for `source = "preflib"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Redraw Mallows profiles whose bound constants would be undefined
    /// (tied Borda scores, or a duel matrix that is not strictly transitive
    /// when a pairwise method runs).
    pub resample_degenerate: bool,
    pub max_resamples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion: Option<CompletionScheme>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContaminationSection {
    pub epsilon: f64,
    pub kind: ContaminationKind,
    #[serde(default = "default_phi")]
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GraphSection {
    pub kinds: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ws_k: Option<usize>,
    pub ws_beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_cols: Option<usize>,
}

fn default_phi() -> f64 {
    0.5
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            methods: vec!["borda".into(), "copeland".into(), "footrule".into()],
            iterations: 2000,
            trials: 100,
            checkpoints: Checkpoints::Count(50),
            seed: 2024,
            output: None,
            debug_snapshots: false,
        }
    }
}

impl Default for DataSection {
    fn default() -> Self {
        Self {
            source: DataSource::Mallows,
            n: 151,
            m: 8,
            phi: 0.5,
            path: None,
            resample_degenerate: true,
            max_resamples: 100,
            completion: None,
        }
    }
}

impl Default for GraphSection {
    fn default() -> Self {
        Self {
            kinds: vec!["complete".into(), "watts-strogatz".into(), "geometric".into()],
            ws_k: None,
            ws_beta: DEFAULT_WS_BETA,
            radius: None,
            grid_rows: None,
            grid_cols: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative `data.path` is taken relative to it.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })?;
        if let (Some(data), Some(dir)) = (cfg.data.path.as_mut(), path.parent()) {
            if data.is_relative() {
                *data = dir.join(&*data);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn methods(&self) -> Result<Vec<GossipMethod>> {
        self.experiment.methods.iter().map(|m| m.parse()).collect()
    }

    pub fn graphs(&self) -> Result<Vec<GraphSpec>> {
        let g = &self.graph;
        g.kinds
            .iter()
            .map(|kind| {
                Ok(match GraphSpec::from_name(kind)? {
                    GraphSpec::Complete => GraphSpec::Complete,
                    GraphSpec::WattsStrogatz { .. } => GraphSpec::WattsStrogatz {
                        k: g.ws_k,
                        beta: g.ws_beta,
                    },
                    GraphSpec::Geometric { .. } => GraphSpec::Geometric { radius: g.radius },
                    GraphSpec::Grid { .. } => GraphSpec::Grid {
                        rows: g.grid_rows,
                        cols: g.grid_cols,
                    },
                })
            })
            .collect()
    }

    pub fn contamination_spec(&self) -> Result<Option<ContaminationSpec>> {
        self.contamination
            .map(|c| ContaminationSpec::new(c.epsilon, c.kind, c.phi))
            .transpose()
    }

    /// Sorted, deduplicated checkpoints within `[1, T]`.
    pub fn checkpoint_schedule(&self) -> Vec<u64> {
        let t = self.experiment.iterations;
        match &self.experiment.checkpoints {
            Checkpoints::Count(k) => log_spaced(t, *k),
            Checkpoints::List(list) => {
                let mut v = list.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let e = &self.experiment;
        if e.iterations < 1 {
            return bad("experiment.iterations must be >= 1".into());
        }
        if e.trials < 1 {
            return bad("experiment.trials must be >= 1".into());
        }
        if e.methods.is_empty() {
            return bad("experiment.methods is empty".into());
        }
        self.methods()?;
        match &e.checkpoints {
            Checkpoints::Count(0) => return bad("experiment.checkpoints must be >= 1".into()),
            Checkpoints::List(list) => {
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return bad("experiment.checkpoints must be strictly increasing".into());
                }
                if let Some(&c) = list.iter().find(|&&c| c < 1 || c > e.iterations) {
                    return bad(format!("checkpoint {c} outside [1, {}]", e.iterations));
                }
            }
            Checkpoints::Count(_) => {}
        }
        let d = &self.data;
        match d.source {
            DataSource::Mallows => {
                if d.n < 2 || d.m < 2 {
                    return bad(format!("data.n and data.m must be >= 2, got n={} m={}", d.n, d.m));
                }
                if !(0.0..=1.0).contains(&d.phi) {
                    return bad(format!("data.phi = {} outside [0, 1]", d.phi));
                }
            }
            DataSource::Preflib => {
                if d.path.is_none() {
                    return bad("data.path is required for source = \"preflib\"".into());
                }
            }
        }
        if self.graph.kinds.is_empty() {
            return bad("graph.kinds is empty".into());
        }
        self.graphs()?;
        self.contamination_spec()?;
        Ok(())
    }
}

/// `k` strictly increasing integers in `[1, t]` spaced evenly in log scale,
/// always ending at `t`.
pub fn log_spaced(t: u64, k: usize) -> Vec<u64> {
    let k = k.min(t as usize);
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        return vec![t];
    }
    let mut out: Vec<u64> = Vec::with_capacity(k);
    for idx in 0..k {
        let x = (t as f64).powf(idx as f64 / (k - 1) as f64).round() as u64;
        // leave room for the remaining points below t
        let cap = t - (k - 1 - idx) as u64;
        let floor = out.last().map_or(1, |&p| p + 1);
        out.push(x.clamp(floor, cap));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_reference_setup() {
        let c = ExperimentConfig::from_toml("").unwrap();
        assert_eq!((c.data.n, c.data.m, c.data.phi), (151, 8, 0.5));
        assert_eq!((c.experiment.iterations, c.experiment.trials), (2000, 100));
        let cps = c.checkpoint_schedule();
        assert_eq!(cps.len(), 50);
        assert_eq!((cps[0], *cps.last().unwrap()), (1, 2000));
        assert!(cps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(c.graphs().unwrap().len(), 3);
    }

    #[test]
    fn parses_all_sections() {
        let c = ExperimentConfig::from_toml(
            r#"
            [experiment]
            methods = ["lk-copeland"]
            iterations = 10
            trials = 2
            checkpoints = [1, 5, 10]
            [data]
            n = 20
            m = 4
            [contamination]
            epsilon = 0.3
            kind = "adversarial-reversed"
            [graph]
            kinds = ["grid"]
            grid_rows = 4
            "#,
        )
        .unwrap();
        assert_eq!(c.checkpoint_schedule(), vec![1, 5, 10]);
        assert_eq!(c.contamination_spec().unwrap().unwrap().replaced(20), 6);
        assert_eq!(
            c.graphs().unwrap(),
            vec![GraphSpec::Grid {
                rows: Some(4),
                cols: None
            }]
        );
        let again = ExperimentConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn rejects_invalid_configs() {
        for text in [
            "[experiment]\niterations = 0",
            "[experiment]\ntrials = 0",
            "[experiment]\nmethods = [\"median\"]",
            "[experiment]\niterations = 10\ncheckpoints = [5, 3]",
            "[experiment]\niterations = 10\ncheckpoints = [20]",
            "[data]\nsource = \"preflib\"",
            "[data]\nphi = 2.0",
            "[graph]\nkinds = [\"torus\"]",
            "[contamination]\nepsilon = 1.5\nkind = \"uniform-random\"",
            "[experiment]\nunknown_key = 1",
        ] {
            assert!(ExperimentConfig::from_toml(text).is_err(), "{text}");
        }
    }

    #[test]
    fn log_spacing_edge_cases() {
        assert_eq!(log_spaced(5, 50), vec![1, 2, 3, 4, 5]);
        assert_eq!(log_spaced(100, 1), vec![100]);
        assert_eq!(log_spaced(100, 3), vec![1, 10, 100]);
    }
}
