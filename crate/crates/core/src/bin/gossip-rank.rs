//! Command-line front end. Exit codes: 0 success, 1 validation error, 2 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gossip_rank::consensus::{
    borda_consensus_with, check_transitivity, copeland_consensus, footrule_consensus, kemeny_bruteforce, Rule,
};
use gossip_rank::data::{
    contaminate, mallows_sample, uniform_permutation, ContaminationKind, ContaminationSpec, MallowsModel,
    PreferenceProfile,
};
use gossip_rank::experiment::robustness::{format_table, write_robustness};
use gossip_rank::experiment::{robustness_study, run_experiment, write_outputs, ExperimentConfig, OutputFormat};
use gossip_rank::gossip::effective_completion;
use gossip_rank::graph::{edge_distribution, spectral_info, GraphSpec};
use gossip_rank::ranking::{CompletionScheme, PartialRanking, Permutation};
use gossip_rank::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "gossip-rank",
    version,
    about = "Decentralized rank aggregation by randomized gossip"
)]
struct Cli {
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (or file for `generate`/`graph`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Worker threads for trial-level parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a Mallows profile and save it (.soc, .soi or .csv by extension).
    Generate {
        #[arg(long, default_value_t = 151)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        phi: f64,
        /// Center ranking as comma-separated ranks; drawn from the seed if absent.
        #[arg(long)]
        center: Option<String>,
        /// Fraction of voters replaced by contamination.
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, default_value = "uniform-random", value_parser = ["uniform-random", "adversarial-reversed"])]
        contamination: String,
        /// Fraction of voters truncated to a random top-k list (k in 1..m-1).
        #[arg(long, default_value_t = 0.0)]
        partial: f64,
    },
    /// Build a topology and print its spectral gap.
    Graph {
        #[arg(long, default_value = "complete")]
        kind: String,
        /// Node count; may be omitted for a grid given `--rows` and `--cols`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ws_k: Option<usize>,
        #[arg(long)]
        ws_beta: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Run a convergence experiment from a config file.
    Run,
    /// Centralized robustness table under contamination.
    Robustness,
    /// Centralized consensus of a profile file.
    Consensus {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated rules: borda, copeland, footrule, kemeny.
        /// Defaults to all four, dropping footrule for partial ballots.
        #[arg(long)]
        method: Option<String>,
        /// Completion of partial ballots for Borda.
        #[arg(long)]
        completion: Option<CompletionScheme>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let format: OutputFormat = cli.format.parse()?;
    match &cli.command {
        Command::Generate {
            n,
            m,
            phi,
            center,
            epsilon,
            contamination,
            partial,
        } => {
            let out = cli
                .out
                .as_deref()
                .ok_or_else(|| Error::Config("generate needs --out <file>".into()))?;
            let profile = generate(
                *n,
                *m,
                *phi,
                center.as_deref(),
                *epsilon,
                contamination,
                *partial,
                cli.seed.unwrap_or(0),
            )?;
            profile.save(out)?;
            eprintln!(
                "wrote {} voters over {} items to {}",
                profile.n(),
                profile.m(),
                out.display()
            );
            Ok(())
        }
        Command::Graph {
            kind,
            n,
            ws_k,
            ws_beta,
            radius,
            rows,
            cols,
        } => {
            let spec = match GraphSpec::from_name(kind)? {
                GraphSpec::WattsStrogatz { beta, .. } => GraphSpec::WattsStrogatz {
                    k: *ws_k,
                    beta: ws_beta.unwrap_or(beta),
                },
                GraphSpec::Geometric { .. } => GraphSpec::Geometric { radius: *radius },
                GraphSpec::Grid { .. } => GraphSpec::Grid {
                    rows: *rows,
                    cols: *cols,
                },
                other => other,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0));
            let n = match (n, rows, cols) {
                (Some(n), _, _) => *n,
                (None, Some(r), Some(c)) => r * c,
                _ => return Err(Error::InvalidParameter("--n is required".into())),
            };
            let t = spec.generate(n, &mut rng)?;
            let info = spectral_info(&t, &edge_distribution(&t))?;
            let c = round10(info.c);
            match format {
                OutputFormat::Csv => {
                    println!("kind={}", spec.name());
                    println!("n={}", t.n());
                    println!("edges={}", t.edges().len());
                    println!("c={c:?}");
                    println!("lambda2={:?}", round10(info.lambda2));
                    println!("bipartite={}", info.bipartite);
                }
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "kind": spec.name(),
                        "n": t.n(),
                        "edges": t.edges().len(),
                        "c": c,
                        "lambda2": round10(info.lambda2),
                        "bipartite": info.bipartite,
                    })
                ),
            }
            if let Some(out) = &cli.out {
                std::fs::write(out, t.to_edge_list()).map_err(|e| Error::io(out, e))?;
            }
            Ok(())
        }
        Command::Run => {
            let cfg = load_config(&cli)?;
            let res = run_with_pool(cli.threads, || run_experiment(&cfg))?;
            let dir = output_dir(&cli, &cfg);
            write_outputs(&res, &dir, format)?;
            eprintln!(
                "{} trials x {} records written to {}",
                res.trials.len(),
                res.trials.first().map_or(0, |t| t.records.len()),
                dir.display()
            );
            Ok(())
        }
        Command::Robustness => {
            let cfg = load_config(&cli)?;
            let res = run_with_pool(cli.threads, || robustness_study(&cfg))?;
            print!("{}", format_table(&res));
            if cli.out.is_some() || cfg.experiment.output.is_some() {
                write_robustness(&res, &output_dir(&cli, &cfg), format == OutputFormat::Json)?;
            }
            Ok(())
        }
        Command::Consensus {
            input,
            method,
            completion,
        } => consensus(input, method.as_deref(), *completion, format),
    }
}

fn run_with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(f),
        None => f(),
    }
}

fn round10(x: f64) -> f64 {
    (x * 1e10).round() / 1e10
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.experiment.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output_dir(cli: &Cli, cfg: &ExperimentConfig) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| cfg.experiment.output.clone())
        .unwrap_or_else(|| PathBuf::from("results"))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    n: usize,
    m: usize,
    phi: f64,
    center: Option<&str>,
    epsilon: f64,
    contamination: &str,
    partial: f64,
    seed: u64,
) -> Result<PreferenceProfile> {
    if !(0.0..=1.0).contains(&partial) {
        return Err(Error::InvalidParameter(format!("--partial = {partial} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = match center {
        Some(text) => {
            let ranks = text
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidParameter(format!("bad rank `{s}` in --center")))
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::new(ranks)?
        }
        None => uniform_permutation(m, &mut rng),
    };
    if center.m() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: center.m(),
        });
    }
    let model = MallowsModel::new(center, phi)?;
    let mut profile = mallows_sample(&model, n, &mut rng)?;
    if epsilon > 0.0 {
        let kind = match contamination {
            "adversarial-reversed" => ContaminationKind::AdversarialReversed,
            _ => ContaminationKind::UniformRandom,
        };
        profile = contaminate(&profile, &ContaminationSpec::new(epsilon, kind, 0.5)?, &model, &mut rng)?;
    }
    if partial > 0.0 && m > 1 {
        for ballot in profile.voters_mut() {
            if rng.random::<f64>() < partial {
                let order = ballot
                    .as_complete()
                    .expect("sampled ballots are complete")
                    .to_ordering();
                let k = rng.random_range(1..m);
                *ballot = PartialRanking::from_top(m, &order.items()[..k])?.into();
            }
        }
    }
    Ok(profile.with_source(format!("mallows(m={m}, phi={phi}, seed={seed})")))
}

fn consensus(
    input: &Path,
    methods: Option<&str>,
    completion: Option<CompletionScheme>,
    format: OutputFormat,
) -> Result<()> {
    let profile = PreferenceProfile::load(input)?;
    let methods = methods.unwrap_or(if profile.complete().is_some() {
        "borda,copeland,footrule,kemeny"
    } else {
        "borda,copeland,kemeny"
    });
    let rules = methods
        .split(',')
        .map(|s| s.trim().parse::<Rule>())
        .collect::<Result<Vec<_>>>()?;
    let p = profile.pairwise()?;
    let report = check_transitivity(&p);
    let mut rows = Vec::new();
    for rule in rules {
        let res = match rule {
            Rule::Borda => borda_consensus_with(profile.voters(), effective_completion(profile.voters(), completion))?,
            Rule::Copeland => copeland_consensus(&p)?,
            Rule::Footrule => {
                let complete = profile
                    .complete()
                    .ok_or_else(|| Error::InvalidParameter("footrule needs complete rankings".into()))?;
                footrule_consensus(&complete)?
            }
            Rule::Kemeny => kemeny_bruteforce(&p, profile.n())?,
        };
        rows.push(res);
    }
    let label = |i: usize| profile.labels.get(i - 1).cloned().unwrap_or_else(|| i.to_string());
    match format {
        OutputFormat::Csv => {
            println!(
                "# n={} m={} transitivity={:?} half_ties={}",
                profile.n(),
                profile.m(),
                report.level,
                report.has_half_ties
            );
            println!("rule,ordering,objective");
            for r in &rows {
                let order: Vec<String> = r.ranking.to_ordering().items().iter().map(|&i| i.to_string()).collect();
                println!("{},{},{}", r.rule, order.join(" "), r.objective);
            }
        }
        OutputFormat::Json => {
            let out: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "rule": r.rule.name(),
                        "ranks": r.ranking.ranks(),
                        "ordering": r.ranking.to_ordering().items(),
                        "labels": r.ranking.to_ordering().items().iter().map(|&i| label(i)).collect::<Vec<_>>(),
                        "objective": r.objective,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&out).map_err(|e| Error::Config(e.to_string()))?
            );
        }
    }
    Ok(())
}
