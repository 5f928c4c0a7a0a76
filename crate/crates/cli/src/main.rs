//! `sausage`: run percolation experiments from TOML configurations.
//!
//! Every experiment writes `<out_dir>/<id>.csv` and `<out_dir>/<id>.json`.
//! Exit codes: 0 success, 1 invalid input, 2 a statistical or certificate
//! check failed, 3 internal or I/O failure.

mod commands;
mod config;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::commands::Ctx;
use crate::config::{parse_assignment, ExperimentConfig};
use crate::output::{artifact, write_atomic, RngInfo, RunRecord, Timing, Version, CSV_FORMAT};
use crate::plot::PlotKind;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Check(String),
    Io(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Check(_) => 2,
            CliError::Io(_) | CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid input: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<sausage::Error> for CliError {
    fn from(e: sausage::Error) -> Self {
        use sausage::Error::*;
        match e {
            InvalidParameter(_) | InvalidDimension { .. } => CliError::Config(e.to_string()),
            UnbracketedTarget { .. } => CliError::Check(e.to_string()),
            EmptyLabelPath | NumericFailure(_) => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "sausage", version, about = "Percolation experiments for Wiener sausages and Boolean models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// TOML experiment configuration.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set model.t=0.4`.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    set: Vec<(String, String)>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replicas: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    experiment_id: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing probability of one configuration.
    Cross(Common),
    /// Bisection for the parameter at which the crossing probability hits a target.
    Threshold(Common),
    /// Crossing probabilities over a parameter grid.
    Sweep(Common),
    /// Coarse-grained edge and site-occupancy frequencies.
    Edges(Common),
    /// Path intersection probability against starting distance.
    Mono(Common),
    /// Scale-invariance test of the crossing probability.
    Scale(Common),
    /// Frequency of several annulus-spanning clusters.
    Unique(Common),
    /// Slab projection intensities and counts.
    Slab(Common),
    /// Multiscale certificate for the subcritical phase.
    Certify(Common),
    /// Counting-lemma instance check or exhaustive search.
    Counting(Common),
    /// Derived CSV from a run record.
    Plot(PlotArgs),
    /// Re-runs an experiment from its JSON record.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct PlotArgs {
    #[arg(value_enum)]
    kind: PlotKind,
    /// JSON record of a previous run.
    record: PathBuf,
    /// Replica drawn by `snapshot`.
    #[arg(long, default_value_t = 0)]
    replica: u64,
    /// Output file (default `<record dir>/<id>.<kind>.csv`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    record: PathBuf,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn resolve(common: &Common) -> Result<ExperimentConfig, CliError> {
    let mut overrides = common.set.clone();
    let quoted = |s: &str| toml::Value::String(s.to_owned()).to_string();
    if let Some(s) = common.seed {
        overrides.push(("seed".into(), s.to_string()));
    }
    if let Some(r) = common.replicas {
        overrides.push(("replicas".into(), r.to_string()));
    }
    if let Some(d) = &common.out_dir {
        overrides.push(("out_dir".into(), quoted(&d.to_string_lossy())));
    }
    if let Some(id) = &common.experiment_id {
        overrides.push(("experiment_id".into(), quoted(id)));
    }
    config::load(common.config.as_deref(), &overrides)
}

/// Runs `name` and writes its CSV and JSON record; returns whether its checks passed.
fn run_experiment(name: &str, cfg: ExperimentConfig) -> Result<bool, CliError> {
    cfg.validate()?;
    let hash = cfg.hash();
    let id = cfg.experiment_id.clone().unwrap_or_else(|| format!("{name}-{}", &hash[..8]));
    let ctx = Ctx {
        cfg: &cfg,
        id: &id,
        hash: &hash,
    };
    let started = Instant::now();
    let out = match name {
        "cross" => commands::cross(&ctx),
        "threshold" => commands::threshold(&ctx),
        "sweep" => commands::sweep(&ctx),
        "edges" => commands::edges(&ctx),
        "mono" => commands::mono(&ctx),
        "scale" => commands::scale(&ctx),
        "unique" => commands::unique(&ctx),
        "slab" => commands::slab(&ctx),
        "certify" => commands::certify(&ctx),
        "counting" => commands::counting(&ctx),
        other => Err(CliError::Config(format!("unknown command `{other}`"))),
    }?;
    let record = RunRecord {
        version: Version {
            toolkit: env!("CARGO_PKG_VERSION").into(),
            csv_format: CSV_FORMAT,
        },
        experiment_id: id.clone(),
        command: name.into(),
        config: cfg.clone(),
        config_hash: hash.clone(),
        results: out.results,
        timing: Timing {
            wall_seconds: started.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
        },
        rng: RngInfo {
            algorithm: sausage::stochastic::RNG_ALGORITHM.into(),
            master_seed: cfg.seed,
            streams: out.streams.into(),
        },
        status: if out.passed { "ok" } else { "check_failed" }.into(),
    };
    let json = serde_json::to_vec_pretty(&record).map_err(|e| CliError::Internal(e.to_string()))?;
    let csv_path = artifact(&cfg.out_dir, &id, "csv");
    let json_path = artifact(&cfg.out_dir, &id, "json");
    write_atomic(&csv_path, &out.csv)?;
    write_atomic(&json_path, &json)?;
    println!("{} {}: {}", name, id, record.status);
    println!("  {}", csv_path.display());
    println!("  {}", json_path.display());
    Ok(out.passed)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("SAUSAGE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Config(format!("SAUSAGE_THREADS must be a positive integer (got `{v}`)")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let (name, common) = match cli.command {
        Command::Plot(p) => {
            let path = plot::plot(p.kind, &p.record, p.replica, p.out.as_deref())?;
            println!("{}", path.display());
            return Ok(true);
        }
        Command::Replay(r) => {
            let record = RunRecord::read(&r.record)?;
            let mut cfg = record.config;
            if let Some(d) = r.out_dir {
                cfg.out_dir = d;
            }
            return run_experiment(&record.command, cfg);
        }
        Command::Cross(c) => ("cross", c),
        Command::Threshold(c) => ("threshold", c),
        Command::Sweep(c) => ("sweep", c),
        Command::Edges(c) => ("edges", c),
        Command::Mono(c) => ("mono", c),
        Command::Scale(c) => ("scale", c),
        Command::Unique(c) => ("unique", c),
        Command::Slab(c) => ("slab", c),
        Command::Certify(c) => ("certify", c),
        Command::Counting(c) => ("counting", c),
    };
    run_experiment(name, resolve(&common)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("check failed; see the JSON record");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("sausage: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
