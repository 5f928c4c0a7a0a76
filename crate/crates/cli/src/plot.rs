//! CSV views of run records: sample snapshots, probability curves and bisection traces.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use sausage::models::{sample_occupied_set, ModelConfig};

use crate::commands::cell_stream;
use crate::config::Kind;
use crate::output::{csv_bytes, write_atomic, RunRecord};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// Chains of one replica of cell 0.
    Snapshot,
    /// Estimate against the swept or bisected parameter.
    Pcurve,
    /// Steps of a threshold bisection.
    BracketTrace,
}

impl PlotKind {
    fn suffix(self) -> &'static str {
        match self {
            PlotKind::Snapshot => "snapshot",
            PlotKind::Pcurve => "pcurve",
            PlotKind::BracketTrace => "bracket-trace",
        }
    }
}

pub fn plot(kind: PlotKind, record_path: &Path, replica: u64, out: Option<&Path>) -> Result<PathBuf, CliError> {
    let record = RunRecord::read(record_path)?;
    let bytes = match kind {
        PlotKind::Snapshot => snapshot(&record, replica)?,
        PlotKind::Pcurve => pcurve(&record)?,
        PlotKind::BracketTrace => bracket_trace(&record)?,
    };
    let path = match out {
        Some(p) => p.to_path_buf(),
        None => record_path
            .parent()
            .unwrap_or(Path::new("."))
            .join(format!("{}.{}.csv", record.experiment_id, kind.suffix())),
    };
    write_atomic(&path, &bytes)?;
    Ok(path)
}

/// The model the record ran, as stored in its results, else rebuilt from its configuration.
fn recorded_model(record: &RunRecord) -> Result<ModelConfig, CliError> {
    for key in ["model", "template"] {
        if let Some(v) = record.results.get(key).filter(|v| !v.is_null()) {
            return serde_json::from_value(v.clone()).map_err(|e| CliError::Config(format!("results.{key}: {e}")));
        }
    }
    let cfg = &record.config;
    if cfg.model.kind == Kind::Step || !matches!(record.command.as_str(), "cross" | "sweep" | "scale" | "unique" | "threshold") {
        return Err(CliError::Config(format!("a `{}` record has no occupied set to draw", record.command)));
    }
    cfg.model.model_config(cfg.seed, cfg.model.t)
}

fn snapshot(record: &RunRecord, replica: u64) -> Result<Vec<u8>, CliError> {
    let c = recorded_model(record)?;
    let stream = cell_stream(record.config.seed, 0).child("replica", replica);
    let sample = sample_occupied_set::<f64>(&c, &stream)?;
    let mut header = vec!["chain".to_string(), "radius".to_string(), "vertex".to_string()];
    header.extend((1..=c.d).map(|i| format!("x{i}")));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
    for ch in &sample.chains {
        for (v, p) in ch.path.positions().enumerate() {
            let mut row = vec![ch.id.to_string(), ch.radius.to_string(), v.to_string()];
            row.extend(p.iter().map(|x| x.to_string()));
            w.write_record(&row).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Serialize)]
struct CurveRow {
    param: f64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
    replicas: u64,
    seed: u64,
}

fn field(v: &Value, key: &str) -> Result<f64, CliError> {
    v.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| CliError::Config(format!("curve point lacks numeric `{key}`")))
}

fn pcurve(record: &RunRecord) -> Result<Vec<u8>, CliError> {
    let curve = record
        .results
        .get("curve")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Config(format!("a `{}` record has no probability curve", record.command)))?;
    let mut rows = Vec::new();
    for p in curve {
        rows.push(CurveRow {
            param: field(p, "param")?,
            p_hat: field(p, "p_hat")?,
            ci_lo: field(p, "ci_lo")?,
            ci_hi: field(p, "ci_hi")?,
            replicas: field(p, "replicas")? as u64,
            seed: record.config.seed,
        });
    }
    csv_bytes(&["param", "p_hat", "ci_lo", "ci_hi", "replicas", "seed"], &rows)
}

#[derive(Serialize)]
struct TraceRow {
    step: usize,
    param: f64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
    replicas: u64,
    side: String,
}

fn bracket_trace(record: &RunRecord) -> Result<Vec<u8>, CliError> {
    let history = record
        .results
        .pointer("/bracket/history")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Config(format!("a `{}` record has no bisection trace", record.command)))?;
    let mut rows = Vec::new();
    for (i, s) in history.iter().enumerate() {
        let e = s.get("estimate").ok_or_else(|| CliError::Config("trace step lacks an estimate".into()))?;
        rows.push(TraceRow {
            step: i,
            param: field(s, "param")?,
            p_hat: field(e, "p_hat")?,
            ci_lo: field(e, "ci_lo")?,
            ci_hi: field(e, "ci_hi")?,
            replicas: field(e, "replicas")? as u64,
            side: s.get("side").and_then(Value::as_str).unwrap_or("").to_owned(),
        });
    }
    csv_bytes(&["step", "param", "p_hat", "ci_lo", "ci_hi", "replicas", "side"], &rows)
}
