//! Experiment configuration: a TOML file plus `--set key=value` overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sausage::models::{window_margin, ModelConfig, ModelKind};
use sausage::stochastic::RadiusDistribution;

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment_id: Option<String>,
    pub seed: u64,
    pub replicas: u64,
    pub level: f64,
    pub out_dir: PathBuf,
    pub model: ModelSection,
    pub threshold: ThresholdSection,
    pub sweep: SweepSection,
    pub edges: EdgesSection,
    pub mono: MonoSection,
    pub scale: ScaleSection,
    pub unique: UniqueSection,
    pub slab: SlabSection,
    pub certify: CertifySection,
    pub counting: CountingSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment_id: None,
            seed: 1,
            replicas: 400,
            level: 0.99,
            out_dir: PathBuf::from("out"),
            model: ModelSection::default(),
            threshold: ThresholdSection::default(),
            sweep: SweepSection::default(),
            edges: EdgesSection::default(),
            mono: MonoSection::default(),
            scale: ScaleSection::default(),
            unique: UniqueSection::default(),
            slab: SlabSection::default(),
            certify: CertifySection::default(),
            counting: CountingSection::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    #[default]
    Sausage,
    Boolean,
    /// Noise-free response `1{param > step_threshold}`, for checking the bisection.
    Step,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    pub kind: Kind,
    pub d: usize,
    pub lambda: f64,
    pub t: f64,
    pub r: f64,
    pub step: f64,
    /// Box `N x 3N x ... x 3N` unless `extents` is given.
    pub n: f64,
    pub extents: Option<Vec<f64>>,
    /// Per-side window margin; computed from `delta_err` when absent.
    pub margin: Option<f64>,
    pub delta_err: f64,
    pub tol: Option<f64>,
    pub radius: Option<RadiusDistribution>,
    pub step_threshold: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection {
            kind: Kind::Sausage,
            d: 2,
            lambda: 1.0,
            t: 1.0,
            r: 0.0,
            step: 0.01,
            n: 10.0,
            extents: None,
            margin: None,
            delta_err: 1e-3,
            tol: None,
            radius: None,
            step_threshold: 1.0,
        }
    }
}

impl ModelSection {
    /// Model configuration; an automatic margin is sized for time `t_margin`.
    pub fn model_config(&self, seed: u64, t_margin: f64) -> Result<ModelConfig, CliError> {
        let mut c = ModelConfig::standard(self.d, self.lambda, self.t, self.r, self.step, self.n, seed);
        if let Some(e) = &self.extents {
            c.extents = e.clone();
        }
        c.tol = self.tol;
        c.model = match self.kind {
            Kind::Sausage => ModelKind::Sausage,
            Kind::Boolean => ModelKind::Boolean {
                radius: self
                    .radius
                    .clone()
                    .ok_or_else(|| CliError::Config("model.radius is required for kind = \"boolean\"".into()))?,
            },
            Kind::Step => return Err(CliError::Config("the step fixture only drives `threshold`".into())),
        };
        c.validate()?;
        c.margin = match self.margin {
            Some(m) => m,
            None => {
                let mut at = c.clone();
                at.t = t_margin.max(c.t);
                window_margin(&c.extents, &at.reach_distribution(), self.delta_err, c.d)?
            }
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    #[default]
    T,
    Lambda,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ThresholdSection {
    pub axis: AxisName,
    pub lo: f64,
    pub hi: f64,
    pub target: f64,
    pub max_iters: usize,
    pub budget_factor: u64,
}

impl Default for ThresholdSection {
    fn default() -> Self {
        ThresholdSection {
            axis: AxisName::T,
            lo: 0.1,
            hi: 1.0,
            target: 0.5,
            max_iters: 20,
            budget_factor: 8,
        }
    }
}

/// Grid axes; an empty list means the model value.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub lambda: Vec<f64>,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub n: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EdgesSection {
    /// `(R, t)` pairs.
    pub cells: Vec<(f64, f64)>,
    pub tol: Option<f64>,
}

impl Default for EdgesSection {
    fn default() -> Self {
        EdgesSection {
            cells: vec![(1.0, 1.0), (2.0, 4.0), (4.0, 16.0)],
            tol: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MonoSection {
    pub separations: Vec<f64>,
    pub times: Vec<f64>,
    pub tol: Option<f64>,
}

impl Default for MonoSection {
    fn default() -> Self {
        MonoSection {
            separations: vec![1.0, 2.0, 4.0],
            times: vec![10.0],
            tol: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScaleSection {
    pub eta: f64,
    pub shared_seeds: bool,
}

impl Default for ScaleSection {
    fn default() -> Self {
        ScaleSection {
            eta: 4.0,
            shared_seeds: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UniqueSection {
    pub r_in: f64,
    pub ratios: Vec<f64>,
}

impl Default for UniqueSection {
    fn default() -> Self {
        UniqueSection {
            r_in: 2.0,
            ratios: vec![2.0, 4.0, 8.0],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SlabSection {
    /// Side of the `(d-1)`-dimensional cube window on the hyperplane.
    pub length: f64,
    pub k_max: Option<usize>,
    /// Cells per side for the Poisson goodness-of-fit.
    pub cells: usize,
}

impl Default for SlabSection {
    fn default() -> Self {
        SlabSection {
            length: 10.0,
            k_max: None,
            cells: 10,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    #[default]
    Exact,
    F64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CertifySection {
    pub d: usize,
    pub big_r: u64,
    /// Base scale; `2 R^{4(d-1)+1}` when absent.
    pub l0: Option<u64>,
    pub n: u64,
    pub lambda: f64,
    pub tail_c: f64,
    pub tail_r0: f64,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c4: Option<f64>,
    /// Rational such as `"1/64"`; `1 / L0` when absent.
    pub a0: Option<String>,
    pub depth: usize,
    pub arithmetic: Arithmetic,
    /// Upper confidence bound of a measured crossing probability.
    pub ci_hi: Option<f64>,
    /// Window margin for the boundary tail bound.
    pub margin: Option<i64>,
}

impl Default for CertifySection {
    fn default() -> Self {
        CertifySection {
            d: 2,
            big_r: 2,
            l0: None,
            n: 1,
            lambda: 1.0,
            tail_c: 1.0,
            tail_r0: 1.0,
            c1: None,
            c2: None,
            c3: None,
            c4: None,
            a0: None,
            depth: sausage::certificate::DEFAULT_DEPTH,
            arithmetic: Arithmetic::Exact,
            ci_hi: None,
            margin: None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CountingSection {
    /// JSON instance file.
    pub instance: Option<PathBuf>,
    /// Exhaustive check over all instances up to this size instead.
    pub enumerate: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.replicas == 0 {
            return Err(CliError::Config("replicas must be >= 1".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(CliError::Config(format!("level must lie in (0, 1) (got {})", self.level)));
        }
        if !(self.model.delta_err > 0.0 && self.model.delta_err < 1.0) {
            return Err(CliError::Config("model.delta_err must lie in (0, 1)".into()));
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the resolved configuration,
    /// ignoring `out_dir`.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out_dir = PathBuf::new();
        let json = serde_json::to_string(&c).expect("configuration serializes");
        Sha256::digest(json.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Reads `path` (or starts from defaults) and applies overrides in order.
pub fn load(path: Option<&Path>, overrides: &[(String, String)]) -> Result<ExperimentConfig, CliError> {
    let mut table = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            text.parse::<toml::Table>().map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => toml::Table::new(),
    };
    for (key, value) in overrides {
        set_path(&mut table, key, parse_value(value))?;
    }
    toml::Value::Table(table)
        .try_into::<ExperimentConfig>()
        .map_err(|e| CliError::Config(e.to_string()))
}

/// TOML literal when it parses as one, otherwise a bare string.
fn parse_value(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_owned()))
}

fn set_path(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<(), CliError> {
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("malformed key `{key}`")));
    }
    let mut cur = table;
    for part in &parts[..parts.len() - 1] {
        let entry = cur
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("`{part}` in `{key}` is not a table")))?;
    }
    cur.insert(parts[parts.len() - 1].to_owned(), value);
    Ok(())
}

pub fn parse_assignment(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    Ok((k.trim().to_owned(), v.trim().to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_reach_nested_keys() {
        let c = load(None, &[("model.t".into(), "0.5".into()), ("seed".into(), "9".into())]).unwrap();
        assert_eq!(c.model.t, 0.5);
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(load(None, &[("model.tee".into(), "0.5".into())]).is_err());
        assert!(load(None, &[("bogus".into(), "1".into())]).is_err());
    }

    #[test]
    fn bare_words_become_strings() {
        let c = load(None, &[("model.kind".into(), "boolean".into())]).unwrap();
        assert_eq!(c.model.kind, Kind::Boolean);
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.out_dir = "elsewhere".into();
        assert_eq!(a.hash(), b.hash());
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
    }
}
