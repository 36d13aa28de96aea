//! Flat key-value run configuration. One `key = value` per line, `#` starts
//! a comment anywhere, later assignments override earlier ones. Unknown keys
//! are errors so typos cannot silently fall back to defaults.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::objectives::{ExponentModel, WeightModel};
use crate::solver::balanced_alpha;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key = value, got {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {reason}")]
    InvalidValue { line: usize, key: &'static str, reason: String },
    #[error("missing required key {0:?}")]
    MissingKey(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    FastDrSub,
    FastDrSubPlus,
    DensityGreedy,
    BruteForce,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::FastDrSub => "fastdrsub",
            Algorithm::FastDrSubPlus => "fastdrsubplus",
            Algorithm::DensityGreedy => "density_greedy",
            Algorithm::BruteForce => "brute_force",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fastdrsub" => Ok(Algorithm::FastDrSub),
            "fastdrsubplus" => Ok(Algorithm::FastDrSubPlus),
            "density_greedy" => Ok(Algorithm::DensityGreedy),
            "brute_force" => Ok(Algorithm::BruteForce),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// `Zero` blanks the wall-time column so repeated runs emit byte-identical
/// CSV; everything else in a row is already deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingMode {
    Real,
    Zero,
}

impl FromStr for TimingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "real" => Ok(TimingMode::Real),
            "zero" => Ok(TimingMode::Zero),
            other => Err(format!("unknown timing mode {other:?}, expected real or zero")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ObjectiveSpec {
    Synthetic { n: usize, terms: usize },
    Revenue { dataset: PathBuf, weight_model: WeightModel, exponent_model: ExponentModel },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub objective: ObjectiveSpec,
    /// Budgets as fractions of the ground set; `k = ceil(fraction * n)`.
    pub k_fractions: Vec<f64>,
    pub alpha: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub out: Option<PathBuf>,
    pub timing: TimingMode,
    /// Sample count for the property checks.
    pub samples: u64,
    pub tolerance: f64,
    /// Lifts the size guard on exhaustive search.
    pub force_exact: bool,
}

const KNOWN_KEYS: [&str; 16] = [
    "objective",
    "dataset",
    "weight_model",
    "exponent_model",
    "synthetic_n",
    "synthetic_terms",
    "k_fractions",
    "alpha",
    "epsilon",
    "seed",
    "algorithms",
    "out",
    "timing",
    "samples",
    "tolerance",
    "force_exact",
];

struct RawConfig<'a> {
    entries: HashMap<&'a str, (usize, &'a str)>,
}

impl<'a> RawConfig<'a> {
    fn get(&self, key: &'static str) -> Option<(usize, &'a str)> {
        self.entries.get(key).copied()
    }

    fn parse<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, ConfigError>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some((line, value)) => value.parse::<T>().map(Some).map_err(|e| {
                ConfigError::InvalidValue { line, key, reason: format!("{value:?}: {e}") }
            }),
        }
    }

    fn parse_list<T: FromStr>(&self, key: &'static str) -> Result<Option<Vec<T>>, ConfigError>
    where
        T::Err: std::fmt::Display,
    {
        let Some((line, value)) = self.get(key) else { return Ok(None) };
        let mut items = Vec::new();
        for part in value.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(ConfigError::InvalidValue {
                    line,
                    key,
                    reason: format!("{value:?}: empty list entry"),
                });
            }
            items.push(part.parse::<T>().map_err(|e| ConfigError::InvalidValue {
                line,
                key,
                reason: format!("{part:?}: {e}"),
            })?);
        }
        Ok(Some(items))
    }
}

fn split_lines(text: &str) -> Result<RawConfig<'_>, ConfigError> {
    let mut entries = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::MalformedLine { line, found: content.to_string() });
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey { line, key: key.to_string() });
        }
        entries.insert(key, (line, value));
    }
    Ok(RawConfig { entries })
}

fn unit_interval(
    raw: &RawConfig<'_>,
    key: &'static str,
    default: f64,
) -> Result<f64, ConfigError> {
    let Some((line, value)) = raw.get(key) else { return Ok(default) };
    let parsed: f64 = value.parse().map_err(|e| ConfigError::InvalidValue {
        line,
        key,
        reason: format!("{value:?}: {e}"),
    })?;
    if parsed > 0.0 && parsed < 1.0 {
        Ok(parsed)
    } else {
        Err(ConfigError::InvalidValue {
            line,
            key,
            reason: format!("{parsed} outside the open interval (0, 1)"),
        })
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = split_lines(text)?;

    let objective = match raw.get("objective") {
        None => return Err(ConfigError::MissingKey("objective")),
        Some((line, "synthetic")) => {
            let n = raw.parse::<usize>("synthetic_n")?.unwrap_or(50);
            let terms = raw.parse::<usize>("synthetic_terms")?.unwrap_or(8);
            if n == 0 {
                let (line, _) = raw.get("synthetic_n").unwrap_or((line, ""));
                return Err(ConfigError::InvalidValue {
                    line,
                    key: "synthetic_n",
                    reason: "ground set must be non-empty".into(),
                });
            }
            if terms == 0 {
                let (line, _) = raw.get("synthetic_terms").unwrap_or((line, ""));
                return Err(ConfigError::InvalidValue {
                    line,
                    key: "synthetic_terms",
                    reason: "need at least one term".into(),
                });
            }
            ObjectiveSpec::Synthetic { n, terms }
        }
        Some((_, "revenue")) => {
            let Some((_, dataset)) = raw.get("dataset") else {
                return Err(ConfigError::MissingKey("dataset"));
            };
            let weight_model = raw
                .parse::<WeightModel>("weight_model")?
                .unwrap_or(WeightModel::Uniform01);
            let exponent_model = raw
                .parse::<ExponentModel>("exponent_model")?
                .unwrap_or(ExponentModel::Uniform01);
            ObjectiveSpec::Revenue { dataset: PathBuf::from(dataset), weight_model, exponent_model }
        }
        Some((line, other)) => {
            return Err(ConfigError::InvalidValue {
                line,
                key: "objective",
                reason: format!("{other:?}, expected synthetic or revenue"),
            });
        }
    };

    let k_fractions = match raw.parse_list::<f64>("k_fractions")? {
        None => vec![0.05, 0.1, 0.15, 0.2, 0.25],
        Some(fractions) => {
            let (line, _) = raw.get("k_fractions").unwrap();
            for &fr in &fractions {
                if !(fr > 0.0 && fr <= 1.0) {
                    return Err(ConfigError::InvalidValue {
                        line,
                        key: "k_fractions",
                        reason: format!("{fr} outside (0, 1]"),
                    });
                }
            }
            fractions
        }
    };

    let algorithms = raw
        .parse_list::<Algorithm>("algorithms")?
        .unwrap_or_else(|| vec![Algorithm::FastDrSub, Algorithm::FastDrSubPlus]);

    let tolerance = match raw.parse::<f64>("tolerance")? {
        None => 1e-9,
        Some(t) if t >= 0.0 => t,
        Some(t) => {
            let (line, _) = raw.get("tolerance").unwrap();
            return Err(ConfigError::InvalidValue {
                line,
                key: "tolerance",
                reason: format!("{t} is negative"),
            });
        }
    };

    let samples = match raw.parse::<u64>("samples")? {
        None => 10_000,
        Some(0) => {
            let (line, _) = raw.get("samples").unwrap();
            return Err(ConfigError::InvalidValue {
                line,
                key: "samples",
                reason: "need at least one sample".into(),
            });
        }
        Some(s) => s,
    };

    Ok(RunConfig {
        objective,
        k_fractions,
        alpha: unit_interval(&raw, "alpha", balanced_alpha())?,
        epsilon: unit_interval(&raw, "epsilon", 0.1)?,
        seed: raw.parse::<u64>("seed")?.unwrap_or(0),
        algorithms,
        out: raw.get("out").map(|(_, v)| PathBuf::from(v)),
        timing: raw.parse::<TimingMode>("timing")?.unwrap_or(TimingMode::Real),
        samples,
        tolerance,
        force_exact: raw.parse::<bool>("force_exact")?.unwrap_or(false),
    })
}
