//! `key = value` run configuration.
//!
//! ```text
//! # comment
//! mass = 1
//! grid.dim = 1
//! grid.n = 512            # one value, or one per axis
//! grid.length = 200
//! packet.center = 100     # optional, defaults to the box centre
//! packet.sigma = 5
//! packet.k0 = 0.3         # optional, defaults to 0
//! packet.init = positive-energy-eigenmode
//! times = 0, 1, 5, 20
//! model = two-component   # two-component | kg-oracle | schrodinger | expansion-N | expansion
//! truncation = 2          # order for a bare `expansion`
//! out = snapshots
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use kemmer::{GridSpec, InitMode, Model, WavePacketSpec};
use thiserror::Error;

pub const KEYS: [&str; 12] = [
    "mass",
    "grid.dim",
    "grid.n",
    "grid.length",
    "packet.center",
    "packet.sigma",
    "packet.k0",
    "packet.init",
    "times",
    "model",
    "truncation",
    "out",
];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown config keys: {}", .0.join(", "))]
    UnknownKeys(Vec<String>),
    #[error("missing config keys: {}", .0.join(", "))]
    MissingKeys(Vec<String>),
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("duplicate config key '{0}'")]
    Duplicate(String),
    #[error("bad value for '{key}': {reason}")]
    BadValue { key: String, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub grid: GridSpec,
    pub packet: WavePacketSpec,
    pub times: Vec<f64>,
    pub model: Model,
    pub out: Option<PathBuf>,
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn parse_f64(key: &str, raw: &str) -> Result<f64, ConfigError> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| bad(key, format!("'{raw}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(key, "must be finite"))
    }
}

fn parse_list(key: &str, raw: &str) -> Result<Vec<f64>, ConfigError> {
    raw.split(',').map(|s| parse_f64(key, s)).collect()
}

fn parse_usize(key: &str, raw: &str) -> Result<usize, ConfigError> {
    raw.trim()
        .parse()
        .map_err(|_| bad(key, format!("'{raw}' is not a non-negative integer")))
}

/// One value per axis; a single value is broadcast.
fn per_axis<T: Clone>(key: &str, values: Vec<T>, dim: usize) -> Result<Vec<T>, ConfigError> {
    match values.len() {
        1 => Ok(vec![values[0].clone(); dim]),
        n if n == dim => Ok(values),
        n => Err(bad(key, format!("expected 1 or {dim} values, got {n}"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            let key = key.trim().to_string();
            if raw.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(ConfigError::Duplicate(key));
            }
        }

        let unknown: Vec<String> = raw
            .keys()
            .filter(|k| !KEYS.contains(&k.as_str()))
            .cloned()
            .collect();
        if !unknown.is_empty() {
            return Err(ConfigError::UnknownKeys(unknown));
        }
        let missing: Vec<String> = ["mass", "grid.n", "grid.length", "packet.sigma", "times"]
            .iter()
            .filter(|k| !raw.contains_key(**k))
            .map(|k| k.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(ConfigError::MissingKeys(missing));
        }

        let mass = parse_f64("mass", &raw["mass"])?;
        if mass <= 0.0 {
            return Err(bad("mass", "must be positive"));
        }

        let n_list: Vec<usize> = raw["grid.n"]
            .split(',')
            .map(|s| parse_usize("grid.n", s))
            .collect::<Result<_, _>>()?;
        let l_list = parse_list("grid.length", &raw["grid.length"])?;
        let dim = match raw.get("grid.dim") {
            Some(d) => parse_usize("grid.dim", d)?,
            None => n_list.len().max(l_list.len()),
        };
        if !(1..=3).contains(&dim) {
            return Err(bad("grid.dim", "must be 1, 2 or 3"));
        }
        let grid = GridSpec::new(
            per_axis("grid.n", n_list, dim)?,
            per_axis("grid.length", l_list, dim)?,
        )
        .map_err(|e| bad("grid", e.to_string()))?;

        let center = match raw.get("packet.center") {
            Some(v) => per_axis("packet.center", parse_list("packet.center", v)?, dim)?,
            None => grid.lengths().iter().map(|l| 0.5 * l).collect(),
        };
        let carrier = match raw.get("packet.k0") {
            Some(v) => per_axis("packet.k0", parse_list("packet.k0", v)?, dim)?,
            None => vec![0.0; dim],
        };
        let sigma = parse_f64("packet.sigma", &raw["packet.sigma"])?;
        if sigma <= 0.0 {
            return Err(bad("packet.sigma", "must be positive"));
        }
        let init = match raw.get("packet.init") {
            Some(v) => v
                .parse::<InitMode>()
                .map_err(|e| bad("packet.init", e.to_string()))?,
            None => InitMode::default(),
        };

        let times = parse_list("times", &raw["times"])?;
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("times", "must be strictly increasing"));
        }

        let truncation = raw
            .get("truncation")
            .map(|v| parse_usize("truncation", v))
            .transpose()?;
        let model = match raw.get("model") {
            Some(name) => Model::parse_with_truncation(name, truncation)
                .map_err(|e| bad("model", e.to_string()))?,
            None => Model::TwoComponent,
        };

        Ok(RunConfig {
            mass,
            grid,
            packet: WavePacketSpec {
                center,
                sigma,
                carrier,
                init,
            },
            times,
            model,
            out: raw.get("out").map(PathBuf::from),
        })
    }
}
