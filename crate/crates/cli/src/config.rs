//! Suite configuration: defaults, `key = value` files, flag overrides and
//! validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("bad value for `{key}`: {reason}")]
    Value { key: String, reason: String },
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Value { key: key.into(), reason: reason.into() }
}

/// Registered suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum SuiteName {
    Kernels,
    Operators,
    HeckeBochner,
    Prop31,
    PolarIdentity,
    FiveTerm,
    Decay,
    ApWeights,
    NormRatios,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Kernels,
        SuiteName::Operators,
        SuiteName::HeckeBochner,
        SuiteName::Prop31,
        SuiteName::PolarIdentity,
        SuiteName::FiveTerm,
        SuiteName::Decay,
        SuiteName::ApWeights,
        SuiteName::NormRatios,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Kernels => "kernels",
            SuiteName::Operators => "operators",
            SuiteName::HeckeBochner => "hecke-bochner",
            SuiteName::Prop31 => "prop31",
            SuiteName::PolarIdentity => "polar-identity",
            SuiteName::FiveTerm => "five-term",
            SuiteName::Decay => "decay",
            SuiteName::ApWeights => "ap-weights",
            SuiteName::NormRatios => "norm-ratios",
            SuiteName::All => "all",
        }
    }

    /// Dimensions accepted by `--dim`; empty when the flag is meaningless.
    pub fn dims(self) -> &'static [usize] {
        match self {
            SuiteName::Kernels => &[1, 2],
            SuiteName::Operators => &[1, 2, 3],
            SuiteName::HeckeBochner => &[2, 3, 4],
            SuiteName::Prop31 => &[1, 2],
            SuiteName::PolarIdentity => &[2, 3],
            SuiteName::FiveTerm => &[1, 2],
            SuiteName::Decay => &[2, 3],
            SuiteName::ApWeights => &[2, 3, 4],
            SuiteName::NormRatios => &[2, 3, 4],
            SuiteName::All => &[],
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Fully resolved configuration of one suite invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    /// Restricts the suite to one dimension.
    pub dim: Option<usize>,
    /// Replaces the tolerance of every identity check.
    pub tol: Option<f64>,
    pub seed: u64,
    /// Exponents for the norm-ratio probes.
    pub p: Vec<f64>,
    /// Power-weight exponents; per-operator defaults inside the admissible range when absent.
    pub weight_gamma: Option<Vec<f64>>,
    /// Random inputs per norm-ratio probe.
    pub trials: usize,
    /// Coarse sample count of the decay probes (the fine run uses four times as many).
    pub samples: usize,
    /// Random (s, t) pairs in the Hörmander-type integrals.
    pub pairs: usize,
    /// Largest total bidegree m + n in the gradient identities.
    pub max_bidegree: u32,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// Upper limits keeping each suite within desk-scale run times.
pub const MAX_TRIALS: usize = 2000;
pub const MAX_SAMPLES: usize = 20_000;
pub const MAX_PAIRS: usize = 200;
pub const MAX_BIDEGREE: u32 = 4;

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> Self {
        Self {
            suite,
            dim: None,
            tol: None,
            seed: 0,
            p: vec![1.5, 2.0, 3.0],
            weight_gamma: None,
            trials: 200,
            samples: 250,
            pairs: 8,
            max_bidegree: MAX_BIDEGREE,
            out: None,
            format: Format::Json,
        }
    }

    /// Applies `key = value` pairs; later calls override earlier ones.
    pub fn apply(&mut self, pairs: &Overrides) -> Result<(), ConfigError> {
        for (key, value) in &pairs.0 {
            self.set(key, value)?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "dim" => self.dim = Some(parse(key, value)?),
            "tol" => self.tol = Some(parse(key, value)?),
            "seed" => self.seed = parse(key, value)?,
            "p" => self.p = parse_list(key, value)?,
            "weight_gamma" => self.weight_gamma = Some(parse_list(key, value)?),
            "trials" => self.trials = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "pairs" => self.pairs = parse(key, value)?,
            "max_bidegree" => self.max_bidegree = parse(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => {
                self.format = Format::from_str(value, true).map_err(|_| bad(key, "expected json or csv"))?;
            }
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Checks every field; no computation starts before this succeeds.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(d) = self.dim {
            let allowed = self.suite.dims();
            if !allowed.contains(&d) {
                return Err(bad("dim", format!("suite {} accepts {:?}, got {d}", self.suite, allowed)));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(bad("tol", "must be positive and finite"));
            }
        }
        if self.p.is_empty() {
            return Err(bad("p", "at least one exponent is needed"));
        }
        if let Some(p) = self.p.iter().find(|p| !(**p > 1.0 && p.is_finite())) {
            return Err(bad("p", format!("exponents must lie in (1, ∞), got {p}")));
        }
        if let Some(g) = &self.weight_gamma {
            if g.is_empty() {
                return Err(bad("weight_gamma", "at least one exponent is needed"));
            }
            if g.iter().any(|v| !v.is_finite()) {
                return Err(bad("weight_gamma", "exponents must be finite"));
            }
        }
        if !(1..=MAX_TRIALS).contains(&self.trials) {
            return Err(bad("trials", format!("must lie in 1..={MAX_TRIALS}")));
        }
        if !(10..=MAX_SAMPLES).contains(&self.samples) {
            return Err(bad("samples", format!("must lie in 10..={MAX_SAMPLES}")));
        }
        if !(1..=MAX_PAIRS).contains(&self.pairs) {
            return Err(bad("pairs", format!("must lie in 1..={MAX_PAIRS}")));
        }
        if self.max_bidegree > MAX_BIDEGREE {
            return Err(bad("max_bidegree", format!("must be at most {MAX_BIDEGREE}")));
        }
        if matches!(self.suite, SuiteName::NormRatios | SuiteName::All) {
            if let Some((op, p, g)) = crate::suites::inadmissible(self, self.dim.unwrap_or(3)) {
                return Err(bad("weight_gamma", format!("γ = {g} is outside the admissible range of {} at p = {p}", op.tag())));
            }
        }
        Ok(())
    }
}

/// Ordered `key = value` pairs from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides(pub Vec<(String, String)>);

impl Overrides {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut seen = BTreeMap::new();
        let mut out = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (k, v) = (k.trim().replace('-', "_"), v.trim());
            if k.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1 });
            }
            if seen.insert(k.clone(), ()).is_some() {
                return Err(ConfigError::Duplicate(k));
            }
            out.push(&k, v);
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })?;
        Self::parse(&text)
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.trim().parse().map_err(|e: T::Err| bad(key, format!("`{value}`: {e}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    value.split(',').map(|v| parse(key, v)).collect()
}
