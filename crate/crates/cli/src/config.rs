//! Experiment configuration: a flat TOML file merged with command-line
//! overrides. Flags win over file values; anything left unset takes the
//! experiment's default.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ouflow::observables::{default_regulator, stationary_tau};
use ouflow::OUParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed config file {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("missing required field `{0}` (give it as a flag or in the config file)")]
    Missing(&'static str),
    #[error("invalid value for `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    GueSemicircle,
    GinibreDisc,
    OverlapLaw,
    EdgeErfc,
    AcpVerify,
    QdetVerify,
    DysonTrajectories,
    TwoByTwo,
    PdeResiduals,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 9] = [
        ExperimentId::GueSemicircle,
        ExperimentId::GinibreDisc,
        ExperimentId::OverlapLaw,
        ExperimentId::EdgeErfc,
        ExperimentId::AcpVerify,
        ExperimentId::QdetVerify,
        ExperimentId::DysonTrajectories,
        ExperimentId::TwoByTwo,
        ExperimentId::PdeResiduals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::GueSemicircle => "gue-semicircle",
            ExperimentId::GinibreDisc => "ginibre-disc",
            ExperimentId::OverlapLaw => "overlap-law",
            ExperimentId::EdgeErfc => "edge-erfc",
            ExperimentId::AcpVerify => "acp-verify",
            ExperimentId::QdetVerify => "qdet-verify",
            ExperimentId::DysonTrajectories => "dyson-trajectories",
            ExperimentId::TwoByTwo => "two-by-two",
            ExperimentId::PdeResiduals => "pde-residuals",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            ExperimentId::GueSemicircle => "stationary GUE histogram against the semicircle",
            ExperimentId::GinibreDisc => "stationary Ginibre radial density against the circular law",
            ExperimentId::OverlapLaw => "binned eigenvector correlator against the parabolic overlap law",
            ExperimentId::EdgeErfc => "Ginibre edge profile against the erfc law",
            ExperimentId::AcpVerify => "averaged characteristic polynomial against the exact heat solution",
            ExperimentId::QdetVerify => "quaternionic determinant against the exact heat solution",
            ExperimentId::DysonTrajectories => "Dyson eigenvalue SDE against matrix-level sampling",
            ExperimentId::TwoByTwo => "N=2 Ginibre: overlap peaks at eigenvalue near-collisions",
            ExperimentId::PdeResiduals => "finite-difference residuals of the exact and Burgers solutions",
        }
    }

    pub fn defaults(self) -> Defaults {
        let d = |n, a, samples, tau: Option<f64>, bins| Defaults { n, a, samples, tau, bins };
        match self {
            ExperimentId::GueSemicircle => d(64, 0.5, 200, None, 40),
            ExperimentId::GinibreDisc => d(64, 0.5, 200, None, 8),
            ExperimentId::OverlapLaw => d(64, 0.5, 200, None, 4),
            ExperimentId::EdgeErfc => d(256, 0.5, 2000, None, 32),
            ExperimentId::AcpVerify => d(4, 0.5, 100_000, Some(0.7), 5),
            ExperimentId::QdetVerify => d(2, 0.5, 100_000, Some(0.5), 4),
            ExperimentId::DysonTrajectories => d(8, 0.5, 1000, Some(1.0), 40),
            ExperimentId::TwoByTwo => d(2, 0.0, 500, Some(0.2), 1),
            ExperimentId::PdeResiduals => d(4, 0.5, 50, Some(0.7), 1),
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExperimentId::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let known: Vec<&str> = ExperimentId::ALL.iter().map(|e| e.name()).collect();
            invalid("experiment", format!("unknown id `{s}`; expected one of {}", known.join(", ")))
        })
    }
}

/// Per-experiment defaults. `tau: None` means the stationary horizon.
#[derive(Clone, Copy, Debug)]
pub struct Defaults {
    pub n: usize,
    pub a: f64,
    pub samples: usize,
    pub tau: Option<f64>,
    pub bins: usize,
}

/// Raw settings from either source. Every field is optional so that the two
/// sources can be layered.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub n: Option<i64>,
    pub a: Option<f64>,
    pub dt: Option<f64>,
    pub samples: Option<i64>,
    pub tau: Option<f64>,
    pub bins: Option<i64>,
    pub regulator: Option<f64>,
    pub out: Option<PathBuf>,
}

impl RawConfig {
    pub fn from_toml_str(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text, path)
    }

    /// Values set in `over` replace those in `self`.
    pub fn overlay(self, over: RawConfig) -> RawConfig {
        RawConfig {
            experiment: over.experiment.or(self.experiment),
            seed: over.seed.or(self.seed),
            n: over.n.or(self.n),
            a: over.a.or(self.a),
            dt: over.dt.or(self.dt),
            samples: over.samples.or(self.samples),
            tau: over.tau.or(self.tau),
            bins: over.bins.or(self.bins),
            regulator: over.regulator.or(self.regulator),
            out: over.out.or(self.out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub seed: u64,
    pub n: usize,
    pub a: f64,
    pub dt: f64,
    pub samples: usize,
    pub tau: f64,
    pub bins: usize,
    /// `|w|` for generalized-resolvent read-outs.
    pub regulator: f64,
    #[serde(skip)]
    pub out_dir: PathBuf,
    /// Test hook: replaces the exact solutions by their sign-flipped
    /// counterparts in `pde-residuals`.
    #[serde(skip)]
    pub flip_viscosity: bool,
}

fn positive_count(field: &'static str, v: Option<i64>, default: usize) -> Result<usize, ConfigError> {
    match v {
        None => Ok(default),
        Some(x) if x > 0 => Ok(x as usize),
        Some(x) => Err(invalid(field, format!("must be a positive integer, got {x}"))),
    }
}

impl ExperimentConfig {
    /// Validates a merged raw configuration and fills in defaults.
    pub fn from_raw(raw: RawConfig) -> Result<Self, ConfigError> {
        let experiment: ExperimentId = raw.experiment.as_deref().ok_or(ConfigError::Missing("experiment"))?.parse()?;
        let seed = raw.seed.ok_or(ConfigError::Missing("seed"))?;
        let d = experiment.defaults();
        let n = positive_count("n", raw.n, d.n)?;
        let samples = positive_count("samples", raw.samples, d.samples)?;
        let bins = positive_count("bins", raw.bins, d.bins)?;

        let a = raw.a.unwrap_or(d.a);
        if !(a.is_finite() && a >= 0.0) {
            return Err(invalid("a", format!("must be finite and >= 0, got {a}")));
        }
        let stationary = d.tau.is_none();
        if stationary && raw.tau.is_none() && a == 0.0 {
            return Err(invalid("a", "stationary experiments need a > 0 unless tau is given"));
        }
        let tau = match raw.tau.or(d.tau) {
            Some(t) if t.is_finite() && t > 0.0 => t,
            Some(t) => return Err(invalid("tau", format!("must be finite and > 0, got {t}"))),
            None => stationary_tau(a),
        };
        let dt = raw.dt.unwrap_or_else(|| OUParams::default_dt(a));
        if !(dt.is_finite() && dt > 0.0) {
            return Err(invalid("dt", format!("must be finite and > 0, got {dt}")));
        }

        match experiment {
            ExperimentId::TwoByTwo if n != 2 => return Err(invalid("n", format!("two-by-two needs n = 2, got {n}"))),
            ExperimentId::AcpVerify if n % 2 != 0 => {
                return Err(invalid("n", format!("acp-verify splits the initial spectrum in halves; n must be even, got {n}")))
            }
            ExperimentId::DysonTrajectories | ExperimentId::OverlapLaw | ExperimentId::GinibreDisc if n < 2 => {
                return Err(invalid("n", format!("needs n >= 2, got {n}")))
            }
            ExperimentId::EdgeErfc if n < 16 => {
                return Err(invalid("n", format!("the edge window needs n >= 16, got {n}")))
            }
            _ => {}
        }
        if tau / dt > 1e8 && matches!(experiment, ExperimentId::DysonTrajectories | ExperimentId::TwoByTwo) {
            return Err(invalid("dt", format!("tau/dt = {:e} steps is too many", tau / dt)));
        }

        let regulator = match raw.regulator {
            None => default_regulator(n),
            Some(w) if w.is_finite() && w > 0.0 => w,
            Some(w) => return Err(invalid("regulator", format!("must be finite and > 0, got {w}"))),
        };

        let out_dir = raw.out.unwrap_or_else(|| PathBuf::from("out").join(experiment.name()));
        Ok(Self { experiment, seed, n, a, dt, samples, tau, bins, regulator, out_dir, flip_viscosity: false })
    }

    /// Merges an optional config file with flag values (flags win).
    pub fn parse(file: Option<&Path>, flags: RawConfig) -> Result<Self, ConfigError> {
        let base = match file {
            Some(p) => RawConfig::from_file(p)?,
            None => RawConfig::default(),
        };
        Self::from_raw(base.overlay(flags))
    }

    pub fn params(&self) -> OUParams {
        OUParams { a: self.a, n: self.n, dt: self.dt, seed: self.seed }
    }

    /// Hex SHA-256 of the canonical JSON of every field that affects results.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The same settings as a flat TOML file, for replaying a run.
    pub fn to_toml(&self) -> String {
        format!(
            "experiment = \"{}\"\nseed = {}\nn = {}\na = {:?}\ndt = {:?}\nsamples = {}\ntau = {:?}\nbins = {}\nregulator = {:?}\n",
            self.experiment, self.seed, self.n, self.a, self.dt, self.samples, self.tau, self.bins, self.regulator
        )
    }
}
