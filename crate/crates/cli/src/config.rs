//! Experiment configuration: JSON file (schema version 1) merged with
//! command-line overrides, flags winning.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qclone::optics::PdbsParams;
use serde::Deserialize;

use crate::angle::{parse_angle_list, Angle};
use crate::table::Format;
use crate::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RegimeKind {
    Uc,
    Pcc,
    Mpcc,
    Axisym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AncillaMode {
    #[default]
    Random,
    Deterministic,
}

/// Input ensemble handed to the optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionKind {
    Uniform,
    /// One latitude, hemisphere known.
    Latitude,
    MirrorPair,
    /// A single state at φ = 0.
    Point,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum PdbsSpec {
    Named(String),
    Params { mu: f64, nu: f64 },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSpec {
    path: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaSpec {
    plus: f64,
    minus: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    version: u32,
    regime: Option<RegimeKind>,
    theta_list: Option<Vec<Angle>>,
    pdbs: Option<PdbsSpec>,
    ancilla_mode: Option<AncillaMode>,
    shots: Option<u64>,
    n_per_setting: Option<u64>,
    seed: Option<u64>,
    output: Option<OutputSpec>,
    phases: Option<usize>,
    noiseless: Option<bool>,
    alpha: Option<AlphaSpec>,
    distribution: Option<DistributionKind>,
}

/// Flags shared by all subcommands. Every field overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON configuration file (`"version": 1`).
    #[arg(global = true, long)]
    pub config: Option<PathBuf>,
    #[arg(global = true, long, value_enum)]
    pub regime: Option<RegimeKind>,
    /// Polar angles in radians or as fractions of pi ("pi/12"); comma
    /// separated or repeated.
    #[arg(global = true, long, allow_hyphen_values = true)]
    pub theta: Vec<String>,
    /// PDBS horizontal transmissivity.
    #[arg(global = true, long, conflicts_with = "ideal")]
    pub mu: Option<f64>,
    /// PDBS vertical transmissivity.
    #[arg(global = true, long, conflicts_with = "ideal")]
    pub nu: Option<f64>,
    /// Use the ideal splitter (mu + nu = 1, mu - nu = 1/sqrt 3).
    #[arg(global = true, long)]
    pub ideal: bool,
    #[arg(global = true, long, value_enum)]
    pub ancilla: Option<AncillaMode>,
    /// Photon pairs per success-probability measurement (0: exact).
    #[arg(global = true, long)]
    pub shots: Option<u64>,
    /// Tomography counts per projection setting.
    #[arg(global = true, long)]
    pub n_per_setting: Option<u64>,
    #[arg(global = true, long)]
    pub seed: Option<u64>,
    /// Output file (stdout if absent).
    #[arg(global = true, long)]
    pub out: Option<PathBuf>,
    #[arg(global = true, long, value_enum)]
    pub format: Option<Format>,
    /// Number of equally spaced input phases per polar angle.
    #[arg(global = true, long)]
    pub phases: Option<usize>,
    /// Tomography from expected instead of sampled counts.
    #[arg(global = true, long)]
    pub noiseless: bool,
    /// Axisymmetric cloner parameter α₊ (radians or "pi/..").
    #[arg(global = true, long, allow_hyphen_values = true)]
    pub alpha_plus: Option<String>,
    /// Axisymmetric cloner parameter α₋.
    #[arg(global = true, long, allow_hyphen_values = true)]
    pub alpha_minus: Option<String>,
    /// Distribution for `optimize` (default follows the regime).
    #[arg(global = true, long, value_enum)]
    pub distribution: Option<DistributionKind>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub regime: RegimeKind,
    pub theta_list: Vec<f64>,
    pub pdbs: PdbsParams,
    pub ancilla_mode: AncillaMode,
    pub shots: u64,
    pub n_per_setting: u64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub phases: usize,
    pub noiseless: bool,
    pub alpha: Option<(f64, f64)>,
    pub distribution: Option<DistributionKind>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            regime: RegimeKind::Mpcc,
            theta_list: vec![FRAC_PI_2],
            pdbs: PdbsParams::measured(),
            ancilla_mode: AncillaMode::Random,
            shots: 0,
            n_per_setting: 10_000,
            seed: 0,
            output: None,
            format: Format::Csv,
            phases: 4,
            noiseless: false,
            alpha: None,
            distribution: None,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        let mut cfg = Self::default();
        cfg.apply_file(file)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Defaults, then the config file named in `o`, then the flags.
    pub fn resolve(o: &Overrides) -> Result<Self, CliError> {
        let mut cfg = match &o.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        cfg.apply_overrides(o)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, f: ConfigFile) -> Result<(), CliError> {
        if f.version != CONFIG_VERSION {
            return Err(invalid(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                f.version
            )));
        }
        if let Some(r) = f.regime {
            self.regime = r;
        }
        if let Some(t) = f.theta_list {
            self.theta_list = t.into_iter().map(|a| a.0).collect();
        }
        if let Some(p) = f.pdbs {
            self.pdbs = match p {
                PdbsSpec::Named(n) if n == "ideal" => PdbsParams::ideal(),
                PdbsSpec::Named(n) if n == "measured" => PdbsParams::measured(),
                PdbsSpec::Named(n) => return Err(invalid(format!("unknown pdbs `{n}`"))),
                PdbsSpec::Params { mu, nu } => PdbsParams { mu, nu },
            };
        }
        if let Some(a) = f.ancilla_mode {
            self.ancilla_mode = a;
        }
        if let Some(s) = f.shots {
            self.shots = s;
        }
        if let Some(n) = f.n_per_setting {
            self.n_per_setting = n;
        }
        if let Some(s) = f.seed {
            self.seed = s;
        }
        if let Some(out) = f.output {
            if out.path.is_some() {
                self.output = out.path;
            }
            if let Some(fmt) = out.format {
                self.format = fmt;
            }
        }
        if let Some(p) = f.phases {
            self.phases = p;
        }
        if let Some(n) = f.noiseless {
            self.noiseless = n;
        }
        if let Some(a) = f.alpha {
            self.alpha = Some((a.plus, a.minus));
        }
        if f.distribution.is_some() {
            self.distribution = f.distribution;
        }
        Ok(())
    }

    fn apply_overrides(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(r) = o.regime {
            self.regime = r;
        }
        if !o.theta.is_empty() {
            let mut thetas = Vec::new();
            for t in &o.theta {
                thetas.extend(parse_angle_list(t)?);
            }
            self.theta_list = thetas;
        }
        if o.ideal {
            self.pdbs = PdbsParams::ideal();
        }
        if let Some(mu) = o.mu {
            self.pdbs.mu = mu;
        }
        if let Some(nu) = o.nu {
            self.pdbs.nu = nu;
        }
        if let Some(a) = o.ancilla {
            self.ancilla_mode = a;
        }
        if let Some(s) = o.shots {
            self.shots = s;
        }
        if let Some(n) = o.n_per_setting {
            self.n_per_setting = n;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(p) = &o.out {
            self.output = Some(p.clone());
            if o.format.is_none() && p.extension().is_some_and(|e| e == "json") {
                self.format = Format::Json;
            }
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        if let Some(p) = o.phases {
            self.phases = p;
        }
        if o.noiseless {
            self.noiseless = true;
        }
        match (&o.alpha_plus, &o.alpha_minus) {
            (None, None) => {}
            (Some(p), Some(m)) => {
                self.alpha = Some((crate::angle::parse_angle(p)?, crate::angle::parse_angle(m)?));
            }
            _ => return Err(invalid("--alpha-plus and --alpha-minus go together")),
        }
        if o.distribution.is_some() {
            self.distribution = o.distribution;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.theta_list.is_empty() {
            return Err(invalid("theta_list is empty"));
        }
        if let Some(t) = self.theta_list.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return Err(invalid(format!("theta {t} outside [0, pi]")));
        }
        PdbsParams::new(self.pdbs.mu, self.pdbs.nu).map_err(|e| invalid(e.to_string()))?;
        if self.phases < 4 {
            return Err(invalid(format!("phases = {} (at least 4)", self.phases)));
        }
        if let Some((p, m)) = self.alpha {
            if !(p.is_finite() && m.is_finite()) {
                return Err(invalid("alpha must be finite"));
            }
        }
        Ok(())
    }
}
