//! Run configuration from flags and `key=value` files; flags win.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Constants,
    Theorem1,
    Strichartz,
    Sobolev,
    Cone,
    Paraboloid,
    Optimize,
    Scan,
    VerifyAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    #[default]
    Quick,
    Full,
}

/// Command-line flags. Every option may also come from `--config FILE`.
#[derive(Debug, Clone, Parser)]
#[command(name = "strichartz", version, about = "Numerical checks of sharp Strichartz and extension inequalities")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Plain `key=value` file (keys are the long flag names).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    /// Table row id (e.g. n2_q4_r4, cone_n3_q4) or a functional id n1_k3.
    #[arg(long = "case")]
    pub case_id: Option<String>,
    /// gaussian:A,b,C | grid:PATH | exponential:A,b,C
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub chunk_size: Option<u64>,
    /// Overrides the equality tolerance of the verdict.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    /// Initial Hermite coefficients c1,c2,... (complex literals).
    #[arg(long)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub budget: Option<usize>,
    /// h<j>, scaling, translation, modulation or zero.
    #[arg(long)]
    pub direction: Option<String>,
    /// Comma-separated ε grid, symmetric about 0.
    #[arg(long)]
    pub epsilons: Option<String>,
}

/// Fully merged configuration; serialized verbatim into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub q: Option<String>,
    pub r: Option<String>,
    #[serde(rename = "case")]
    pub case_id: Option<String>,
    pub input: Option<String>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub chunk_size: u64,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub profile: Profile,
    pub coeffs: Option<String>,
    pub budget: usize,
    pub direction: Option<String>,
    pub epsilons: Option<String>,
}

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_CHUNK: u64 = 16_384;
pub const DEFAULT_BUDGET: usize = 500;

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("config key {key}: cannot parse {v:?}"))
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            n: None,
            k: None,
            q: None,
            r: None,
            case_id: None,
            input: None,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            workers: 0,
            chunk_size: DEFAULT_CHUNK,
            tolerance: None,
            out: None,
            profile: Profile::Quick,
            coeffs: None,
            budget: DEFAULT_BUDGET,
            direction: None,
            epsilons: None,
        }
    }

    /// Flags override file entries; missing numeric settings get defaults.
    pub fn resolve(cli: Cli) -> Result<Self, String> {
        let mut cfg = Self::defaults(cli.command);
        if let Some(path) = &cli.config {
            cfg.apply_file(path)?;
        }
        macro_rules! take {
            ($field:ident) => {
                if let Some(v) = cli.$field {
                    cfg.$field = Some(v);
                }
            };
            ($field:ident, plain) => {
                if let Some(v) = cli.$field {
                    cfg.$field = v;
                }
            };
        }
        take!(n);
        take!(k);
        take!(q);
        take!(r);
        take!(case_id);
        take!(input);
        take!(samples, plain);
        take!(seed, plain);
        take!(workers, plain);
        take!(chunk_size, plain);
        take!(tolerance);
        take!(out);
        take!(profile, plain);
        take!(coeffs);
        take!(budget, plain);
        take!(direction);
        take!(epsilons);
        if cfg.samples == 0 {
            return Err("samples must be positive".into());
        }
        if cfg.chunk_size == 0 {
            return Err("chunk-size must be positive".into());
        }
        if cfg.budget == 0 {
            return Err("budget must be at least 1".into());
        }
        if let Some(t) = cfg.tolerance {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(format!("tolerance {t} must be a finite nonnegative number"));
            }
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        self.apply_text(&text)
    }

    /// `key = value` lines; `#` starts a comment. Keys use the flag names,
    /// with `-` and `_` interchangeable.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "n" => self.n = Some(parse_value(&key, value)?),
                "k" => self.k = Some(parse_value(&key, value)?),
                "q" => self.q = Some(value.to_string()),
                "r" => self.r = Some(value.to_string()),
                "case" => self.case_id = Some(value.to_string()),
                "input" => self.input = Some(value.to_string()),
                "samples" => self.samples = parse_value(&key, value)?,
                "seed" => self.seed = parse_value(&key, value)?,
                "workers" => self.workers = parse_value(&key, value)?,
                "chunk-size" => self.chunk_size = parse_value(&key, value)?,
                "tolerance" => self.tolerance = Some(parse_value(&key, value)?),
                "out" => self.out = Some(PathBuf::from(value)),
                "profile" => self.profile = Profile::from_str(value, true).map_err(|e| format!("config key profile: {e}"))?,
                "coeffs" => self.coeffs = Some(value.to_string()),
                "budget" => self.budget = parse_value(&key, value)?,
                "direction" => self.direction = Some(value.to_string()),
                "epsilons" => self.epsilons = Some(value.to_string()),
                other => return Err(format!("config line {}: unknown key {other:?}", lineno + 1)),
            }
        }
        Ok(())
    }
}
