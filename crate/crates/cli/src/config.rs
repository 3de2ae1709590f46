//! Run configuration: parsed flags normalized into one serializable record.
//!
//! The record is echoed verbatim into every output header, so identical
//! configurations are recognizable from the artifact alone and the byte
//! determinism contract has a stable anchor.

use anyhow::{bail, Context, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => bail!("unknown output format `{other}` (expected csv or json)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Reduced,
    Si,
}

impl std::str::FromStr for Units {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reduced" => Ok(Self::Reduced),
            "si" => Ok(Self::Si),
            other => bail!("unknown units `{other}` (expected reduced or si)"),
        }
    }
}

/// Which variable a `discrete` grid runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridVar {
    Mu,
    N,
}

impl std::str::FromStr for GridVar {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(Self::Mu),
            "n" => Ok(Self::N),
            other => bail!("unknown grid variable `{other}` (expected mu or n)"),
        }
    }
}

/// `start:stop:count[:log|:linear]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        if self.log {
            let (ls, le) = (self.start.ln(), self.stop.ln());
            (0..self.count)
                .map(|i| (ls + (le - ls) * i as f64 / n).exp())
                .collect()
        } else {
            (0..self.count)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / n)
                .collect()
        }
    }
}

impl std::str::FromStr for GridSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            bail!("grid must be start:stop:count[:log|:linear], got `{s}`");
        }
        let start: f64 = parts[0].parse().context("grid start")?;
        let stop: f64 = parts[1].parse().context("grid stop")?;
        let count: usize = parts[2].parse().context("grid count")?;
        if count == 0 {
            bail!("grid count must be at least 1");
        }
        if !start.is_finite() || !stop.is_finite() {
            bail!("grid endpoints must be finite");
        }
        let log = match parts.get(3) {
            None | Some(&"linear") => false,
            Some(&"log") => true,
            Some(other) => bail!("unknown grid scale `{other}` (expected log or linear)"),
        };
        if log && (start <= 0.0 || stop <= 0.0) {
            bail!("log grids need positive endpoints");
        }
        Ok(Self {
            start,
            stop,
            count,
            log,
        })
    }
}

/// Fock-space truncation caps `M,n_max,N_cap`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Caps {
    pub modes: usize,
    pub n_max: u32,
    pub n_cap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            modes: 2,
            n_max: 3,
            n_cap: 4,
        }
    }
}

impl std::str::FromStr for Caps {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            bail!("caps must be M,n_max,N_cap, got `{s}`");
        }
        let modes = parts[0].parse().context("caps: mode count")?;
        let n_max = parts[1].parse().context("caps: n_max")?;
        let n_cap = parts[2].parse().context("caps: N_cap")?;
        if modes == 0 {
            bail!("caps: mode count must be at least 1");
        }
        Ok(Self {
            modes,
            n_max,
            n_cap,
        })
    }
}

/// Symmetrizer sweep caps `N,d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymCaps {
    pub particles: usize,
    pub dim: usize,
}

impl Default for SymCaps {
    fn default() -> Self {
        Self {
            particles: 4,
            dim: 3,
        }
    }
}

impl std::str::FromStr for SymCaps {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            bail!("sym-caps must be N,d, got `{s}`");
        }
        Ok(Self {
            particles: parts[0].parse().context("sym-caps: N")?,
            dim: parts[1].parse().context("sym-caps: d")?,
        })
    }
}

/// Everything that determines a run's output, echoed into its header.
/// Identical `RunConfig` (same binary) ⇒ byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub output: OutputFormat,
    pub units: Units,
    pub seed: u64,
    pub delta: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub spectrum: Option<String>,
    pub grid: Option<GridSpec>,
    pub grid_over: Option<String>,
    pub caps: Option<Caps>,
    pub sym_caps: Option<SymCaps>,
    pub exact_check: bool,
    pub ground_state: bool,
    pub v_lambda3: Option<f64>,
    pub mass: Option<f64>,
    pub temperature: Option<f64>,
    pub volume: Option<f64>,
    pub fit_points: Option<usize>,
    pub constants: Option<PhysicalConstants>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            output: OutputFormat::Csv,
            units: Units::Reduced,
            seed: 0,
            delta: None,
            beta: None,
            mu: None,
            spectrum: None,
            grid: None,
            grid_over: None,
            caps: None,
            sym_caps: None,
            exact_check: false,
            ground_state: false,
            v_lambda3: None,
            mass: None,
            temperature: None,
            volume: None,
            fit_points: None,
            constants: None,
        }
    }

    /// Canonical single-line echo for output headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

pub fn validate_delta(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) || !delta.is_finite() {
        bail!("delta must lie in [0, 1], got {delta}");
    }
    Ok(delta)
}

/// Physical constants, overridable through a `--constants` file with
/// `planck_h = …` / `boltzmann_k = …` lines (`#` comments allowed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub planck_h: f64,
    pub boltzmann_k: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            planck_h: qgas_core::constants::PLANCK_H,
            boltzmann_k: qgas_core::constants::BOLTZMANN_K,
        }
    }
}

impl PhysicalConstants {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("constants file line {}: expected `key = value`", lineno + 1);
            };
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("constants file line {}: bad value", lineno + 1))?;
            if value <= 0.0 || !value.is_finite() {
                bail!("constants file line {}: value must be positive", lineno + 1);
            }
            match key.trim() {
                "planck_h" => out.planck_h = value,
                "boltzmann_k" => out.boltzmann_k = value,
                other => bail!(
                    "constants file line {}: unknown key `{other}` \
                     (expected planck_h or boltzmann_k)",
                    lineno + 1
                ),
            }
        }
        Ok(out)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading constants file {}", path.display()))?;
        Self::parse(&text)
    }
}
