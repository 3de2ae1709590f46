//! `qgas` — deterministic tables for the Bose–Fermi interpolating ideal gas:
//! operator-algebra verification reports, discrete-spectrum thermodynamics,
//! continuum isotherms, virial coefficients, and a dilute-ensemble preset.

mod commands;
mod config;
mod spectrum_file;
mod table;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use config::{Caps, GridSpec, GridVar, OutputFormat, RunConfig, SymCaps, Units};
use qgas_core::thermo_continuum::{GasParams, GroundStateMode};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qgas",
    version,
    about = "Ideal quantum gas interpolating between Bose and Fermi statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, default_value = "csv")]
    output: OutputFormat,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Unit system for physical inputs.
    #[arg(long, default_value = "reduced")]
    units: Units,
    /// Seed for randomized property sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the operator-algebra identities at configurable truncations.
    AlgebraVerify {
        #[command(flatten)]
        common: CommonArgs,
        /// Fermionic weight δ ∈ [0, 1] used in the weighted checks.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Fock-space truncation caps M,n_max,N_cap.
        #[arg(long, default_value = "2,3,4")]
        caps: Caps,
        /// Symmetrizer sweep caps N,d.
        #[arg(long, default_value = "4,3")]
        sym_caps: SymCaps,
        /// Dump ladder-operator matrices as `row col value` triplets here.
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
    },
    /// Grand-canonical tables over a discrete spectrum file.
    Discrete {
        #[command(flatten)]
        common: CommonArgs,
        /// Spectrum file: `energy degeneracy` per line, `#` comments.
        #[arg(long)]
        spectrum: PathBuf,
        /// Inverse temperature β (reduced units).
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Grid start:stop:count[:log] over μ (or over N with --grid-over n).
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        /// Grid variable: mu or n.
        #[arg(long, default_value = "mu")]
        grid_over: GridVar,
        /// Add enumerated-trace comparison columns.
        #[arg(long)]
        exact_check: bool,
        /// Truncation caps (reserved for the enumeration guard).
        #[arg(long, default_value = "2,3,4")]
        caps: Caps,
    },
    /// Occupation curve n(ε) at fixed (β, μ, δ).
    Occupation {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Grid start:stop:count[:log] over ε.
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
    },
    /// Equation-of-state sweep over the degeneracy parameter nλ³.
    Eos {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Grid start:stop:count[:log] over nλ³.
        #[arg(long, default_value = "1e-4:1e-2:7:log")]
        grid: GridSpec,
        /// Keep the lifted ground-level terms (needs --v-lambda3).
        #[arg(long)]
        ground_state: bool,
        /// Volume in units of λ³ for --ground-state.
        #[arg(long)]
        v_lambda3: Option<f64>,
        /// Particle mass in kg (SI mode).
        #[arg(long)]
        mass: Option<f64>,
        /// Temperature in K (SI mode).
        #[arg(long)]
        temperature: Option<f64>,
        /// Volume in m³ (SI mode).
        #[arg(long)]
        volume: Option<f64>,
        /// Override the pinned h and k: file with `planck_h = …`,
        /// `boltzmann_k = …` lines.
        #[arg(long)]
        constants: Option<PathBuf>,
    },
    /// Virial coefficients: closed forms, cluster re-derivation, fitted values.
    Virial {
        #[command(flatten)]
        common: CommonArgs,
        /// Single δ (overrides --grid).
        #[arg(long)]
        delta: Option<f64>,
        /// Grid start:stop:count[:log] over δ.
        #[arg(long, default_value = "0:1:5")]
        grid: GridSpec,
        /// Sample count for the low-density fit.
        #[arg(long, default_value_t = 25)]
        fit_points: usize,
    },
    /// Dilute neutral-ensemble preset: virial regime plus a low-density sweep.
    BlackholePreset {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(any_fail) => {
            if any_fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (table, common) = match cli.command {
        Command::AlgebraVerify {
            common,
            delta,
            caps,
            sym_caps,
            dump_matrices,
        } => {
            config::validate_delta(delta)?;
            let mut cfg = base_config("algebra-verify", &common);
            cfg.delta = Some(delta);
            cfg.caps = Some(caps);
            cfg.sym_caps = Some(sym_caps);
            let table = commands::algebra::run(
                cfg,
                caps,
                sym_caps,
                delta,
                common.seed,
                dump_matrices.as_deref(),
            )?;
            (table, common)
        }
        Command::Discrete {
            common,
            spectrum,
            beta,
            delta,
            grid,
            grid_over,
            exact_check,
            caps,
        } => {
            config::validate_delta(delta)?;
            if beta.is_nan() || beta <= 0.0 {
                bail!("beta must be positive, got {beta}");
            }
            let spec = spectrum_file::load_spectrum(&spectrum)?;
            let mut cfg = base_config("discrete", &common);
            cfg.delta = Some(delta);
            cfg.beta = Some(beta);
            cfg.spectrum = Some(spectrum.display().to_string());
            cfg.grid = Some(grid);
            cfg.grid_over = Some(match grid_over {
                GridVar::Mu => "mu".into(),
                GridVar::N => "n".into(),
            });
            cfg.exact_check = exact_check;
            cfg.caps = Some(caps);
            let table = commands::discrete::run(
                cfg,
                &spec,
                beta,
                delta,
                &grid.values(),
                grid_over,
                exact_check,
            )?;
            (table, common)
        }
        Command::Occupation {
            common,
            beta,
            mu,
            delta,
            grid,
        } => {
            config::validate_delta(delta)?;
            let mut cfg = base_config("occupation", &common);
            cfg.beta = Some(beta);
            cfg.mu = Some(mu);
            cfg.delta = Some(delta);
            cfg.grid = Some(grid);
            let table = commands::occupation::run(cfg, beta, mu, delta, &grid.values())?;
            (table, common)
        }
        Command::Eos {
            common,
            delta,
            grid,
            ground_state,
            v_lambda3,
            mass,
            temperature,
            volume,
            constants,
        } => {
            config::validate_delta(delta)?;
            let phys = match &constants {
                Some(path) => config::PhysicalConstants::load(path)?,
                None => config::PhysicalConstants::default(),
            };
            let mut cfg = base_config("eos", &common);
            cfg.delta = Some(delta);
            cfg.grid = Some(grid);
            cfg.ground_state = ground_state;
            cfg.v_lambda3 = v_lambda3;
            cfg.mass = mass;
            cfg.temperature = temperature;
            cfg.volume = volume;
            cfg.constants = Some(phys);

            let si_gas = match common.units {
                Units::Reduced => None,
                Units::Si => {
                    let (Some(m), Some(t)) = (mass, temperature) else {
                        bail!("SI mode needs --mass and --temperature");
                    };
                    Some(GasParams::si_with_constants(
                        m,
                        volume.unwrap_or(1.0),
                        t,
                        delta,
                        phys.planck_h,
                        phys.boltzmann_k,
                    )?)
                }
            };
            let mode = if ground_state {
                let v = match (v_lambda3, &si_gas) {
                    (Some(v), _) => v,
                    (None, Some(gas)) => gas.v_over_lambda3(),
                    (None, None) => bail!("--ground-state needs --v-lambda3 in reduced units"),
                };
                GroundStateMode::Include { v_over_lambda3: v }
            } else {
                GroundStateMode::ThermodynamicLimit
            };
            let table =
                commands::eos::run(cfg, delta, &grid.values(), mode, si_gas.as_ref())?;
            (table, common)
        }
        Command::Virial {
            common,
            delta,
            grid,
            fit_points,
        } => {
            let deltas = match delta {
                Some(d) => {
                    config::validate_delta(d)?;
                    vec![d]
                }
                None => grid.values(),
            };
            let mut cfg = base_config("virial", &common);
            cfg.delta = delta;
            cfg.grid = Some(grid);
            cfg.fit_points = Some(fit_points);
            let table = commands::virial::run(cfg, &deltas, fit_points)?;
            (table, common)
        }
        Command::BlackholePreset { common, delta } => {
            config::validate_delta(delta)?;
            let mut cfg = base_config("blackhole-preset", &common);
            cfg.delta = Some(delta);
            let table = commands::blackhole::run(cfg, delta)?;
            (table, common)
        }
    };

    match &common.out {
        Some(path) => {
            let mut buf = Vec::new();
            table.render(&mut buf)?;
            std::fs::write(path, buf)
                .with_context(|| format!("writing output to {}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.render(&mut lock)?;
        }
    }
    Ok(table.any_fail())
}

fn base_config(command: &str, common: &CommonArgs) -> RunConfig {
    let mut cfg = RunConfig::new(command);
    cfg.output = common.output;
    cfg.units = common.units;
    cfg.seed = common.seed;
    cfg
}
