//! Continuum 3D ideal-gas thermodynamics of the interpolating statistics.
//!
//! With fugacity z = e^{βμ} and shifted fugacity z′ = δz², the equation of
//! state in reduced form (all densities multiplied by λ³) reads
//!
//! ```text
//! βPλ³ = g_{5/2}(z) − 2^{−3/2} g_{5/2}(z′) + (λ³/V)·ln((1−z′)/(1−z))
//! nλ³  = g_{3/2}(z) − 2^{−1/2} g_{3/2}(z′) + (λ³/V)·(z/(1−z) − 2z′/(1−z′))
//! ```
//!
//! The V-dependent pieces are the ground level lifted out of the continuum
//! integral; [`GroundStateMode::ThermodynamicLimit`] drops them, which is the
//! mode all virial work uses. δ = 0 reduces to the ideal Bose gas and δ = 1
//! to the ideal Fermi gas through the identity
//! `f_n(z) = g_n(z) − 2^{1−n} g_n(z²)`.
//!
//! The fugacity domain is capped at z ∈ [0, 1): beyond the critical density
//! `g_{3/2}(1) − 2^{−1/2} g_{3/2}(δ)` the solver signals the condensation
//! regime instead of modeling a condensed phase.

mod special;
pub mod virial;

pub use special::{
    bose_integral, bose_integral_quadrature, fermi_integral_quadrature, riemann_zeta,
};
pub use virial::{
    cluster_to_virial, fit_virial, fugacity_expansion, virial_coefficients, Regime,
    VirialCoefficients, VirialFit,
};

use crate::bracket::solve_monotone;
use crate::constants::{BOLTZMANN_K, PLANCK_H};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContinuumError {
    #[error("fermionic weight delta must lie in [0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("fugacity {0} outside [0, 1) (condensation boundary at z = 1)")]
    FugacityOutOfRange(f64),
    #[error("argument {0} outside [0, 1] for a Bose-Einstein integral")]
    PolylogArgument(f64),
    #[error("Bose-Einstein integral of order {order} diverges at z = 1")]
    PolylogDivergent { order: f64 },
    #[error("unsupported integral order {0}")]
    UnsupportedOrder(f64),
    #[error(
        "condensation regime: target nλ³ = {target} at or above the critical value {critical}"
    )]
    Condensation { target: f64, critical: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("root bracketing failed: {0}")]
    Bracket(String),
}

/// Whether the lifted ground-level terms enter the equation of state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroundStateMode {
    /// Drop the O(λ³/V) ground-state pieces (virial and bulk work).
    ThermodynamicLimit,
    /// Keep them at a finite volume-to-thermal-volume ratio V/λ³.
    Include { v_over_lambda3: f64 },
}

/// One point of the equation of state. All extensive quantities are reduced
/// densities (multiplied by λ³/V), so `n_lambda3 = excited_number +
/// ground_state_number` holds in either mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosPoint {
    pub fugacity: f64,
    /// Total degeneracy parameter nλ³.
    pub n_lambda3: f64,
    /// PV/NkT.
    pub pressure_ratio: f64,
    /// βPλ³ (pressure per thermal volume).
    pub p_lambda3: f64,
    /// Excited (continuum) part of nλ³.
    pub excited_number: f64,
    /// Ground-level part of nλ³; zero in the thermodynamic limit.
    pub ground_state_number: f64,
}

fn check_delta(delta: f64) -> Result<(), ContinuumError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(ContinuumError::InvalidDelta(delta));
    }
    Ok(())
}

/// Evaluates the equation of state at a given fugacity.
pub fn eos(delta: f64, z: f64, mode: GroundStateMode) -> Result<EosPoint, ContinuumError> {
    check_delta(delta)?;
    if !(0.0..1.0).contains(&z) {
        return Err(ContinuumError::FugacityOutOfRange(z));
    }
    let zp = delta * z * z;
    let excited_p = bose_integral(2.5, z)? - 2.0f64.powf(-1.5) * bose_integral(2.5, zp)?;
    let excited_n = bose_integral(1.5, z)? - 2.0f64.powf(-0.5) * bose_integral(1.5, zp)?;

    let (ground_n, ground_p) = match mode {
        GroundStateMode::ThermodynamicLimit => (0.0, 0.0),
        GroundStateMode::Include { v_over_lambda3 } => {
            if v_over_lambda3.is_nan() || v_over_lambda3 <= 0.0 {
                return Err(ContinuumError::InvalidParam(format!(
                    "V/λ³ must be positive, got {v_over_lambda3}"
                )));
            }
            let n0 = z / (1.0 - z) - 2.0 * zp / (1.0 - zp);
            // ln((1−z′)/(1−z)), the ground-level partition contribution.
            let p0 = (-zp).ln_1p() - (-z).ln_1p();
            (n0 / v_over_lambda3, p0 / v_over_lambda3)
        }
    };
    let n_lambda3 = excited_n + ground_n;
    let p_lambda3 = excited_p + ground_p;
    let pressure_ratio = if n_lambda3 > 0.0 {
        p_lambda3 / n_lambda3
    } else {
        1.0 // classical limit of PV/NkT as z → 0
    };
    Ok(EosPoint {
        fugacity: z,
        n_lambda3,
        pressure_ratio,
        p_lambda3,
        excited_number: excited_n,
        ground_state_number: ground_n,
    })
}

/// Critical degeneracy parameter `g_{3/2}(1) − 2^{−1/2} g_{3/2}(δ)`: the
/// supremum of the excited-state density as z → 1⁻.
pub fn critical_n_lambda3(delta: f64) -> Result<f64, ContinuumError> {
    check_delta(delta)?;
    Ok(riemann_zeta(1.5) - 2.0f64.powf(-0.5) * bose_integral(1.5, delta)?)
}

/// Solves for the fugacity reproducing a target nλ³ (residual ≤ 1e−12 on the
/// density scale).
///
/// In the thermodynamic limit a target at or above [`critical_n_lambda3`]
/// yields [`ContinuumError::Condensation`] carrying that critical value. With
/// the ground state included the ground term absorbs any excess for δ < 1;
/// exactly at δ = 1 the z < 1 cap still bounds the density and the same
/// signal is raised.
pub fn solve_fugacity(
    n_lambda3: f64,
    delta: f64,
    mode: GroundStateMode,
) -> Result<f64, ContinuumError> {
    check_delta(delta)?;
    if n_lambda3 <= 0.0 || !n_lambda3.is_finite() {
        return Err(ContinuumError::InvalidParam(format!(
            "target nλ³ must be positive and finite, got {n_lambda3}"
        )));
    }
    let critical = critical_n_lambda3(delta)?;
    let density = |z: f64| -> f64 {
        eos(delta, z, mode)
            .map(|p| p.n_lambda3)
            .unwrap_or(f64::INFINITY)
    };

    let unreachable = match mode {
        GroundStateMode::ThermodynamicLimit => n_lambda3 >= critical,
        GroundStateMode::Include { v_over_lambda3 } => {
            if delta < 1.0 {
                false // z/(1−z) absorbs any target
            } else {
                n_lambda3 >= critical + 0.5 / v_over_lambda3
            }
        }
    };
    if unreachable {
        return Err(ContinuumError::Condensation {
            target: n_lambda3,
            critical,
        });
    }

    // Bracket: density(0) = 0; expand the upper end toward 1.
    let mut hi = 0.5f64;
    let mut iter = 0;
    while density(hi) < n_lambda3 {
        hi = 0.5 * (1.0 + hi);
        iter += 1;
        if iter > 200 {
            return Err(ContinuumError::Bracket(format!(
                "could not bracket nλ³ = {n_lambda3} below z = 1"
            )));
        }
    }
    // The excited-state term must be monotone on the bracket.
    let excited = |z: f64| -> f64 {
        eos(delta, z, GroundStateMode::ThermodynamicLimit)
            .map(|p| p.excited_number)
            .unwrap_or(f64::INFINITY)
    };
    let (e0, e1, e2) = (excited(0.0), excited(0.5 * hi), excited(hi));
    if !(e0 <= e1 && e1 <= e2) {
        return Err(ContinuumError::Bracket(format!(
            "excited density not monotone on [0, {hi}]: {e0}, {e1}, {e2}"
        )));
    }

    let tol = 1e-12 * n_lambda3;
    let (root, residual) = solve_monotone(density, 0.0, hi, n_lambda3, tol, 300);
    if residual.abs() > tol {
        return Err(ContinuumError::Bracket(format!(
            "residual {residual} above tolerance {tol} at z = {root}"
        )));
    }
    Ok(root)
}

/// Solves the fugacity for a density and evaluates the EOS there.
pub fn eos_at_density(
    delta: f64,
    n_lambda3: f64,
    mode: GroundStateMode,
) -> Result<EosPoint, ContinuumError> {
    let z = solve_fugacity(n_lambda3, delta, mode)?;
    eos(delta, z, mode)
}

/// One row of a density sweep; per-point failures are recorded, not raised.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub n_lambda3: f64,
    pub result: Result<EosPoint, ContinuumError>,
}

/// Equation of state over a density grid. Points are evaluated concurrently;
/// the output preserves the input order.
pub fn isotherm(delta: f64, densities: &[f64], mode: GroundStateMode) -> Vec<SweepPoint> {
    densities
        .par_iter()
        .map(|&n| SweepPoint {
            n_lambda3: n,
            result: eos_at_density(delta, n, mode),
        })
        .collect()
}

/// Virial coefficients fitted from a low-density isotherm in the
/// thermodynamic limit.
pub fn virial_fit_for_delta(delta: f64, densities: &[f64]) -> Result<VirialFit, ContinuumError> {
    let mut points = Vec::with_capacity(densities.len());
    for &x in densities {
        let p = eos_at_density(delta, x, GroundStateMode::ThermodynamicLimit)?;
        points.push((x, p.pressure_ratio));
    }
    fit_virial(&points)
}

/// Log-spaced grid, endpoints included.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![start];
    }
    let (ls, le) = (start.ln(), stop.ln());
    (0..count)
        .map(|i| (ls + (le - ls) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Thermal de Broglie wavelength in SI units, λ = h/√(2πmkT), with the
/// pinned CODATA constants.
pub fn thermal_wavelength_si(mass_kg: f64, temperature_k: f64) -> Result<f64, ContinuumError> {
    thermal_wavelength_with(mass_kg, temperature_k, PLANCK_H, BOLTZMANN_K)
}

/// [`thermal_wavelength_si`] with explicit h and k (constants overrides).
pub fn thermal_wavelength_with(
    mass: f64,
    temperature: f64,
    planck_h: f64,
    boltzmann_k: f64,
) -> Result<f64, ContinuumError> {
    if mass.is_nan() || temperature.is_nan() || mass <= 0.0 || temperature <= 0.0 {
        return Err(ContinuumError::InvalidParam(format!(
            "mass and temperature must be positive, got m = {mass}, T = {temperature}"
        )));
    }
    if planck_h.is_nan() || boltzmann_k.is_nan() || planck_h <= 0.0 || boltzmann_k <= 0.0 {
        return Err(ContinuumError::InvalidParam(
            "constants h and k must be positive".into(),
        ));
    }
    Ok(planck_h / (2.0 * std::f64::consts::PI * mass * boltzmann_k * temperature).sqrt())
}

/// Thermal wavelength in reduced units (h = m = k = 1): λ = 1/√(2πT).
pub fn thermal_wavelength_reduced(temperature: f64) -> Result<f64, ContinuumError> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(ContinuumError::InvalidParam(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok(1.0 / (2.0 * std::f64::consts::PI * temperature).sqrt())
}

/// Continuum gas parameters; bridges physical inputs to the reduced
/// quantities (λ, V/λ³) the EOS works with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    pub mass: f64,
    pub volume: f64,
    pub temperature: f64,
    pub delta: f64,
    /// Thermal wavelength in the same length unit as volume^(1/3).
    pub lambda: f64,
    /// Boltzmann constant in the active unit system (1 in reduced units).
    pub boltzmann_k: f64,
}

impl GasParams {
    /// SI inputs: kg, m³, K, with the pinned CODATA constants.
    pub fn si(
        mass: f64,
        volume: f64,
        temperature: f64,
        delta: f64,
    ) -> Result<Self, ContinuumError> {
        Self::si_with_constants(mass, volume, temperature, delta, PLANCK_H, BOLTZMANN_K)
    }

    /// SI inputs with explicit h and k (constants-file overrides).
    pub fn si_with_constants(
        mass: f64,
        volume: f64,
        temperature: f64,
        delta: f64,
        planck_h: f64,
        boltzmann_k: f64,
    ) -> Result<Self, ContinuumError> {
        check_delta(delta)?;
        if volume.is_nan() || volume <= 0.0 {
            return Err(ContinuumError::InvalidParam(format!(
                "volume must be positive, got {volume}"
            )));
        }
        let lambda = thermal_wavelength_with(mass, temperature, planck_h, boltzmann_k)?;
        Ok(Self {
            mass,
            volume,
            temperature,
            delta,
            lambda,
            boltzmann_k,
        })
    }

    /// Reduced units with h = m = k = 1.
    pub fn reduced(volume: f64, temperature: f64, delta: f64) -> Result<Self, ContinuumError> {
        check_delta(delta)?;
        if volume.is_nan() || volume <= 0.0 {
            return Err(ContinuumError::InvalidParam(format!(
                "volume must be positive, got {volume}"
            )));
        }
        let lambda = thermal_wavelength_reduced(temperature)?;
        Ok(Self {
            mass: 1.0,
            volume,
            temperature,
            delta,
            lambda,
            boltzmann_k: 1.0,
        })
    }

    pub fn v_over_lambda3(&self) -> f64 {
        self.volume / self.lambda.powi(3)
    }

    /// Converts a number density (1/volume-unit³) to nλ³.
    pub fn reduced_density(&self, number_density: f64) -> f64 {
        number_density * self.lambda.powi(3)
    }

    /// kT/λ³ — multiply by βPλ³ to get pressure in the input units.
    pub fn pressure_scale(&self) -> f64 {
        self.boltzmann_k * self.temperature / self.lambda.powi(3)
    }
}
