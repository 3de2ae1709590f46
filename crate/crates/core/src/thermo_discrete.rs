//! Grand-canonical thermodynamics of the interpolating gas over a discrete
//! spectrum.
//!
//! The closed-form partition function is a product of per-level factors
//! `(1 − δ zᵢ²)/(1 − zᵢ)` with `zᵢ = e^{β(μ−εᵢ)}`. The occupation of a level
//! is
//!
//! ```text
//! n(x) = 1/(e^x − 1) − 2δ/(e^{2x} − δ),   x = β(ε − μ),
//! ```
//!
//! which reduces to Bose–Einstein at δ = 0 and Fermi–Dirac at δ = 1. It is
//! evaluated here in the combined rational form
//! `(e^{2x} − 2δe^x + δ) / ((e^x − 1)(e^{2x} − δ))` computed via `expm1`,
//! which stays accurate through the Fermi limit where the two printed terms
//! cancel catastrophically.
//!
//! Everything works in reduced units: `k = 1`, energies and μ in the same
//! unit, β its inverse.

use crate::bracket::solve_monotone;
use crate::exchange_algebra::{
    grand_trace_terms_with_limit, AlgebraError, InternalState, TraceWeighting,
    DEFAULT_TRACE_LIMIT,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermoError {
    #[error("divergence point: β(ε−μ) = 0 or e^{{2β(ε−μ)}} = δ at ε = {epsilon}, μ = {mu}{}",
            level_note(.level))]
    Divergence {
        epsilon: f64,
        mu: f64,
        level: Option<usize>,
    },
    #[error("occupancy series divergent at level {level} (ε = {epsilon}): z = {z} ≥ 1; \
             this μ branch is analytic-continuation only")]
    SeriesDivergent { level: usize, epsilon: f64, z: f64 },
    #[error("non-positive partition factor {factor} at level {level}")]
    NonPositiveFactor { level: usize, factor: f64 },
    #[error("capacity exceeded: target N = {n_target} but sup N = {sup_n} on the μ < ε_min branch")]
    Capacity { n_target: f64, sup_n: f64 },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid state point: {0}")]
    InvalidPoint(String),
    #[error("root bracketing failed: {0}")]
    Bracket(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn level_note(level: &Option<usize>) -> String {
    match level {
        Some(i) => format!(" (level {i})"),
        None => String::new(),
    }
}

/// Discrete single-particle spectrum: energies with degeneracies, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    levels: Vec<(f64, u32)>,
}

impl Spectrum {
    pub fn new(mut levels: Vec<(f64, u32)>) -> Result<Self, ThermoError> {
        if levels.is_empty() {
            return Err(ThermoError::InvalidSpectrum("no levels given".into()));
        }
        for &(e, g) in &levels {
            if !e.is_finite() {
                return Err(ThermoError::InvalidSpectrum(format!(
                    "non-finite energy {e}"
                )));
            }
            if g == 0 {
                return Err(ThermoError::InvalidSpectrum(format!(
                    "degeneracy must be ≥ 1 at energy {e}"
                )));
            }
        }
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[(f64, u32)] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn min_energy(&self) -> f64 {
        self.levels[0].0
    }

    pub fn max_energy(&self) -> f64 {
        self.levels[self.levels.len() - 1].0
    }

    /// One entry per mode, degeneracies expanded, for enumeration oracles.
    pub fn expand_modes(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &(e, g) in &self.levels {
            for _ in 0..g {
                out.push(e);
            }
        }
        out
    }
}

/// A grand-canonical state point in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrandPoint {
    pub beta: f64,
    pub mu: f64,
    pub delta: f64,
}

impl GrandPoint {
    pub fn new(beta: f64, mu: f64, delta: f64) -> Result<Self, ThermoError> {
        if beta <= 0.0 || !beta.is_finite() {
            return Err(ThermoError::InvalidPoint(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        if !mu.is_finite() {
            return Err(ThermoError::InvalidPoint(format!(
                "mu must be finite, got {mu}"
            )));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(ThermoError::InvalidPoint(format!(
                "delta must lie in [0,1], got {delta}"
            )));
        }
        Ok(Self { beta, mu, delta })
    }

    pub fn internal_state(&self) -> InternalState {
        InternalState::new(self.delta).expect("delta validated on construction")
    }
}

/// Mean occupation of a level at energy `epsilon`.
///
/// Exact divergence points (x = 0 or e^{2x} = δ) produce a domain error
/// rather than ±∞.
pub fn occupation(epsilon: f64, point: &GrandPoint) -> Result<f64, ThermoError> {
    let x = point.beta * (epsilon - point.mu);
    occupation_reduced(x, point.delta).map_err(|_| ThermoError::Divergence {
        epsilon,
        mu: point.mu,
        level: None,
    })
}

/// Occupation as a function of x = β(ε−μ) alone.
///
/// Uses `expm1` throughout: with em = e^x − 1 and em2 = e^{2x} − 1,
/// numerator e^{2x} − 2δe^x + δ = em² + 2(1−δ)em + (1−δ) and denominator
/// (e^x − 1)(e^{2x} − δ) = em·(em2 + 1 − δ), exact algebraic rewrites that
/// avoid cancellation at the Fermi point δ = 1, x → 0.
pub(crate) fn occupation_reduced(x: f64, delta: f64) -> Result<f64, ()> {
    let em = x.exp_m1();
    let em2 = (2.0 * x).exp_m1();
    let omd = 1.0 - delta;
    let den2 = em2 + omd;
    if em == 0.0 || den2 == 0.0 {
        return Err(());
    }
    let num = em * em + 2.0 * omd * em + omd;
    Ok(num / (em * den2))
}

/// Log of the closed-form grand partition function, `Σ gᵢ ln Ξᵢ` with
/// `Ξᵢ = (1−δzᵢ²)/(1−zᵢ)`.
///
/// Requires every `zᵢ < 1` (the series interpretation); the admissible high-μ
/// branch of [`admissible_mu`] is refused here as analytic-continuation only.
pub fn log_partition(spec: &Spectrum, point: &GrandPoint) -> Result<f64, ThermoError> {
    let mut total = 0.0;
    for (i, &(e, g)) in spec.levels().iter().enumerate() {
        let z = (point.beta * (point.mu - e)).exp();
        if z >= 1.0 {
            return Err(ThermoError::SeriesDivergent {
                level: i,
                epsilon: e,
                z,
            });
        }
        let numerator = 1.0 - point.delta * z * z;
        if numerator <= 0.0 {
            return Err(ThermoError::NonPositiveFactor {
                level: i,
                factor: numerator / (1.0 - z),
            });
        }
        let ln_factor = (-point.delta * z * z).ln_1p() - (-z).ln_1p();
        total += g as f64 * ln_factor;
    }
    Ok(total)
}

/// Bundle of state functions at one grand-canonical point.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub log_partition: f64,
    /// Ω = −PV = −lnΞ/β.
    pub omega: f64,
    /// PV = −Ω.
    pub pressure_volume: f64,
    pub total_number: f64,
    pub internal_energy: f64,
    /// S from the Euler relation β(U − μN − Ω), with k = 1.
    pub entropy: f64,
    /// Mean occupation per level (not multiplied by degeneracy).
    pub occupations: Vec<f64>,
}

/// Evaluates the full report; propagates domain errors from
/// [`log_partition`] and [`occupation`], tagging the offending level.
pub fn report(spec: &Spectrum, point: &GrandPoint) -> Result<ThermoReport, ThermoError> {
    let log_xi = log_partition(spec, point)?;
    let omega = -log_xi / point.beta;
    let mut total_number = 0.0;
    let mut internal_energy = 0.0;
    let mut occupations = Vec::with_capacity(spec.len());
    for (i, &(e, g)) in spec.levels().iter().enumerate() {
        let n = occupation(e, point).map_err(|err| match err {
            ThermoError::Divergence { epsilon, mu, .. } => ThermoError::Divergence {
                epsilon,
                mu,
                level: Some(i),
            },
            other => other,
        })?;
        occupations.push(n);
        total_number += g as f64 * n;
        internal_energy += g as f64 * e * n;
    }
    let entropy = point.beta * (internal_energy - point.mu * total_number - omega);
    Ok(ThermoReport {
        log_partition: log_xi,
        omega,
        pressure_volume: -omega,
        total_number,
        internal_energy,
        entropy,
        occupations,
    })
}

/// Where the occupation formula is non-negative, as μ intervals.
///
/// Each level forbids the open band `(εᵢ, εᵢ − ln δ/(2β))` (empty at δ = 1,
/// all of `(εᵢ, ∞)` at δ = 0); the band edges are the divergence points of
/// the formula and are excluded as well. `allowed` is the open complement of
/// the union of the closed bands.
#[derive(Debug, Clone, PartialEq)]
pub struct MuDomain {
    /// Per-level open bands `(εᵢ, εᵢ − ln δ/(2β))` on which the occupation
    /// is negative. Degenerate (empty) at δ = 1.
    pub forbidden_bands: Vec<(f64, f64)>,
    /// Maximal open intervals of admissible μ, ascending; endpoints may be
    /// ±∞.
    pub allowed: Vec<(f64, f64)>,
}

impl MuDomain {
    pub fn contains(&self, mu: f64) -> bool {
        self.allowed.iter().any(|&(lo, hi)| mu > lo && mu < hi)
    }
}

/// Computes [`MuDomain`] for a spectrum at given β and δ.
pub fn admissible_mu(spec: &Spectrum, beta: f64, delta: f64) -> Result<MuDomain, ThermoError> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(ThermoError::InvalidPoint(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(ThermoError::InvalidPoint(format!(
            "delta must lie in [0,1], got {delta}"
        )));
    }
    let band_top = |e: f64| -> f64 {
        if delta == 0.0 {
            f64::INFINITY
        } else {
            e - delta.ln() / (2.0 * beta) // equals e itself at δ = 1
        }
    };
    let forbidden_bands: Vec<(f64, f64)> = spec
        .levels()
        .iter()
        .map(|&(e, _)| (e, band_top(e)))
        .collect();

    // Merge the closed exclusion intervals [εᵢ, topᵢ]; their open complement
    // is the admissible set (band edges are divergence points, so the closure
    // is exactly what must be removed).
    let mut closed: Vec<(f64, f64)> = forbidden_bands.clone();
    closed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in closed {
        match merged.last_mut() {
            Some((_, mhi)) if lo <= *mhi => {
                if hi > *mhi {
                    *mhi = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    let mut allowed = Vec::with_capacity(merged.len() + 1);
    let mut cursor = f64::NEG_INFINITY;
    for &(lo, hi) in &merged {
        if lo > cursor {
            allowed.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < f64::INFINITY {
        allowed.push((cursor, f64::INFINITY));
    }
    Ok(MuDomain {
        forbidden_bands,
        allowed,
    })
}

/// Inverts `N(μ) = n_target` on the connected branch of admissible μ that
/// extends to −∞, where N is continuous and strictly increasing.
///
/// For δ < 1 that branch is μ < ε_min and its supremum is +∞ (the lowest
/// factor diverges as μ → ε_min⁻). Exactly at δ = 1 every band obstruction
/// vanishes — the occupation is the regular Fermi function — so the search
/// runs over all μ and capacity is the total degeneracy, enforced with a
/// [`ThermoError::Capacity`] error reporting sup N. The residual is driven to
/// ≤ 1e−10·n_target.
pub fn solve_mu(
    spec: &Spectrum,
    beta: f64,
    delta: f64,
    n_target: f64,
) -> Result<f64, ThermoError> {
    if n_target <= 0.0 || !n_target.is_finite() {
        return Err(ThermoError::InvalidPoint(format!(
            "target particle number must be positive and finite, got {n_target}"
        )));
    }
    let e_min = spec.min_energy();
    let fermi = delta == 1.0;
    let number_at = |mu: f64| -> f64 {
        spec.levels()
            .iter()
            .map(|&(e, g)| {
                let x = beta * (e - mu);
                let n = if fermi {
                    // Regular through x = 0; the rational form's removable
                    // pole there is an artifact of the two-term expression.
                    1.0 / (x.exp() + 1.0)
                } else {
                    occupation_reduced(x, delta).expect("x > 0 on the μ < ε_min branch")
                };
                g as f64 * n
            })
            .sum()
    };

    if fermi {
        let sup_n: f64 = spec.levels().iter().map(|&(_, g)| g as f64).sum();
        if n_target >= sup_n {
            return Err(ThermoError::Capacity { n_target, sup_n });
        }
    }

    // Upper end of the bracket. For δ < 1 walk toward the ε_min pole until N
    // exceeds the target; at δ = 1 walk upward in μ instead.
    let mut hi;
    let mut iter = 0;
    if fermi {
        hi = e_min + 1.0 / beta;
        while number_at(hi) < n_target {
            hi = e_min + 2.0 * (hi - e_min);
            iter += 1;
            if iter > 300 {
                return Err(ThermoError::Bracket(format!(
                    "could not bracket N = {n_target} below μ = {hi}"
                )));
            }
        }
    } else {
        let mut gap = 1.0 / beta;
        hi = e_min - gap;
        while number_at(hi) < n_target {
            gap *= 0.5;
            hi = e_min - gap;
            iter += 1;
            if iter > 300 {
                return Err(ThermoError::Bracket(format!(
                    "could not bracket N = {n_target} above μ = {hi}"
                )));
            }
        }
    }
    // Lower end: walk down until N falls below the target.
    let mut step = 1.0 / beta;
    let mut lo = hi - step;
    iter = 0;
    while number_at(lo) > n_target {
        step *= 2.0;
        lo = hi - step;
        iter += 1;
        if iter > 300 {
            return Err(ThermoError::Bracket(format!(
                "could not bracket N = {n_target} below μ = {lo}"
            )));
        }
    }
    // Monotonicity sanity on the bracket.
    let mid = 0.5 * (lo + hi);
    let (nlo, nmid, nhi) = (number_at(lo), number_at(mid), number_at(hi));
    if !(nlo <= nmid && nmid <= nhi) {
        return Err(ThermoError::Bracket(format!(
            "N(μ) not monotone on [{lo}, {hi}]: {nlo}, {nmid}, {nhi}"
        )));
    }

    let tol = 1e-10 * n_target;
    let (root, residual) = solve_monotone(number_at, lo, hi, n_target, tol, 300);
    if residual.abs() > tol {
        return Err(ThermoError::Bracket(format!(
            "residual {residual} above tolerance {tol} at μ = {root}"
        )));
    }
    Ok(root)
}

/// Outcome of comparing the operator-exact and factorized enumerated traces.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceComparison {
    /// |Ξ_exact − Ξ_factorized| over the truncated enumeration.
    pub abs_diff: f64,
    /// Lowest total particle number at which the fugacity-resolved terms
    /// differ (relative gap > 1e−12); `None` when they agree at all orders.
    pub first_divergent_order: Option<usize>,
    /// Per-order signed gaps `exact − factorized` (fugacity powers included).
    pub term_gaps: Vec<f64>,
}

/// Enumerates both trace weightings over the spectrum (degeneracies expanded
/// into modes) and locates the first fugacity order where they part ways —
/// order 4 whenever δ ∈ (0,1) and the spectrum has ≥ 2 modes.
pub fn compare_exact_factorized(
    spec: &Spectrum,
    beta: f64,
    mu: f64,
    delta: f64,
    n_max: u32,
) -> Result<TraceComparison, ThermoError> {
    let state = InternalState::new(delta).map_err(ThermoError::from)?;
    let modes = spec.expand_modes();
    let exact = grand_trace_terms_with_limit(
        &modes,
        beta,
        mu,
        &state,
        n_max,
        TraceWeighting::OperatorExact,
        DEFAULT_TRACE_LIMIT,
    )?;
    let fact = grand_trace_terms_with_limit(
        &modes,
        beta,
        mu,
        &state,
        n_max,
        TraceWeighting::Factorized,
        DEFAULT_TRACE_LIMIT,
    )?;
    let term_gaps: Vec<f64> = exact.iter().zip(&fact).map(|(a, b)| a - b).collect();
    let first_divergent_order = term_gaps
        .iter()
        .enumerate()
        .find(|(k, gap)| {
            let scale = exact[*k].abs().max(fact[*k].abs()).max(1e-300);
            gap.abs() > 1e-12 * scale
        })
        .map(|(k, _)| k);
    let abs_diff = (exact.iter().sum::<f64>() - fact.iter().sum::<f64>()).abs();
    Ok(TraceComparison {
        abs_diff,
        first_divergent_order,
        term_gaps,
    })
}
