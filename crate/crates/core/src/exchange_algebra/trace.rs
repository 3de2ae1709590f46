//! Brute-force grand-canonical traces over enumerated configurations.
//!
//! Two configuration weights are exposed. `OperatorExact` is the expectation
//! of the configuration-dependent unit operator: 1 for singly-occupied
//! configurations, `1−δ` as soon as any mode is multiply occupied. This is
//! what the projected trace actually produces. `Factorized` is the weight
//! `(1−δ)^T` implied by expanding the closed-form level product: each of the
//! T multiply-occupied modes contributes its own factor. The two agree
//! through total particle number 3 and first differ at order 4, where two
//! modes can be doubly occupied simultaneously.

use super::{AlgebraError, InternalState};

/// Default cap on the number of enumerated configurations.
pub const DEFAULT_TRACE_LIMIT: u128 = 20_000_000;

/// Configuration weight used in the enumerated trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceWeighting {
    /// `unit_weight(config)`: 1 if all nᵢ ≤ 1, else `1 − δ`.
    OperatorExact,
    /// `(1−δ)^T` with T the number of multiply-occupied modes — the weight
    /// of the closed-form level product.
    Factorized,
}

/// Enumerated grand-canonical trace
/// `Σ_configs exp(−β Σᵢ nᵢ(εᵢ−μ)) · W(config)` with `nᵢ ≤ n_max` per mode.
pub fn grand_trace_exact(
    levels: &[f64],
    beta: f64,
    mu: f64,
    state: &InternalState,
    n_max: u32,
    weighting: TraceWeighting,
) -> Result<f64, AlgebraError> {
    Ok(grand_trace_terms(levels, beta, mu, state, n_max, weighting)?
        .iter()
        .sum())
}

/// Same trace resolved by total particle number: entry `N` carries the sum
/// of all weighted Boltzmann factors of configurations with `Σnᵢ = N`
/// (fugacity powers included). Length is `M·n_max + 1`.
pub fn grand_trace_terms(
    levels: &[f64],
    beta: f64,
    mu: f64,
    state: &InternalState,
    n_max: u32,
    weighting: TraceWeighting,
) -> Result<Vec<f64>, AlgebraError> {
    grand_trace_terms_with_limit(levels, beta, mu, state, n_max, weighting, DEFAULT_TRACE_LIMIT)
}

/// [`grand_trace_terms`] with an explicit cap on the enumeration size.
pub fn grand_trace_terms_with_limit(
    levels: &[f64],
    beta: f64,
    mu: f64,
    state: &InternalState,
    n_max: u32,
    weighting: TraceWeighting,
    limit: u128,
) -> Result<Vec<f64>, AlgebraError> {
    if levels.is_empty() {
        return Err(AlgebraError::InvalidParam(
            "at least one level is required".into(),
        ));
    }
    if beta <= 0.0 || !beta.is_finite() || !mu.is_finite() {
        return Err(AlgebraError::InvalidParam(
            "beta must be positive and finite, mu finite".into(),
        ));
    }
    let mut size: u128 = 1;
    for _ in levels {
        size = size.saturating_mul(n_max as u128 + 1);
        if size > limit {
            return Err(AlgebraError::EnumerationTooLarge { size, limit });
        }
    }

    let delta = state.delta();
    let boltzmann: Vec<f64> = levels.iter().map(|&e| (-beta * (e - mu)).exp()).collect();
    let mut terms = vec![0.0f64; levels.len() * n_max as usize + 1];
    recurse(
        &boltzmann,
        0,
        1.0,
        0,
        0,
        n_max,
        delta,
        weighting,
        &mut terms,
    );
    Ok(terms)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    boltzmann: &[f64],
    level: usize,
    partial: f64,
    total: usize,
    multi: u32,
    n_max: u32,
    delta: f64,
    weighting: TraceWeighting,
    terms: &mut [f64],
) {
    if level == boltzmann.len() {
        let w = match weighting {
            TraceWeighting::OperatorExact => {
                if multi > 0 {
                    1.0 - delta
                } else {
                    1.0
                }
            }
            TraceWeighting::Factorized => (1.0 - delta).powi(multi as i32),
        };
        terms[total] += partial * w;
        return;
    }
    let z = boltzmann[level];
    let mut factor = 1.0;
    for n in 0..=n_max {
        recurse(
            boltzmann,
            level + 1,
            partial * factor,
            total + n as usize,
            multi + u32::from(n >= 2),
            n_max,
            delta,
            weighting,
            terms,
        );
        factor *= z;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(delta: f64) -> InternalState {
        InternalState::new(delta).unwrap()
    }

    /// Closed-form single-level factor (1 − δz²)/(1 − z).
    fn closed_factor(z: f64, delta: f64) -> f64 {
        (1.0 - delta * z * z) / (1.0 - z)
    }

    #[test]
    fn single_level_matches_closed_form() {
        // z = 0.5, δ = 0.5 → (1 − 0.125)/0.5 = 1.75.
        let beta = 1.0;
        let mu = 0.5f64.ln(); // ε = 0 ⇒ z = e^{βμ} = 0.5
        let t = grand_trace_exact(&[0.0], beta, mu, &state(0.5), 200, TraceWeighting::OperatorExact)
            .unwrap();
        assert!((t - 1.75).abs() <= 1e-13);
        let tf =
            grand_trace_exact(&[0.0], beta, mu, &state(0.5), 200, TraceWeighting::Factorized)
                .unwrap();
        assert!((tf - 1.75).abs() <= 1e-13);
    }

    #[test]
    fn weightings_coincide_for_bose_and_fermi() {
        let levels = [0.1, 0.4, 0.9];
        for delta in [0.0, 1.0] {
            let a = grand_trace_exact(
                &levels,
                1.3,
                -0.5,
                &state(delta),
                4,
                TraceWeighting::OperatorExact,
            )
            .unwrap();
            let b = grand_trace_exact(
                &levels,
                1.3,
                -0.5,
                &state(delta),
                4,
                TraceWeighting::Factorized,
            )
            .unwrap();
            assert!((a - b).abs() <= 1e-14 * a.abs());
        }
    }

    #[test]
    fn bose_limit_matches_truncated_geometric_product() {
        let levels = [0.2, 0.7];
        let beta = 1.0;
        let mu = -0.3;
        let n_max = 5;
        let t = grand_trace_exact(
            &levels,
            beta,
            mu,
            &state(0.0),
            n_max,
            TraceWeighting::OperatorExact,
        )
        .unwrap();
        let expect: f64 = levels
            .iter()
            .map(|&e| {
                let z: f64 = (-beta * (e - mu)).exp();
                (1.0 - z.powi(n_max as i32 + 1)) / (1.0 - z)
            })
            .product();
        assert!((t - expect).abs() <= 1e-13 * expect);
    }

    #[test]
    fn factorized_converges_to_closed_form() {
        let levels = [0.0, 0.5];
        let beta = 1.0;
        let mu = -0.7; // z ≤ e^{-0.7} < 0.5
        let delta = 0.35;
        let closed: f64 = levels
            .iter()
            .map(|&e: &f64| closed_factor((-beta * (e - mu)).exp(), delta))
            .product();
        let mut last_err = f64::INFINITY;
        for n_max in [5, 10, 20, 60] {
            let t = grand_trace_exact(
                &levels,
                beta,
                mu,
                &state(delta),
                n_max,
                TraceWeighting::Factorized,
            )
            .unwrap();
            let err = (t - closed).abs();
            assert!(err <= last_err, "monotone convergence");
            last_err = err;
        }
        assert!(last_err <= 1e-15 * closed);
    }

    #[test]
    fn coefficient_gap_appears_at_order_four() {
        let levels = [0.3, 0.8];
        let beta = 0.9;
        let mu = -0.2;
        let delta = 0.5;
        let exact = grand_trace_terms(
            &levels,
            beta,
            mu,
            &state(delta),
            2,
            TraceWeighting::OperatorExact,
        )
        .unwrap();
        let fact = grand_trace_terms(
            &levels,
            beta,
            mu,
            &state(delta),
            2,
            TraceWeighting::Factorized,
        )
        .unwrap();
        for n in 0..=3 {
            assert!((exact[n] - fact[n]).abs() <= 1e-15, "order {n} must agree");
        }
        // Only the (2,2) configuration contributes to the order-4 gap:
        // (1−δ) − (1−δ)² = δ(1−δ) times its Boltzmann factor.
        let z1: f64 = (-beta * (levels[0] - mu)).exp();
        let z2: f64 = (-beta * (levels[1] - mu)).exp();
        let expected_gap = delta * (1.0 - delta) * z1 * z1 * z2 * z2;
        assert!(((exact[4] - fact[4]) - expected_gap).abs() <= 1e-15);
    }

    #[test]
    fn enumeration_cap_enforced() {
        let levels = vec![0.0; 12];
        let err = grand_trace_terms_with_limit(
            &levels,
            1.0,
            -1.0,
            &state(0.5),
            9,
            TraceWeighting::Factorized,
            1_000_000,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::EnumerationTooLarge { .. }));
    }
}
