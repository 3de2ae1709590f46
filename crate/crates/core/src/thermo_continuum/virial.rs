//! Cluster and virial expansion of the continuum equation of state.
//!
//! The pressure per thermal volume expands as `βPλ³ = Σ_l b_l z^l` with
//!
//! ```text
//! b_l = 1/l^{5/2} − [l even]·δ^{l/2}·2^{−3/2}/(l/2)^{5/2},
//! ```
//!
//! the even-l correction coming from the shifted-fugacity term g_{5/2}(δz²).
//! The standard cluster-to-virial mapping (a₂ = −b₂, a₃ = 4b₂² − 2b₃) then
//! reproduces the closed forms
//!
//! ```text
//! a₂ = (2δ−1)/2^{5/2},    a₃ = (2δ−1)²/8 − 2/(9√3),
//! ```
//!
//! so the virial coefficients here are re-derived from the expansion rather
//! than transcribed. a₂ changes sign at δ = 1/2: statistical attraction below,
//! repulsion above, and exactly at δ = 1/2 a weak attraction survives through
//! the negative third coefficient.

use super::ContinuumError;

/// Sign of the leading statistical interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// a₂ < 0 (δ < 1/2): pressure below classical, effective attraction.
    Attraction,
    /// a₂ > 0 (δ > 1/2): effective repulsion.
    Repulsion,
    /// a₂ = 0 and a₃ < 0 (δ = 1/2): attraction enters at third order.
    WeakAttractionThirdOrder,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Attraction => write!(f, "attraction"),
            Regime::Repulsion => write!(f, "repulsion"),
            Regime::WeakAttractionThirdOrder => write!(f, "weak_attraction_third_order"),
        }
    }
}

/// Second and third virial coefficients with their regime classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirialCoefficients {
    pub a2: f64,
    pub a3: f64,
    pub regime: Regime,
}

/// Closed-form virial coefficients at fermionic weight δ.
pub fn virial_coefficients(delta: f64) -> Result<VirialCoefficients, ContinuumError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(ContinuumError::InvalidDelta(delta));
    }
    let a2 = (2.0 * delta - 1.0) / 2.0f64.powf(2.5);
    let a3 = (2.0 * delta - 1.0).powi(2) / 8.0 - 2.0 / (9.0 * 3.0f64.sqrt());
    let regime = if a2 < 0.0 {
        Regime::Attraction
    } else if a2 > 0.0 {
        Regime::Repulsion
    } else {
        debug_assert!(a3 < 0.0);
        Regime::WeakAttractionThirdOrder
    };
    Ok(VirialCoefficients { a2, a3, regime })
}

/// Cluster coefficients `b_1..b_max_order` of the fugacity expansion of
/// `βPλ³` in the thermodynamic limit (index l−1 holds b_l). `max_order ≤ 8`.
pub fn fugacity_expansion(delta: f64, max_order: usize) -> Result<Vec<f64>, ContinuumError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(ContinuumError::InvalidDelta(delta));
    }
    if max_order == 0 || max_order > 8 {
        return Err(ContinuumError::InvalidParam(format!(
            "max_order must lie in 1..=8, got {max_order}"
        )));
    }
    let mut out = Vec::with_capacity(max_order);
    for l in 1..=max_order {
        let lf = l as f64;
        let mut b = lf.powf(-2.5);
        if l % 2 == 0 {
            let half = lf / 2.0;
            b -= delta.powi((l / 2) as i32) * 2.0f64.powf(-1.5) * half.powf(-2.5);
        }
        out.push(b);
    }
    Ok(out)
}

/// Standard mapping from cluster to virial coefficients (needs b up to b₃;
/// b₁ = 1 for this expansion): `a₂ = −b₂`, `a₃ = 4b₂² − 2b₃`.
pub fn cluster_to_virial(b: &[f64]) -> Result<(f64, f64), ContinuumError> {
    if b.len() < 3 {
        return Err(ContinuumError::InvalidParam(
            "cluster mapping needs coefficients through b3".into(),
        ));
    }
    let a2 = -b[1];
    let a3 = 4.0 * b[1] * b[1] - 2.0 * b[2];
    Ok((a2, a3))
}

/// Virial coefficients extracted from equation-of-state samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirialFit {
    pub a2: f64,
    pub a3: f64,
    /// Largest residual of the fitted model on (PV/NkT − 1)/x.
    pub max_residual: f64,
}

/// Least-squares extraction of (a₂, a₃) from sampled `(nλ³, PV/NkT)` pairs.
///
/// Fits `y = (p − 1)/x = a₂ + a₃x + a₄x²` — dividing by x first keeps the
/// known classical intercept exact and the quadratic term absorbs the next
/// expansion order, so the fitted a₂/a₃ carry no leading truncation bias.
pub fn fit_virial(points: &[(f64, f64)]) -> Result<VirialFit, ContinuumError> {
    if points.len() < 4 {
        return Err(ContinuumError::InvalidParam(
            "virial fit needs at least 4 sample points".into(),
        ));
    }
    let x_max = points
        .iter()
        .map(|&(x, _)| x)
        .fold(0.0f64, f64::max);
    if x_max.is_nan() || x_max <= 0.0 {
        return Err(ContinuumError::InvalidParam(
            "virial fit needs positive densities".into(),
        ));
    }
    // Normal equations for columns [1, t, t²], t = x/x_max.
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(x, p) in points {
        if x.is_nan() || x <= 0.0 {
            return Err(ContinuumError::InvalidParam(
                "virial fit needs positive densities".into(),
            ));
        }
        let t = x / x_max;
        let row = [1.0, t, t * t];
        let y = (p - 1.0) / x;
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let c = solve3(ata, aty).ok_or_else(|| {
        ContinuumError::InvalidParam("singular normal equations in virial fit".into())
    })?;
    let mut max_residual = 0.0f64;
    for &(x, p) in points {
        let t = x / x_max;
        let model = c[0] + c[1] * t + c[2] * t * t;
        max_residual = max_residual.max((model - (p - 1.0) / x).abs());
    }
    Ok(VirialFit {
        a2: c[0],
        a3: c[1] / x_max,
        max_residual,
    })
}

/// 3×3 linear solve with partial pivoting.
#[allow(clippy::needless_range_loop)] // two rows of one array in elimination
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut v = b[row];
        for k in (row + 1)..3 {
            v -= a[row][k] * x[k];
        }
        x[row] = v / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference constants kept verbatim
mod tests {
    use super::*;

    #[test]
    fn closed_forms_at_the_three_anchors() {
        let v0 = virial_coefficients(0.0).unwrap();
        assert!((v0.a2 + 0.176_776_695_296_636_87).abs() <= 1e-15);
        assert!((v0.a3 + 0.003_300_059_819_916_84).abs() <= 1e-15);
        assert_eq!(v0.regime, Regime::Attraction);

        let v1 = virial_coefficients(1.0).unwrap();
        assert!((v1.a2 - 0.176_776_695_296_636_87).abs() <= 1e-15);
        assert!((v1.a3 + 0.003_300_059_819_916_84).abs() <= 1e-15);
        assert_eq!(v1.regime, Regime::Repulsion);

        let vh = virial_coefficients(0.5).unwrap();
        assert_eq!(vh.a2, 0.0);
        assert!((vh.a3 + 0.128_300_059_819_916_84).abs() <= 1e-15);
        assert_eq!(vh.regime, Regime::WeakAttractionThirdOrder);
    }

    #[test]
    fn cluster_mapping_rederives_closed_forms() {
        for k in 0..=20 {
            let delta = k as f64 / 20.0;
            let b = fugacity_expansion(delta, 3).unwrap();
            let (a2, a3) = cluster_to_virial(&b).unwrap();
            let v = virial_coefficients(delta).unwrap();
            assert!((a2 - v.a2).abs() <= 1e-15, "delta = {delta}");
            assert!((a3 - v.a3).abs() <= 1e-15, "delta = {delta}");
        }
    }

    #[test]
    fn cluster_coefficients_match_series_structure() {
        let delta = 0.5;
        let b = fugacity_expansion(delta, 4).unwrap();
        assert_eq!(b[0], 1.0);
        assert_eq!(b[1], 0.0, "b2 vanishes exactly at delta = 1/2");
        assert!((b[2] - 3.0f64.powf(-2.5)).abs() <= 1e-16);
        assert!((b[3] - (1.0 / 32.0 - delta * delta / 16.0)).abs() <= 1e-16);
        // Odd orders carry no δ dependence.
        let b_low = fugacity_expansion(0.1, 4).unwrap();
        let b_high = fugacity_expansion(0.9, 4).unwrap();
        assert_eq!(b_low[2], b_high[2]);
    }

    #[test]
    fn cluster_coefficients_agree_with_pressure_series() {
        // Partial sums of βPλ³ = Σ b_l z^l must reproduce the g-combination
        // to the size of the first dropped term.
        let delta = 0.3;
        let b = fugacity_expansion(delta, 4).unwrap();
        for &z in &[1e-3, 1e-2] {
            let pressure = super::super::bose_integral(2.5, z).unwrap()
                - 2.0f64.powf(-1.5)
                    * super::super::bose_integral(2.5, delta * z * z).unwrap();
            let partial: f64 = b
                .iter()
                .enumerate()
                .map(|(i, &bl)| bl * z.powi(i as i32 + 1))
                .sum();
            let bound = 2.0 * z.powi(5) / 5.0f64.powf(2.5);
            assert!(
                (pressure - partial).abs() <= bound.max(1e-15),
                "z = {z}: {pressure} vs {partial}"
            );
        }
    }

    #[test]
    fn fit_recovers_exact_polynomial() {
        // Synthetic data from a known (a2, a3, a4).
        let (a2, a3, a4) = (-0.17, 0.06, 0.4);
        let points: Vec<(f64, f64)> = (1..=20)
            .map(|k| {
                let x = k as f64 * 5e-4;
                (x, 1.0 + a2 * x + a3 * x * x + a4 * x * x * x)
            })
            .collect();
        let fit = fit_virial(&points).unwrap();
        assert!((fit.a2 - a2).abs() <= 1e-12);
        assert!((fit.a3 - a3).abs() <= 1e-9);
        assert!(fit.max_residual <= 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(virial_coefficients(1.5).is_err());
        assert!(fugacity_expansion(0.5, 0).is_err());
        assert!(fugacity_expansion(0.5, 9).is_err());
        assert!(fit_virial(&[(0.1, 1.0)]).is_err());
    }
}
