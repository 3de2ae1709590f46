//! Bose–Einstein integrals `g_n(z) = Σ_{k≥1} z^k/k^n` and their quadrature
//! oracle, plus the Riemann zeta evaluation they need.
//!
//! Three independent routes are kept deliberately:
//!
//! * power series with compensated summation and an explicit tail bound
//!   (z ≤ 0.75),
//! * the small-α expansion `Li_s(e^{−α}) = Γ(1−s)α^{s−1} + Σ_k ζ(s−k)(−α)^k/k!`
//!   for z > 0.75 and non-integer order, which stays accurate through z → 1,
//! * adaptive Simpson quadrature of the defining integral
//!   `(1/Γ(n)) ∫₀^∞ x^{n−1} dx/(z⁻¹e^x − 1)` after the substitution x = u²
//!   that makes the integrand analytic at the origin.
//!
//! The quadrature route never feeds the thermodynamics; it exists to check
//! the other two.

use super::ContinuumError;
use statrs::function::gamma::gamma;

/// Riemann zeta, accurate to ≈1e−15 relative for any finite s ≠ 1.
///
/// For s ≥ 1/2 an Euler–Maclaurin sum is well conditioned; below 1/2 the
/// functional equation `ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)` maps
/// back there (a direct Euler–Maclaurin sum at negative s loses digits to
/// cancellation against the integral term). Returns NaN at s = 1.
pub fn riemann_zeta(s: f64) -> f64 {
    if s == 1.0 {
        return f64::NAN;
    }
    if s == 0.0 {
        return -0.5; // the reflection below would evaluate 0·∞ here
    }
    if s < 0.5 {
        let pi = std::f64::consts::PI;
        return 2.0f64.powf(s)
            * pi.powf(s - 1.0)
            * (pi * s / 2.0).sin()
            * gamma(1.0 - s)
            * zeta_euler_maclaurin(1.0 - s);
    }
    zeta_euler_maclaurin(s)
}

/// Euler–Maclaurin with 12 Bernoulli corrections; callers guarantee s ≥ 1/2,
/// s ≠ 1.
fn zeta_euler_maclaurin(s: f64) -> f64 {
    // B_{2j} as (numerator, denominator), j = 1..=12.
    const BERNOULLI: [(f64, f64); 12] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
    ];
    const N: usize = 64;
    let nf = N as f64;

    let mut sum = Kahan::new();
    for k in 1..N {
        sum.add((k as f64).powf(-s));
    }
    sum.add(nf.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * nf.powf(-s));

    let mut pochhammer = s; // Π_{m=0}^{2j-2}(s+m), one factor at j = 1
    let mut factorial = 2.0; // (2j)!
    let mut npow = nf.powf(-s - 1.0); // N^{-s-2j+1}
    for (j, &(num, den)) in BERNOULLI.iter().enumerate() {
        sum.add(num / den / factorial * pochhammer * npow);
        let two_j = 2.0 * (j as f64 + 1.0);
        pochhammer *= (s + two_j - 1.0) * (s + two_j);
        factorial *= (two_j + 1.0) * (two_j + 2.0);
        npow /= nf * nf;
    }
    sum.value()
}

/// Γ(1−s) for non-integer s > 0, via the reflection formula.
fn gamma_one_minus(s: f64) -> f64 {
    std::f64::consts::PI / ((std::f64::consts::PI * s).sin() * gamma(s))
}

fn validate_order_and_z(order: f64, z: f64) -> Result<(), ContinuumError> {
    if order <= 0.0 || !order.is_finite() {
        return Err(ContinuumError::UnsupportedOrder(order));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(ContinuumError::PolylogArgument(z));
    }
    Ok(())
}

/// `g_order(z)` for z ∈ [0, 1]; z = 1 requires order > 1 (else the series
/// diverges and a domain error is returned).
pub fn bose_integral(order: f64, z: f64) -> Result<f64, ContinuumError> {
    validate_order_and_z(order, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        if order > 1.0 {
            return Ok(riemann_zeta(order));
        }
        return Err(ContinuumError::PolylogDivergent { order });
    }
    let near_integer = (order - order.round()).abs() < 1e-9;
    if z <= 0.75 || near_integer {
        polylog_series(order, z)
    } else {
        Ok(polylog_expansion(order, z))
    }
}

/// Direct power series with Kahan summation; the remainder after k terms is
/// bounded by z^{k+1}/((k+1)^order (1−z)).
fn polylog_series(order: f64, z: f64) -> Result<f64, ContinuumError> {
    let mut sum = Kahan::new();
    let mut zk = 1.0f64;
    let max_terms = 20_000_000u64;
    for k in 1..=max_terms {
        zk *= z;
        let kf = k as f64;
        sum.add(zk / kf.powf(order));
        let tail = zk * z / ((kf + 1.0).powf(order) * (1.0 - z));
        if tail <= 1e-16 * sum.value().max(1e-300) {
            return Ok(sum.value());
        }
    }
    Err(ContinuumError::InvalidParam(format!(
        "polylog series did not reach its tail bound for order {order}, z = {z}"
    )))
}

/// Expansion in α = −ln z about z = 1 (non-integer order only).
fn polylog_expansion(order: f64, z: f64) -> f64 {
    let alpha = -z.ln();
    let mut sum = Kahan::new();
    sum.add(gamma_one_minus(order) * alpha.powf(order - 1.0));
    // ζ arguments below ≈ −13 are outside the zeta routine's range; their
    // terms are < 1e−20 at α ≤ ln(1/0.75) and can be dropped.
    let k_max = (order + 13.0).floor() as usize;
    let mut alpha_pow = 1.0; // (−α)^k / k!
    for k in 0..=k_max {
        sum.add(riemann_zeta(order - k as f64) * alpha_pow);
        alpha_pow *= -alpha / (k as f64 + 1.0);
    }
    sum.value()
}

/// Quadrature oracle for [`bose_integral`]:
/// `(1/Γ(n)) ∫₀^∞ 2u^{2n−1} z du / (e^{u²} − z)` (x = u² substitution).
/// Independent of the series/expansion route; supports order ≥ 3/2 so the
/// integrand stays bounded at u = 0 even for z = 1.
pub fn bose_integral_quadrature(order: f64, z: f64) -> Result<f64, ContinuumError> {
    validate_order_and_z(order, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    if order < 1.5 {
        return Err(ContinuumError::UnsupportedOrder(order));
    }
    let integrand = move |u: f64| -> f64 {
        if u == 0.0 {
            return if z == 1.0 && order == 1.5 { 2.0 } else { 0.0 };
        }
        2.0 * u.powf(2.0 * order - 1.0) * z / ((u * u).exp_m1() + (1.0 - z))
    };
    let integral = adaptive_simpson(&integrand, 0.0, 8.6, 1e-13);
    Ok(integral / gamma(order))
}

/// Fermi–Dirac counterpart,
/// `(1/Γ(n)) ∫₀^∞ 2u^{2n−1} z du / (e^{u²} + z)`, used as an independent
/// cross-check of the Fermi limit of the equation of state.
pub fn fermi_integral_quadrature(order: f64, z: f64) -> Result<f64, ContinuumError> {
    validate_order_and_z(order, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    let integrand = move |u: f64| -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        2.0 * u.powf(2.0 * order - 1.0) * z / ((u * u).exp() + z)
    };
    let integral = adaptive_simpson(&integrand, 0.0, 8.6, 1e-13);
    Ok(integral / gamma(order))
}

struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn new() -> Self {
        Self {
            sum: 0.0,
            carry: 0.0,
        }
    }

    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
