//! Bracketed scalar root refinement shared by the μ and fugacity solvers.
//!
//! Policy: never iterate outside a bracket. Secant steps are taken only when
//! they land strictly inside the current bracket; otherwise fall back to
//! bisection. The target functions have poles just outside their brackets,
//! so an unguarded Newton/secant iteration is not acceptable here.

/// Solves `f(x) = target` for `f` continuous on `[lo, hi]` with
/// `f(lo) ≤ target ≤ f(hi)`. Returns `(root, residual)` where
/// `residual = f(root) − target` at the returned point.
pub(crate) fn solve_monotone(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    tol_residual: f64,
    max_iter: usize,
) -> (f64, f64) {
    let mut flo = f(lo) - target;
    let mut fhi = f(hi) - target;
    debug_assert!(flo <= 0.0 && fhi >= 0.0, "invalid bracket");

    if flo == 0.0 {
        return (lo, 0.0);
    }
    if fhi == 0.0 {
        return (hi, 0.0);
    }

    let mut best = (lo, flo);
    for iter in 0..max_iter {
        // Secant candidate, accepted only strictly inside the bracket; every
        // third step is a plain bisection so the bracket provably shrinks.
        let mut x = if fhi != flo {
            lo - flo * (hi - lo) / (fhi - flo)
        } else {
            0.5 * (lo + hi)
        };
        if !(x > lo && x < hi) || iter % 3 == 2 {
            x = 0.5 * (lo + hi);
        }
        if x <= lo || x >= hi {
            break; // bracket exhausted at f64 resolution
        }
        let fx = f(x) - target;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= tol_residual {
            return (x, fx);
        }
        if fx < 0.0 {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    if fhi.abs() < best.1.abs() {
        best = (hi, fhi);
    }
    best
}
