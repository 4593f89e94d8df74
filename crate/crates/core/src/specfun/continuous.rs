//! Continuous-case series: the Mittag-Leffler function E_{α,β} and the
//! scaled Wright function ψ_{α,β}(t,s) = t^{β−1} W_{−α,β}(−s t^{−α}).
//!
//! These exist as cross-validation oracles for the discrete objects, so
//! only the power-series regime is implemented. The Wright series
//! alternates with terms that peak near exp(c_α·x^{1/(1−α)}) before
//! decaying; past the point where ε times that peak overtakes the function
//! value, a double simply cannot hold the answer, so the safe argument
//! range is bounded by [`wright_series_limit`] and quadrature callers
//! flush the superexponentially small tail to zero.

use crate::error::{Error, Result};
use crate::gammafn::{lgamma, ln_abs_recip_gamma, recip_gamma};
use crate::summation::Compensated;

/// Default cap on |z| for the Mittag-Leffler series.
pub const ML_SERIES_Z_MAX: f64 = 50.0;

/// E_{α,β}(z) = Σ_{k≥0} z^k / Γ(αk+β) for α, β > 0.
pub fn ml_continuous(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::input(format!(
            "ml_continuous needs alpha, beta > 0, got ({alpha}, {beta})"
        )));
    }
    if !(z.abs() <= ML_SERIES_Z_MAX) {
        return Err(Error::domain(format!(
            "|z| = {} above the series-safe bound {ML_SERIES_Z_MAX}",
            z.abs()
        )));
    }
    if z == 0.0 {
        return Ok(recip_gamma(beta));
    }

    let ln_abs_z = z.abs().ln();
    let sign_z = z.signum();
    let mut acc = Compensated::new();
    let mut sign = 1.0;
    let mut small_streak = 0;
    for k in 0..100_000 {
        let ln_term = k as f64 * ln_abs_z - lgamma(alpha * k as f64 + beta);
        let term = sign * ln_term.exp();
        acc.add(term);
        if term.abs() <= f64::EPSILON * acc.value().abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 && k as f64 * alpha + beta > z.abs() {
                return Ok(acc.value());
            }
        } else {
            small_streak = 0;
        }
        if sign_z < 0.0 {
            sign = -sign;
        }
    }
    Err(Error::Truncation { achieved: f64::NAN, tol: f64::EPSILON, terms: 100_000 })
}

/// Largest |x| for which the series for W_{−α,β}(−x) keeps roughly half the
/// mantissa: the peak term exponent c_α x^{1/(1−α)} stays below |ln ε|/2.
pub fn wright_series_limit(alpha: f64) -> f64 {
    let c = (1.0 - alpha) * alpha.powf(alpha / (1.0 - alpha));
    (18.4 / c).powf(1.0 - alpha)
}

/// W_{−α,β}(−x) by direct series, x within [`wright_series_limit`].
/// Terms hitting a pole of Γ vanish exactly through the entire 1/Γ.
fn wright_neg_series(alpha: f64, beta: f64, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return recip_gamma(beta);
    }
    let ln_x = x.ln();
    let mut acc = Compensated::new();
    let mut max_term = 0.0f64;
    let mut small_streak = 0;
    for k in 0..100_000 {
        let (ln_rg, sign_rg) = ln_abs_recip_gamma(beta - alpha * k as f64);
        if sign_rg != 0 {
            let ln_term = k as f64 * ln_x - lgamma(k as f64 + 1.0) + ln_rg;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * sign_rg as f64 * ln_term.exp();
            acc.add(term);
            max_term = max_term.max(term.abs());
            if term.abs() <= 1e-20 * max_term.max(f64::MIN_POSITIVE) {
                small_streak += 1;
                if small_streak >= 4 && (k as f64) > x {
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
    }
    acc.value()
}

/// W_{−α,β}(−x) for quadrature use: beyond the series-safe range the true
/// value is superexponentially small, so it is flushed to zero instead of
/// erroring.
pub fn wright_series_neg(alpha: f64, beta: f64, x: f64) -> f64 {
    if x > wright_series_limit(alpha) {
        0.0
    } else {
        wright_neg_series(alpha, beta, x)
    }
}

/// Scaled Wright function ψ_{α,β}(t, s) = t^{β−1} W_{−α,β}(−s t^{−α}).
pub fn scaled_wright_continuous(alpha: f64, beta: f64, t: f64, s: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::input(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if !(beta >= 0.0) {
        return Err(Error::input(format!("beta must be >= 0, got {beta}")));
    }
    if !(t > 0.0) {
        return Err(Error::input(format!("t must be positive, got {t}")));
    }
    if !(s >= 0.0) {
        return Err(Error::input(format!("s must be >= 0, got {s}")));
    }
    let x = s * t.powf(-alpha);
    if x > wright_series_limit(alpha) {
        return Err(Error::domain(format!(
            "wright argument {x:.3e} above the series-safe bound {:.3e}",
            wright_series_limit(alpha)
        )));
    }
    Ok(t.powf(beta - 1.0) * wright_neg_series(alpha, beta, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ml_at_one_one_is_exp() {
        assert_relative_eq!(ml_continuous(1.0, 1.0, 1.0).unwrap(), 1.0f64.exp(), max_relative = 1e-13);
        assert_relative_eq!(ml_continuous(1.0, 1.0, -3.5).unwrap(), (-3.5f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn ml_at_zero_is_reciprocal_gamma() {
        assert_relative_eq!(ml_continuous(0.7, 1.3, 0.0).unwrap(), recip_gamma(1.3), max_relative = 1e-14);
    }

    #[test]
    fn ml_two_one_is_cosh_sqrt() {
        // E_2(z²) = cosh(z)
        assert_relative_eq!(ml_continuous(2.0, 1.0, 4.0).unwrap(), 2.0f64.cosh(), max_relative = 1e-13);
        assert_relative_eq!(ml_continuous(2.0, 1.0, 4.0).unwrap(), 3.7621957, max_relative = 1e-7);
    }

    #[test]
    fn ml_domain_and_input_errors() {
        assert!(ml_continuous(1.0, 1.0, 51.0).is_err());
        assert!(ml_continuous(0.0, 1.0, 1.0).is_err());
        assert!(ml_continuous(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn scaled_wright_at_s_zero() {
        for &(alpha, beta, t) in &[(0.5, 0.5, 2.0), (0.3, 1.0, 0.7), (0.8, 0.0, 1.5)] {
            let v = scaled_wright_continuous(alpha, beta, t, 0.0).unwrap();
            assert_relative_eq!(v, t.powf(beta - 1.0) * recip_gamma(beta), max_relative = 1e-13);
        }
    }

    #[test]
    fn scaled_wright_half_half_is_gaussian() {
        // W_{−1/2,1/2}(−x) = e^{−x²/4}/√π
        let v = scaled_wright_continuous(0.5, 0.5, 1.0, 1.0).unwrap();
        let expect = (-0.25f64).exp() / std::f64::consts::PI.sqrt();
        assert_relative_eq!(v, expect, max_relative = 1e-12);
        assert_relative_eq!(v, 0.4393913, max_relative = 1e-6);

        for &x in &[0.3, 1.7, 4.2] {
            let w = wright_series_neg(0.5, 0.5, x);
            assert_relative_eq!(
                w,
                (-x * x / 4.0).exp() / std::f64::consts::PI.sqrt(),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn m_wright_is_a_probability_density() {
        // ∫_0^∞ W_{−α,1−α}(−τ) dτ = 1, trapezoid on a fine grid
        for &alpha in &[0.3, 0.5, 0.7] {
            let limit = wright_series_limit(alpha);
            let n = 40_000;
            let dt = limit / n as f64;
            let mut sum = 0.0;
            for i in 0..=n {
                let w = wright_series_neg(alpha, 1.0 - alpha, i as f64 * dt);
                sum += if i == 0 || i == n { 0.5 * w } else { w };
            }
            assert_relative_eq!(sum * dt, 1.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn scaled_wright_domain_error_above_limit() {
        assert!(scaled_wright_continuous(0.5, 0.5, 1.0, 100.0).is_err());
        // the same argument is fine after rescaling t
        assert!(scaled_wright_continuous(0.5, 0.5, 400.0, 100.0).is_ok());
    }

    #[test]
    fn flushed_tail_is_zero() {
        assert_eq!(wright_series_neg(0.5, 0.5, 1e6), 0.0);
    }
}
