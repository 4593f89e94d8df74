//! Gamma-function helpers shared by the special-function modules.
//!
//! The Wright series needs 1/Γ(x) at arbitrarily negative real x, where Γ
//! has poles: 1/Γ is entire and the poles give exact zeros. Everything is
//! routed through `lgamma` plus the reflection formula so series terms can
//! be assembled in log space and exponentiated once.

/// Natural log of |Γ(x)| (libm, ~1 ulp).
pub fn lgamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// ln Γ(x) together with the sign of Γ(x).
pub fn lgamma_signed(x: f64) -> (f64, i32) {
    libm::lgamma_r(x)
}

/// Γ(x) for x > 0.
pub fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    lgamma(x).exp()
}

/// sin(πx) evaluated through the half-integer reduction, accurate for
/// large |x| where `(PI * x).sin()` has already lost every digit.
pub fn sin_pi(x: f64) -> f64 {
    let m = x.round();
    let r = x - m;
    let s = (std::f64::consts::PI * r).sin();
    // sin(π(m + r)) = (-1)^m sin(πr)
    if (m as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// 1/Γ(x) for any real x; exact 0 at the poles x = 0, −1, −2, …
pub fn recip_gamma(x: f64) -> f64 {
    let (ln, sign) = ln_abs_recip_gamma(x);
    if sign == 0 {
        0.0
    } else {
        sign as f64 * ln.exp()
    }
}

/// (ln |1/Γ(x)|, sign of 1/Γ(x)); sign 0 encodes a pole of Γ (value 0).
///
/// For x ≤ 0.5 uses the reflection 1/Γ(x) = sin(πx)·Γ(1−x)/π, which keeps
/// the evaluation in the pole-free right half-line.
pub fn ln_abs_recip_gamma(x: f64) -> (f64, i32) {
    if x > 0.5 {
        (-lgamma(x), 1)
    } else {
        let s = sin_pi(x);
        if s == 0.0 {
            return (f64::NEG_INFINITY, 0);
        }
        let ln = s.abs().ln() + lgamma(1.0 - x) - std::f64::consts::PI.ln();
        (ln, if s > 0.0 { 1 } else { -1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_small_integers() {
        assert_relative_eq!(gamma_pos(1.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_pos(5.0), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_pos(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn recip_gamma_poles_are_exact_zero() {
        for k in 0..50 {
            assert_eq!(recip_gamma(-(k as f64)), 0.0);
        }
    }

    #[test]
    fn recip_gamma_reflection_region() {
        // 1/Γ(-0.5) = -1/(2√π)
        assert_relative_eq!(
            recip_gamma(-0.5),
            -1.0 / (2.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-13
        );
        // 1/Γ(-1.5) = 3/(4√π)
        assert_relative_eq!(
            recip_gamma(-1.5),
            3.0 / (4.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-13
        );
    }

    #[test]
    fn sin_pi_large_arguments() {
        assert_relative_eq!(sin_pi(1e8 + 0.25), (std::f64::consts::PI * 0.25).sin(), max_relative = 1e-12);
        assert_eq!(sin_pi(-12345.0), 0.0);
    }
}
