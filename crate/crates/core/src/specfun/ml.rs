//! Discrete Mittag-Leffler sequences
//!
//! ```text
//! 𝓔^h_{α,β}(λ, n) = Σ_{j≥0} h^{αj+β} k^{αj+β}(n−1) λ^j,    |λ| < h^{−α},
//! ```
//!
//! the eigen-sequences of the Caputo h-difference. The coefficients
//! h^{αj+β} k^{αj+β}(n−1) depend on (α, β, h, n) only, so [`MlSeries`]
//! caches them and evaluates the power series at many λ (the Fourier
//! multiplier path feeds one λ = −|ξ|² per grid frequency).
//!
//! Note: the series above is the defining expression. At α = β = 1 it sums
//! to h·(1−hλ)^{−n}, carrying a leading factor h; this is the normalization
//! under which (1/h)·𝓔^h_{α,1}(−|ξ|², n) reduces to the classical multiplier
//! (1+h|ξ|²)^{−n} at α = 1.

use crate::error::{Error, Result};
use crate::gammafn::lgamma;
use crate::summation::Compensated;

/// Result of a series evaluation with truncation diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct MlEval {
    pub value: f64,
    /// Number of series terms consumed.
    pub terms: usize,
    /// Geometric bound on the dropped tail.
    pub tail_bound: f64,
    /// ln of the largest |term| seen; eps·exp(this) estimates the
    /// cancellation floor of the alternating-λ case.
    pub ln_max_term: f64,
}

/// Coefficient cache for 𝓔^h_{α,β}(·, n) at fixed (α, β, h, n).
#[derive(Debug, Clone)]
pub struct MlSeries {
    alpha: f64,
    beta: f64,
    h: f64,
    n: usize,
    coeffs: Vec<f64>,
}

impl MlSeries {
    pub fn new(alpha: f64, beta: f64, h: f64, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::input(format!("ml: alpha must lie in (0,1], got {alpha}")));
        }
        if !(beta > 0.0) {
            return Err(Error::input(format!("ml: beta must be positive, got {beta}")));
        }
        if !(h > 0.0) {
            return Err(Error::input(format!("ml: h must be positive, got {h}")));
        }
        if n == 0 {
            return Err(Error::input("ml: sequence index n starts at 1"));
        }
        Ok(Self { alpha, beta, h, n, coeffs: Vec::new() })
    }

    /// Radius of the convergence disc in λ.
    pub fn disc_radius(&self) -> f64 {
        self.h.powf(-self.alpha)
    }

    /// Coefficients c_0..c_len accumulated so far (grown by `eval`).
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// c_j = h^{αj+β} k^{αj+β}(n−1), via log-Γ (γ = αj+β > 0, pole-free).
    fn coeff(&mut self, j: usize) -> f64 {
        while self.coeffs.len() <= j {
            let i = self.coeffs.len();
            let gamma = self.alpha * i as f64 + self.beta;
            let m = (self.n - 1) as f64;
            let ln_k = if self.n == 1 {
                0.0
            } else {
                lgamma(m + gamma) - lgamma(gamma) - lgamma(m + 1.0)
            };
            let c = (gamma * self.h.ln() + ln_k).exp();
            self.coeffs.push(c);
        }
        self.coeffs[j]
    }

    /// Sum the series at λ with tolerance `tol` (relative to the partial
    /// sum, with a geometric tail certificate).
    pub fn eval(&mut self, lambda: f64, tol: f64) -> Result<MlEval> {
        let q = lambda.abs() * self.h.powf(self.alpha);
        if !(q < 1.0) {
            return Err(Error::domain(format!(
                "lambda = {lambda} outside the convergence disc |lambda| < {:.6e}",
                self.disc_radius()
            )));
        }

        let mut acc = Compensated::new();
        let mut lambda_pow = 1.0;
        let mut ln_max_term = f64::NEG_INFINITY;
        let mut small_streak = 0;
        let mut j = 0usize;
        loop {
            let term = self.coeff(j) * lambda_pow;
            acc.add(term);
            let mag = term.abs();
            if mag > 0.0 {
                ln_max_term = ln_max_term.max(mag.ln());
            }

            let scale = acc.value().abs().max(f64::MIN_POSITIVE);
            if mag < tol * scale {
                small_streak += 1;
            } else {
                small_streak = 0;
            }

            // Ratio of consecutive terms is q·Π_{i<n-1}(γ+α+i)/(γ+i)
            // ≤ q·exp(α(n−1)/γ), monotone decreasing in j.
            let gamma = self.alpha * j as f64 + self.beta;
            let ratio = q * (self.alpha * (self.n - 1) as f64 / gamma).exp();
            if small_streak >= 3 && ratio < 1.0 {
                let tail = mag * ratio / (1.0 - ratio);
                if tail < tol * scale {
                    return Ok(MlEval {
                        value: acc.value(),
                        terms: j + 1,
                        tail_bound: tail,
                        ln_max_term,
                    });
                }
            }

            lambda_pow *= lambda;
            j += 1;
            if j > 5_000_000 {
                return Err(Error::Truncation { achieved: mag, tol, terms: j });
            }
        }
    }
}

/// 𝓔^h_{α,β}(λ, n) with the default tolerance 1e-12.
pub fn ml_discrete(alpha: f64, beta: f64, lambda: f64, n: usize, h: f64) -> Result<f64> {
    Ok(ml_discrete_with_info(alpha, beta, lambda, n, h)?.value)
}

/// Same, returning truncation diagnostics.
pub fn ml_discrete_with_info(
    alpha: f64,
    beta: f64,
    lambda: f64,
    n: usize,
    h: f64,
) -> Result<MlEval> {
    MlSeries::new(alpha, beta, h, n)?.eval(lambda, 1e-12)
}
