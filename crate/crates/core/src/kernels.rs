//! Kernels of the discrete-time heat semigroup and its fractional version.
//!
//! The classical object is the discrete Gaussian
//!
//! ```text
//! 𝒢_{n,h}(x) = (1/(h^n Γ(n))) ∫_0^∞ e^{−t/h} t^{n−1} G_t(x) dt,
//! ```
//!
//! a Gamma(n)-mixture of heat kernels with Fourier multiplier
//! (1+h|ξ|²)^{−n}. The fractional fundamental solution subordinates it:
//!
//! ```text
//! 𝒢^α_{n,h}(x) = Σ_{j≥1} φ^h_{α,1−α}(n−1, j−1) 𝒢_{j,h}(x),
//! ```
//!
//! with nonnegative weights summing to 1 (h ≤ 1), multiplier
//! (1/h)𝓔^h_{α,1}(−|ξ|², n), and second moment 2N h^α k^{α+1}(n−1).
//!
//! All kernels are radial; pointwise evaluation accepts a point in R^N with
//! N ∈ {1,2,3}.

use crate::cesaro::cesaro_number;
use crate::error::{Error, Result};
use crate::gammafn::lgamma;
use crate::quad::{adaptive_simpson, gamma_mixture_adaptive};
use crate::specfun::{subordination_row, wright_series_limit, wright_series_neg, MlSeries};

/// Default truncation tolerance for subordination series.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on subordination terms.
pub const J_MAX: usize = 65_536;

/// Use the Mittag-Leffler series branch of the multiplier while
/// h^α|ξ|² ≤ this; beyond it (and whenever the series is ill-conditioned)
/// the subordination branch takes over.
pub const ML_BRANCH_LIMIT: f64 = 0.9;

/// Cancellation guard: the ML branch is abandoned if its terms would
/// exceed this magnitude (the sum is O(1), so ε·max-term bounds the error).
const ML_MAX_TERM: f64 = 1e4;

fn check_dim(dim: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::input(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    Ok(())
}

/// Heat kernel G_t(x) = (4πt)^{−N/2} e^{−|x|²/(4t)}.
pub fn gaussian_kernel(t: f64, x: &[f64]) -> Result<f64> {
    check_dim(x.len())?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("gaussian kernel needs t > 0, got {t}")));
    }
    Ok(gaussian_radial(t, norm_sq(x), x.len()))
}

fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn gaussian_radial(t: f64, r_sq: f64, dim: usize) -> f64 {
    let scale = (4.0 * std::f64::consts::PI * t).powf(-(dim as f64) / 2.0);
    scale * (-r_sq / (4.0 * t)).exp()
}

/// 𝓕(G_t)(ξ) = e^{−t|ξ|²}.
pub fn gaussian_multiplier(t: f64, xi_sq: f64) -> f64 {
    (-t * xi_sq).exp()
}

/// Discrete Gaussian 𝒢_{n,h}(x).
///
/// At x = 0 the defining integral converges iff 2n > N, where it has the
/// closed form (4πh)^{−N/2} Γ(n−N/2)/Γ(n); the divergent cases return +∞.
/// Elsewhere the Gamma(n)-mixture is integrated by an adaptive generalized
/// Gauss–Laguerre rule in u = t/h (two successive node counts must agree to
/// 1e-10 relative).
pub fn discrete_gaussian(n: usize, h: f64, x: &[f64]) -> Result<f64> {
    check_dim(x.len())?;
    if n == 0 {
        return Err(Error::input("discrete gaussian index n starts at 1"));
    }
    if !(h > 0.0) {
        return Err(Error::input(format!("h must be positive, got {h}")));
    }
    let dim = x.len();
    let r_sq = norm_sq(x);
    if r_sq == 0.0 {
        if 2 * n <= dim {
            return Ok(f64::INFINITY);
        }
        let half_dim = dim as f64 / 2.0;
        let ln = -half_dim * (4.0 * std::f64::consts::PI * h).ln()
            + lgamma(n as f64 - half_dim)
            - lgamma(n as f64);
        return Ok(ln.exp());
    }
    let (value, _nodes) =
        gamma_mixture_adaptive(n as f64 - 1.0, 1e-10, |u| gaussian_radial(h * u, r_sq, dim))?;
    Ok(value)
}

/// 𝓕(𝒢_{n,h})(ξ) = (1+h|ξ|²)^{−n}, in log space so large n cannot overflow.
pub fn discrete_gaussian_multiplier(n: usize, h: f64, xi_sq: f64) -> f64 {
    (-(n as f64) * (h * xi_sq).ln_1p()).exp()
}

/// Pointwise evaluator for 𝒢^α_{n,h}: subordination weights are computed
/// once and shared across evaluation points.
#[derive(Debug, Clone)]
pub struct FracFundamental {
    alpha: f64,
    h: f64,
    n: usize,
    dim: usize,
    weights: Vec<f64>,
    tail: f64,
}

impl FracFundamental {
    pub fn new(alpha: f64, h: f64, n: usize, dim: usize, tol: f64) -> Result<Self> {
        check_dim(dim)?;
        if n == 0 {
            return Err(Error::input("kernel index n starts at 1"));
        }
        let row = subordination_row(alpha, h, n - 1, tol, J_MAX)?;
        Ok(Self { alpha, h, n, dim, weights: row.weights, tail: row.tail })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of subordination terms kept.
    pub fn terms(&self) -> usize {
        self.weights.len()
    }

    /// Weight mass left out by truncation.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Positivity of the kernel is guaranteed only for h ≤ 1.
    pub fn positivity_guaranteed(&self) -> bool {
        self.h <= 1.0
    }

    /// 𝒢^α_{n,h}(x) = Σ_j φ^h_{α,1−α}(n−1, j−1)·𝒢_{j,h}(x).
    ///
    /// At x = 0 in dimension ≥ 2 the j = 1 component already diverges, and
    /// its weight is positive for α < 1, so the value is +∞ (for α = 1 the
    /// single surviving term decides).
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::input(format!(
                "point dimension {} does not match kernel dimension {}",
                x.len(),
                self.dim
            )));
        }
        let mut acc = 0.0;
        for (idx, &w) in self.weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let g = discrete_gaussian(idx + 1, self.h, x)?;
            if g.is_infinite() {
                return Ok(if w > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY });
            }
            acc += w * g;
        }
        Ok(acc)
    }
}

/// A pointwise kernel request (spec-level entry point; heavier workloads
/// should hold a [`FracFundamental`] and reuse it across points).
#[derive(Debug, Clone)]
pub struct KernelQuery {
    pub dim: usize,
    pub n: usize,
    pub alpha: f64,
    pub h: f64,
    pub point: Vec<f64>,
}

/// 𝒢^α_{n,h}(x) for a single query.
pub fn frac_fundamental(query: &KernelQuery) -> Result<f64> {
    if query.point.len() != query.dim {
        return Err(Error::input("query point does not match dim"));
    }
    FracFundamental::new(query.alpha, query.h, query.n, query.dim, DEFAULT_TOL)?.eval(&query.point)
}

/// Independent evaluation of 𝒢^α_{n,h}(x) through the double integral
///
/// ```text
/// (1/(h^n Γ(n))) ∫_0^∞ e^{−s/h} s^{n−1} [∫_0^∞ M_α(τ) G_{s^α τ}(x) dτ] ds,
/// ```
///
/// where M_α(τ) = W_{−α,1−α}(−τ). The outer integral is the same adaptive
/// Gamma-mixture rule as `discrete_gaussian`; the inner one is adaptive
/// Simpson over the compactly-effective support of M_α. This route shares
/// no code path with the subordination series and serves as its oracle.
pub fn frac_fundamental_quadrature(
    alpha: f64,
    h: f64,
    n: usize,
    x: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    check_dim(x.len())?;
    if n == 0 {
        return Err(Error::input("kernel index n starts at 1"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::input(format!(
            "quadrature route needs alpha in (0,1), got {alpha}"
        )));
    }
    if !(h > 0.0) {
        return Err(Error::input(format!("h must be positive, got {h}")));
    }
    let dim = x.len();
    let r_sq = norm_sq(x);
    if r_sq == 0.0 {
        return Err(Error::domain("quadrature representation requires x != 0"));
    }
    let tau_max = wright_series_limit(alpha);
    let inner = |s: f64| -> f64 {
        adaptive_simpson(
            &|tau: f64| {
                if tau <= 0.0 {
                    return 0.0;
                }
                let t = s.powf(alpha) * tau;
                wright_series_neg(alpha, 1.0 - alpha, tau) * gaussian_radial(t, r_sq, dim)
            },
            0.0,
            tau_max,
            1e-12,
        )
    };
    let (value, _nodes) = gamma_mixture_adaptive(n as f64 - 1.0, rel_tol, |u| inner(h * u))?;
    Ok(value)
}

/// Second moment ∫ |x|² 𝒢^α_{n,h}(x) dx = 2·N·h^α·k^{α+1}(n−1).
pub fn frac_second_moment(alpha: f64, n: usize, h: f64, dim: usize) -> f64 {
    assert!(n >= 1);
    2.0 * dim as f64 * h.powf(alpha) * cesaro_number(alpha + 1.0, n - 1)
}

/// Fourier multiplier of 𝒢^α_{n,h}: (1/h)·𝓔^h_{α,1}(−|ξ|², n).
///
/// Two branches cover the frequency axis:
///
/// * the defining Mittag-Leffler series, valid on |ξ|² < h^{−α} but
///   ill-conditioned once its terms outgrow [`ML_MAX_TERM`] (alternating
///   series), used for h^α|ξ|² ≤ [`ML_BRANCH_LIMIT`] when safe;
/// * the subordination series Σ_j w_j (1+h|ξ|²)^{−(j+1)}, absolutely
///   convergent for every ξ since the weights are a probability row.
///
/// The branches agree on their overlap; `eval` dispatches automatically.
#[derive(Debug, Clone)]
pub struct FracMultiplier {
    alpha: f64,
    h: f64,
    n: usize,
    tol: f64,
    weights: Vec<f64>,
    /// ML coefficients c_j = h^{αj+1} k^{αj+1}(n−1); empty when the series
    /// branch is disabled by the cancellation guard.
    ml_coeffs: Vec<f64>,
}

impl FracMultiplier {
    pub fn new(alpha: f64, h: f64, n: usize, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("multiplier index n starts at 1"));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::input(format!("alpha must lie in (0,1], got {alpha}")));
        }
        if !(h > 0.0) {
            return Err(Error::input(format!("h must be positive, got {h}")));
        }
        if alpha == 1.0 {
            return Ok(Self { alpha, h, n, tol, weights: Vec::new(), ml_coeffs: Vec::new() });
        }
        let row = subordination_row(alpha, h, n - 1, tol, J_MAX)?;
        let ml_coeffs = Self::precompute_ml(alpha, h, n, tol);
        Ok(Self { alpha, h, n, tol, weights: row.weights, ml_coeffs })
    }

    /// Coefficients for the series branch, certified against the worst
    /// in-branch argument |λ| = ML_BRANCH_LIMIT·h^{−α}. Returns empty if the
    /// guard trips (terms too large: the branch would cancel catastrophically).
    fn precompute_ml(alpha: f64, h: f64, n: usize, tol: f64) -> Vec<f64> {
        let mut series = match MlSeries::new(alpha, 1.0, h, n) {
            Ok(s) => s,
            Err(_) => return Vec::new(),
        };
        let probe = -ML_BRANCH_LIMIT * h.powf(-alpha);
        match series.eval(probe, tol) {
            Ok(info) if info.ln_max_term <= ML_MAX_TERM.ln() => {
                series.coefficients()[..info.terms].to_vec()
            }
            _ => Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subordination_terms(&self) -> usize {
        self.weights.len()
    }

    pub fn series_branch_enabled(&self) -> bool {
        self.alpha == 1.0 || !self.ml_coeffs.is_empty()
    }

    /// Multiplier value at squared frequency |ξ|².
    pub fn eval(&self, xi_sq: f64) -> f64 {
        if xi_sq == 0.0 {
            return 1.0;
        }
        if self.alpha == 1.0 {
            return discrete_gaussian_multiplier(self.n, self.h, xi_sq);
        }
        if !self.ml_coeffs.is_empty() && self.h.powf(self.alpha) * xi_sq <= ML_BRANCH_LIMIT {
            if let Some(v) = self.eval_series_branch(xi_sq) {
                return v;
            }
        }
        self.eval_subordination_branch(xi_sq)
    }

    /// (1/h)·Σ_j c_j (−|ξ|²)^j over the precomputed coefficients; `None` if
    /// the coefficients are not certified for this argument.
    pub fn eval_series_branch(&self, xi_sq: f64) -> Option<f64> {
        if self.alpha == 1.0 {
            return Some(discrete_gaussian_multiplier(self.n, self.h, xi_sq));
        }
        if self.ml_coeffs.is_empty() || self.h.powf(self.alpha) * xi_sq > ML_BRANCH_LIMIT {
            return None;
        }
        let lambda = -xi_sq;
        let mut acc = crate::summation::Compensated::new();
        let mut pow = 1.0;
        let mut small = 0;
        for &c in &self.ml_coeffs {
            let term = c * pow;
            acc.add(term);
            if term.abs() <= self.tol * acc.value().abs().max(f64::MIN_POSITIVE) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            pow *= lambda;
        }
        Some(acc.value() / self.h)
    }

    /// Σ_j w_j (1+h|ξ|²)^{−(j+1)}: nonnegative weights, factors < 1, stops
    /// once the remaining weight mass times the current factor is below tol.
    pub fn eval_subordination_branch(&self, xi_sq: f64) -> f64 {
        if self.alpha == 1.0 {
            return discrete_gaussian_multiplier(self.n, self.h, xi_sq);
        }
        let base = 1.0 / (1.0 + self.h * xi_sq);
        let mut factor = base;
        let mut acc = crate::summation::Compensated::new();
        let mut weight_seen = 0.0;
        for &w in &self.weights {
            acc.add(w * factor);
            weight_seen += w;
            factor *= base;
            if (1.0 - weight_seen).abs() * factor <= self.tol * acc.value().abs() {
                break;
            }
        }
        acc.value()
    }
}


/// One-off multiplier evaluation at a frequency vector ξ.
pub fn frac_multiplier(alpha: f64, n: usize, h: f64, xi: &[f64]) -> Result<f64> {
    Ok(FracMultiplier::new(alpha, h, n, DEFAULT_TOL)?.eval(norm_sq(xi)))
}
