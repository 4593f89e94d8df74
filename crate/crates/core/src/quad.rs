//! Quadrature: generalized Gauss–Laguerre rules and adaptive Simpson.
//!
//! The discrete Gaussian kernel is a Gamma(n)-weighted time average of the
//! continuous heat kernel, so the natural rule integrates against the
//! normalized weight u^a e^{−u}/Γ(a+1). Nodes and weights come from the
//! Golub–Welsch eigenproblem of the generalized Laguerre Jacobi matrix; the
//! normalized weights are the squared first eigenvector components, which
//! keeps everything finite even for a = n−1 in the thousands where Γ(a+1)
//! itself overflows.

use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// A Gauss–Laguerre rule for ∫_0^∞ f(u)·u^a e^{−u}/Γ(a+1) du ≈ Σ w_i f(u_i),
/// with Σ w_i = 1.
#[derive(Debug, Clone)]
pub struct GammaMixtureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GammaMixtureRule {
    /// Golub–Welsch for the generalized Laguerre weight, parameter a > −1.
    pub fn new(a: f64, m: usize) -> Self {
        assert!(a > -1.0 && m >= 1);
        let mut jacobi = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            jacobi[(i, i)] = 2.0 * i as f64 + a + 1.0;
            if i + 1 < m {
                let b = ((i as f64 + 1.0) * (i as f64 + 1.0 + a)).sqrt();
                jacobi[(i, i + 1)] = b;
                jacobi[(i + 1, i)] = b;
            }
        }
        let eigen = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..m)
            .map(|i| {
                let first = eigen.eigenvectors[(0, i)];
                (eigen.eigenvalues[i], first * first)
            })
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        GammaMixtureRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * f(u)).sum()
    }
}

/// Node counts tried by the adaptive driver, in order.
pub const ADAPTIVE_NODE_COUNTS: [usize; 5] = [16, 32, 64, 128, 256];

fn rule_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<GammaMixtureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<GammaMixtureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared rule lookup; rules are immutable once built.
pub fn cached_rule(a: f64, m: usize) -> Arc<GammaMixtureRule> {
    let key = (a.to_bits(), m);
    if let Some(rule) = rule_cache().lock().unwrap().get(&key) {
        return rule.clone();
    }
    let rule = Arc::new(GammaMixtureRule::new(a, m));
    rule_cache().lock().unwrap().insert(key, rule.clone());
    rule.clone()
}

/// Integrate f against u^a e^{−u}/Γ(a+1), doubling the node count until two
/// successive values agree to `rel_tol`.
pub fn gamma_mixture_adaptive(
    a: f64,
    rel_tol: f64,
    f: impl Fn(f64) -> f64,
) -> Result<(f64, usize)> {
    let mut prev: Option<f64> = None;
    for &m in &ADAPTIVE_NODE_COUNTS {
        let value = cached_rule(a, m).integrate(&f);
        if let Some(p) = prev {
            if (value - p).abs() <= rel_tol * value.abs().max(f64::MIN_POSITIVE) {
                return Ok((value, m));
            }
        }
        prev = Some(value);
    }
    Err(Error::Quadrature(format!(
        "Laguerre rule did not converge to rel {rel_tol:.1e} within {} nodes",
        ADAPTIVE_NODE_COUNTS.last().unwrap()
    )))
}

/// Adaptive Simpson on [a, b] with absolute tolerance.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
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
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
