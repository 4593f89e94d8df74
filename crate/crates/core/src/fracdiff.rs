//! Discrete fractional calculus on the mesh N_0^h = {0, h, 2h, …}.
//!
//! The operators are the backward difference δ_left, the fractional sum
//! δ^{−α} (discrete convolution with h^α k^α), and the fractional
//! differences in the Riemann–Liouville (δ_left ∘ δ^{−(1−α)}) and Caputo
//! (δ^{−(1−α)} ∘ δ_left) senses.
//!
//! Every difference is only defined for n ≥ 1, so difference outputs are a
//! separate type [`TailSequence`] whose index starts at 1. Representing the
//! n = 0 slot as structurally absent (rather than silently zero) matters:
//! the inversion identities below are quantified over n ∈ N only, and a
//! fabricated value at 0 would leak into convolution-based checks.

use crate::cesaro::cesaro_sequence;
use crate::conv;
use crate::error::{Error, Result};

/// A scalar sequence on the time mesh: `values[n]` is the value at t = nh.
#[derive(Debug, Clone)]
pub struct MeshSequence {
    h: f64,
    values: Vec<f64>,
}

impl MeshSequence {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::input(format!("mesh step h must be positive, got {h}")));
        }
        if values.is_empty() {
            return Err(Error::input("mesh sequence needs at least the value at n = 0"));
        }
        Ok(Self { h, values })
    }

    /// Build from a function of t = nh.
    pub fn from_fn(h: f64, n_max: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(h, (0..=n_max).map(|n| f(n as f64 * h)).collect())
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Largest defined index.
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }
}

/// A sequence defined for n ≥ 1 only; `values()[i]` is the value at
/// n = i + 1. The n = 0 slot is absent by construction.
#[derive(Debug, Clone)]
pub struct TailSequence {
    h: f64,
    values: Vec<f64>,
}

impl TailSequence {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// Values at n = 1..=n_max.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at mesh index n ≥ 1.
    pub fn value(&self, n: usize) -> f64 {
        assert!(n >= 1, "TailSequence has no value at n = 0");
        self.values[n - 1]
    }

    /// Reattach an origin value, e.g. the Σ^0 = 0 empty-sum convention.
    pub fn with_origin(&self, v0: f64) -> MeshSequence {
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.push(v0);
        values.extend_from_slice(&self.values);
        MeshSequence { h: self.h, values }
    }
}

/// δ_left f(nh) = (f(nh) − f((n−1)h))/h for n = 1..=n_max.
pub fn backward_difference(f: &MeshSequence) -> Result<TailSequence> {
    if f.n_max() < 1 {
        return Err(Error::input("backward_difference needs n_max >= 1"));
    }
    let values = f
        .values
        .windows(2)
        .map(|w| (w[1] - w[0]) / f.h)
        .collect();
    Ok(TailSequence { h: f.h, values })
}

/// δ^{−α} f(nh) = h^α Σ_{j=1..n} k^α(n−j) f(jh), n ≥ 1.
///
/// The sum never touches f(0); the value at n = 0 is the empty sum and is
/// not materialized. For α = 0 this reduces to the identity on n ≥ 1.
pub fn fractional_sum(alpha: f64, f: &MeshSequence) -> Result<TailSequence> {
    fractional_sum_values(alpha, f.h, &f.values[1..])
}

/// δ^{−α} applied to a sequence already lacking its n = 0 value.
pub fn fractional_sum_tail(alpha: f64, g: &TailSequence) -> Result<TailSequence> {
    fractional_sum_values(alpha, g.h, &g.values)
}

fn fractional_sum_values(alpha: f64, h: f64, tail: &[f64]) -> Result<TailSequence> {
    if alpha < 0.0 {
        return Err(Error::input(format!("fractional sum order must be >= 0, got {alpha}")));
    }
    if tail.is_empty() {
        return Err(Error::input("fractional_sum needs n_max >= 1"));
    }
    let kernel = cesaro_sequence(alpha, tail.len() - 1);
    let conv = conv::cauchy(kernel.values(), tail);
    let scale = h.powf(alpha);
    Ok(TailSequence {
        h,
        values: conv.into_iter().map(|v| v * scale).collect(),
    })
}

/// Riemann–Liouville difference: δ_left applied to δ^{−(1−α)} f, using the
/// empty-sum convention δ^{−(1−α)}f(0) = 0.
pub fn rl_difference(alpha: f64, f: &MeshSequence) -> Result<TailSequence> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::input(format!(
            "Riemann-Liouville order must lie in (0,1), got {alpha}"
        )));
    }
    let s = fractional_sum(1.0 - alpha, f)?;
    Ok(backward_difference_with_zero_origin(&s))
}

/// Caputo difference: δ^{−(1−α)} applied to δ_left f; collapses to the
/// plain backward difference at α = 1.
pub fn caputo_difference(alpha: f64, f: &MeshSequence) -> Result<TailSequence> {
    if !(0.0 < alpha && alpha <= 1.0) {
        return Err(Error::input(format!("Caputo order must lie in (0,1], got {alpha}")));
    }
    let d = backward_difference(f)?;
    if alpha == 1.0 {
        return Ok(d);
    }
    fractional_sum_tail(1.0 - alpha, &d)
}

fn backward_difference_with_zero_origin(s: &TailSequence) -> TailSequence {
    let mut values = Vec::with_capacity(s.values.len());
    let mut prev = 0.0;
    for &v in &s.values {
        values.push((v - prev) / s.h);
        prev = v;
    }
    TailSequence { h: s.h, values }
}
