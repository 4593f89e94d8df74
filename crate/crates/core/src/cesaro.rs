//! Cesàro numbers k^α(n): the Taylor coefficients of (1−z)^{−α}.
//!
//! They are the discrete analogue of the power kernel t^{α−1}/Γ(α) and the
//! building block of every fractional-difference operator in this crate.
//! Evaluation goes through the multiplicative recurrence
//!
//! ```text
//! k^α(0) = 1,    k^α(n+1) = (α+n)/(n+1) · k^α(n),
//! ```
//!
//! which is total for every real α (including the nonpositive integers,
//! where the sequence terminates in exact zeros) and free of the
//! overflow/pole issues of the Γ-ratio form Γ(n+α)/(Γ(α)Γ(n+1)). The
//! Γ-ratio form survives only as a test oracle.

use crate::conv;
use crate::error::{Error, Result};

/// Hard cap on dense sequence length (memory bound).
pub const MAX_SEQUENCE_LEN: usize = 1 << 20;

/// A Cesàro sequence k^α(0..=n_max) stored densely.
#[derive(Debug, Clone)]
pub struct CesaroSeq {
    pub alpha: f64,
    values: Vec<f64>,
}

impl CesaroSeq {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for CesaroSeq {
    type Output = f64;
    fn index(&self, n: usize) -> &f64 {
        &self.values[n]
    }
}

/// k^α(n) by the multiplicative recurrence.
///
/// For α = 0 this is the Kronecker delta at 0; for nonpositive integer α
/// the recurrence hits an exact zero factor and stays at zero.
pub fn cesaro_number(alpha: f64, n: usize) -> f64 {
    let mut k = 1.0;
    for i in 0..n {
        k *= (alpha + i as f64) / (i as f64 + 1.0);
    }
    k
}

/// k^α(0..=n_max) in a single recurrence pass.
///
/// Panics if `n_max` exceeds [`MAX_SEQUENCE_LEN`]; the CLI validates sizes
/// before calling in.
pub fn cesaro_sequence(alpha: f64, n_max: usize) -> CesaroSeq {
    assert!(
        n_max < MAX_SEQUENCE_LEN,
        "cesaro_sequence: n_max {n_max} above cap {MAX_SEQUENCE_LEN}"
    );
    let mut values = Vec::with_capacity(n_max + 1);
    let mut k = 1.0;
    values.push(k);
    for i in 0..n_max {
        k *= (alpha + i as f64) / (i as f64 + 1.0);
        values.push(k);
    }
    CesaroSeq { alpha, values }
}

/// Truncated Cauchy convolution out[n] = Σ_{j=0..n} a[n−j]·b[j].
pub fn cauchy_convolve(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::input(format!(
            "cauchy_convolve: length mismatch {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::input("cauchy_convolve: empty input"));
    }
    Ok(conv::cauchy(a, b))
}
