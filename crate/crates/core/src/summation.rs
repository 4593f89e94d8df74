//! Compensated (Neumaier) summation.
//!
//! Several series in this crate alternate in sign with terms that grow
//! before they decay (Mittag-Leffler sequences near the convergence disc,
//! Wright series with α close to 1). A running compensation term keeps the
//! accumulated rounding error at O(ε) of the largest partial sum instead of
//! O(nε).

/// Neumaier variant of Kahan summation: unlike plain Kahan it stays exact
/// when the incoming term is larger than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of a slice.
pub fn sum(values: &[f64]) -> f64 {
    let mut acc = Compensated::new();
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

/// Compensated dot product Σ a[i]·b[i].
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Compensated::new();
    for (&x, &y) in a.iter().zip(b) {
        acc.add(x * y);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        // 1 + 1e100 - 1e100 = 1; naive summation returns 0.
        let mut acc = Compensated::new();
        acc.add(1.0);
        acc.add(1e100);
        acc.add(-1e100);
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn matches_exact_harmonic_tail() {
        // Σ 1/k forwards vs backwards agree through the compensated path.
        let fwd: f64 = sum(&(1..=100_000).map(|k| 1.0 / k as f64).collect::<Vec<_>>());
        let bwd: f64 = sum(&(1..=100_000).rev().map(|k| 1.0 / k as f64).collect::<Vec<_>>());
        assert!((fwd - bwd).abs() < 1e-12);
    }
}
