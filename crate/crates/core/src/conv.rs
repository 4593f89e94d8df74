//! Cauchy (discrete) convolution with two interchangeable backends.
//!
//! Direct O(n²) summation with compensation is used up to
//! [`DIRECT_THRESHOLD`]; longer sequences go through an FFT linear
//! convolution. Both produce the truncated product of power series:
//! out[n] = Σ_{j=0..n} a[n−j]·b[j].

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::summation::Compensated;

/// Longest sequence handled by the direct quadratic path.
pub const DIRECT_THRESHOLD: usize = 4096;

/// Truncated Cauchy convolution of two equal-length sequences.
pub fn cauchy(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    if a.len() <= DIRECT_THRESHOLD {
        cauchy_direct(a, b)
    } else {
        cauchy_fft(a, b)
    }
}

pub fn cauchy_direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Compensated::new();
        for j in 0..=i {
            acc.add(a[i - j] * b[j]);
        }
        out.push(acc.value());
    }
    out
}

pub fn cauchy_fft(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let size = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(size);
    let ifft = planner.plan_fft_inverse(size);

    let mut fa: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut fb: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fa.resize(size, Complex64::new(0.0, 0.0));
    fb.resize(size, Complex64::new(0.0, 0.0));
    fft.process(&mut fa);
    fft.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft.process(&mut fa);
    let scale = 1.0 / size as f64;
    fa[..n].iter().map(|c| c.re * scale).collect()
}
