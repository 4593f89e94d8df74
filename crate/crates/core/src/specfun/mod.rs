//! Discrete Mittag-Leffler sequences, the discrete scaled Wright function,
//! and their continuous-case counterparts used as cross-validation oracles.

mod continuous;
mod ml;
mod wright;

pub use continuous::{
    ml_continuous, scaled_wright_continuous, wright_series_limit, wright_series_neg,
    ML_SERIES_Z_MAX,
};
pub use ml::{ml_discrete, ml_discrete_with_info, MlEval, MlSeries};
pub use wright::{
    subordination_row, subordination_rows, wright_binomial, wright_binomial_with_err,
    wright_discrete, wright_table, ContourColumn,
    ColumnSweep, ContourExtractor, SubordinationRow, WrightTable, CONTOUR_RADIUS, J_SWITCH,
};

use crate::error::{Error, Result};

/// The parameter triple (α, β, h) shared by the discrete special functions.
///
/// α is the fractional order in (0, 1] (α = 1 reproduces the classical
/// backward-Euler heat objects), β ≥ 0 the second Wright index, h > 0 the
/// mesh step. Sign guarantees for the Wright values hold only for h ≤ 1;
/// [`FracParams::positivity_guaranteed`] reports that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    alpha: f64,
    beta: f64,
    h: f64,
}

impl FracParams {
    pub fn new(alpha: f64, beta: f64, h: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::input(format!("alpha must lie in (0,1], got {alpha}")));
        }
        if !(beta >= 0.0) {
            return Err(Error::input(format!("beta must be >= 0, got {beta}")));
        }
        if !(h > 0.0) {
            return Err(Error::input(format!("h must be positive, got {h}")));
        }
        Ok(Self { alpha, beta, h })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Wright values are provably nonnegative only for h ≤ 1.
    pub fn positivity_guaranteed(&self) -> bool {
        self.h <= 1.0
    }
}
