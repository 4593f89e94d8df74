//! Discrete-in-time fractional diffusion on R^N.
//!
//! The crate implements the machinery around the Caputo fractional
//! h-difference heat problem
//!
//! ```text
//!     Cδ^α u(nh, x) = Δ u(nh, x),   u(0, x) = f(x),   0 < α ≤ 1,
//! ```
//!
//! organized in layers:
//!
//! * [`cesaro`] — Cesàro numbers k^α(n) and Cauchy convolution;
//! * [`fracdiff`] — backward difference, fractional h-sum, Riemann–Liouville
//!   and Caputo h-differences with their inversion identities;
//! * [`specfun`] — discrete Mittag-Leffler sequences, the discrete scaled
//!   Wright function (two independent algorithms), and continuous-case
//!   series used for cross-validation;
//! * [`kernels`] — the discrete Gaussian kernel, the subordinated fractional
//!   fundamental solution, and their Fourier multipliers;
//! * [`solver`] — three interchangeable schemes for the diffusion problem on
//!   a periodic grid;
//! * [`analysis`] — L^p norms, moments, log-log decay fits and the scaled
//!   large-time gap.

pub mod cesaro;
mod conv;
pub mod error;
pub mod fracdiff;
pub mod gammafn;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub use fracdiff::{MeshSequence, TailSequence};
pub use specfun::FracParams;
