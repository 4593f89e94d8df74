use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` marks arguments outside a mathematical domain (e.g. a
/// Mittag-Leffler argument outside the convergence disc), `Input` marks
/// malformed data (length mismatches, nonpositive steps), and the two
/// resource variants distinguish "a series refused to truncate" from
/// "a quadrature refused to converge".
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation failure: tail bound {achieved:.3e} above tolerance {tol:.3e} at j = {terms}")]
    Truncation {
        achieved: f64,
        tol: f64,
        terms: usize,
    },

    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
