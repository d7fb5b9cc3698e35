use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("quadrature did not converge on [{a}, {b}]: estimate {estimate}, error {error}")]
    NoConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
    },
    #[error("principal value refinement diverges near {pole} (pole of higher order?)")]
    PvDivergent { pole: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}
