use thiserror::Error;

/// Errors raised by this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("expected {expected} Bell arguments, got {got}")]
    ArgumentLength { expected: usize, got: usize },

    #[error("no closed form implemented for (p, q) = ({p}, {q})")]
    UnsupportedExponents { p: u32, q: u32 },

    #[error("series for (p, q) = ({p}, {q}) diverges")]
    Divergent { p: u32, q: u32 },

    #[error("bracketing failed on [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    #[error("expected {expected} relaxation roots, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("derivative order {order} exceeds the configured cap {cap}")]
    OrderOverflow { order: u32, cap: u32 },

    #[error("sequence did not converge: value {value:e}, error estimate {error_estimate:e}")]
    NonConvergence { value: f64, error_estimate: f64 },

    #[error("series needs more than {cap} terms to reach tolerance {tol:e}")]
    TermCap { cap: usize, tol: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

impl Error {
    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole { function, at: at.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
