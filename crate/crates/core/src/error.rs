use thiserror::Error;

/// Errors produced by the curve, net and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("aspect ratio must be finite and at least 1, got {0}")]
    InvalidAspect(f64),

    #[error("diagonal placement requires p > n, got n = {n}, p = {p}")]
    DiagonalDomain { n: f64, p: f64 },

    #[error("no sign change of the residual on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("invalid hole dimensions {width} x {height}")]
    InvalidHole { width: f64, height: f64 },

    #[error("line count {k} is not {expected}")]
    LineCount { k: usize, expected: &'static str },

    #[error("degenerate cell: {0}")]
    DegenerateCell(String),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("perturbed lines {left} and {right} cross inside the unit square")]
    CrossingLines { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
