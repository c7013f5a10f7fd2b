use thiserror::Error;

/// Errors produced by the measure, transform and norm routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponent {0}: must lie in [1, inf]")]
    InvalidExponent(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// A grid function does not cover the effective support of a measure.
    #[error("domain mismatch: function window [{window_lo}, {window_hi}] does not cover support [{support_lo}, {support_hi}]")]
    Domain {
        window_lo: f64,
        window_hi: f64,
        support_lo: f64,
        support_hi: f64,
    },

    #[error("divergent quantity: {0}")]
    Divergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("problem size too large: {0}")]
    Size(String),

    /// Two independent computation routes disagree beyond tolerance.
    #[error("numerical integrity failure: {0}")]
    Integrity(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
