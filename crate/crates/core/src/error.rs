use std::fmt;

use thiserror::Error;

/// Which physical invariant an ingested response model broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    /// Response fell below its floor (ε < 1 or α < 0).
    BelowFloor,
    /// Response increased with frequency somewhere on the probe grid.
    Monotonicity,
    /// Response evaluated to NaN or infinity.
    NonFinite,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvariantKind::BelowFloor => "BELOW_FLOOR",
            InvariantKind::Monotonicity => "MONOTONICITY",
            InvariantKind::NonFinite => "NON_FINITE",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative frequency {xi} rad/s")]
    NegativeFrequency { xi: f64 },

    #[error("frequency {xi} rad/s lies below the first table node {first} rad/s and no bridge is configured")]
    TableRangeUnderflow { xi: f64, first: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation: {0}")]
    SchemaViolation(String),

    #[error("{kind} violated in '{name}' at xi = {xi:e} rad/s: {detail}")]
    InvariantViolation {
        name: String,
        kind: InvariantKind,
        xi: f64,
        detail: String,
    },

    #[error("temperature must be positive, got {0} K")]
    NonpositiveTemperature(f64),

    #[error("separation must be positive, got {0} m")]
    NonpositiveSeparation(f64),

    #[error("Fresnel coefficients undefined at k = 0, xi = 0")]
    DegeneratePoint,

    #[error("quadrature did not converge: error estimate {error_estimate:e} after {panels} panels")]
    QuadratureNotConverged { error_estimate: f64, panels: usize },

    #[error("Matsubara sum did not converge after {terms} terms (last term {last_term:e} J)")]
    SumNotConverged {
        terms: usize,
        last_term: f64,
        partial: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
