//! Exit statuses: 2 configuration, 3 material validation, 4 convergence.

use std::fmt;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Config = 2,
    Material = 3,
    Convergence = 4,
}

impl Status {
    pub fn of(err: &polder::Error) -> Self {
        use polder::Error::*;
        match err {
            Parse(_) | NonpositiveTemperature(_) | NonpositiveSeparation(_) | InvalidArgument(_) => {
                Status::Config
            }
            SchemaViolation(_) | InvariantViolation { .. } | NegativeFrequency { .. } | TableRangeUnderflow { .. } => {
                Status::Material
            }
            SumNotConverged { .. } | QuadratureNotConverged { .. } | DegeneratePoint => Status::Convergence,
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

/// An error carrying the exit status it should produce.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(status: Status, error: impl Into<anyhow::Error>) -> Self {
        Self {
            status,
            error: error.into(),
        }
    }

    pub fn config(msg: impl fmt::Display) -> Self {
        Self::new(Status::Config, anyhow::anyhow!("{msg}"))
    }

    /// A library error, with the status it maps to and a description of
    /// what was being attempted.
    pub fn during(error: polder::Error, what: String) -> Self {
        Self::new(Status::of(&error), anyhow::Error::new(error).context(what))
    }
}

impl From<polder::Error> for Failure {
    fn from(e: polder::Error) -> Self {
        Self::new(Status::of(&e), e)
    }
}

pub trait Context<T> {
    fn context_with(self, what: impl FnOnce() -> String) -> Result<T, Failure>;
}

impl<T> Context<T> for Result<T, polder::Error> {
    fn context_with(self, what: impl FnOnce() -> String) -> Result<T, Failure> {
        self.map_err(|e| Failure::during(e, what()))
    }
}
