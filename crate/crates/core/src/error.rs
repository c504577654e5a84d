use thiserror::Error;

use crate::spanning::LatticePoint;

/// A statement that should hold for every valid input but was observed to fail.
///
/// These are never caused by bad input; they indicate either an implementation
/// bug or a genuine counterexample, so they carry enough context to reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Short stable identifier, e.g. `clock-connectivity`.
    pub check: &'static str,
    pub detail: String,
    pub points: Vec<LatticePoint>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)?;
        if !self.points.is_empty() {
            let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
            write!(f, " at {}", pts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid PD code: {0}")]
    Pd(String),
    #[error("the zero polynomial has no canonical form")]
    ZeroPolynomial,
    #[error("theorem violation: {0}")]
    Violation(Box<Violation>),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn violation(check: &'static str, detail: impl Into<String>, points: Vec<LatticePoint>) -> Self {
        Error::Violation(Box::new(Violation { check, detail: detail.into(), points }))
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
