//! Outcome of a single verified identity.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail { witness: Value },
    Skipped { reason: String },
}

impl Outcome {
    pub fn from_bool(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail { witness: witness() }
        }
    }

    /// `Pass` when `failure` is `None`, otherwise its witness.
    pub fn from_failure(failure: Option<Value>) -> Outcome {
        match failure {
            None => Outcome::Pass,
            Some(witness) => Outcome::Fail { witness },
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Outcome {
        Outcome::Skipped { reason: reason.into() }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail { .. } => "fail",
            Outcome::Skipped { .. } => "skipped",
        }
    }
}

/// Coordinates as strings, for witnesses.
pub fn coords(v: &[crate::exact::Scalar]) -> Value {
    Value::from(crate::exact::vector::to_strings(v))
}
