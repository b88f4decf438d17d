//! Verdicts produced by the numerical claim audits.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::NotApplicable => "not_applicable",
        }
    }
}

/// Where a claim was violated worst: grid coordinates plus the quantities
/// being compared there.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Counterexample {
    pub coordinates: Vec<(&'static str, f64)>,
    pub values: Vec<(&'static str, f64)>,
}

impl Counterexample {
    pub fn at(coordinates: &[(&'static str, f64)]) -> Self {
        Self { coordinates: coordinates.to_vec(), values: Vec::new() }
    }

    pub fn value(mut self, name: &'static str, v: f64) -> Self {
        self.values.push((name, v));
        self
    }
}

/// Outcome of one audited claim.
///
/// `status == Holds` exactly when `max_violation <= tolerance`, and a
/// counterexample is attached exactly when the claim fails.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditVerdict {
    pub claim_id: String,
    pub status: Status,
    pub max_violation: f64,
    pub tolerance: f64,
    pub counterexample: Option<Counterexample>,
    pub note: String,
}

impl AuditVerdict {
    pub fn measure(claim_id: impl Into<String>, max_violation: f64, tolerance: f64, worst: Counterexample) -> Self {
        // NaN violations count as failures.
        let holds = max_violation <= tolerance;
        Self {
            claim_id: claim_id.into(),
            status: if holds { Status::Holds } else { Status::Fails },
            max_violation,
            tolerance,
            counterexample: if holds { None } else { Some(worst) },
            note: String::new(),
        }
    }

    pub fn not_applicable(claim_id: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.into(),
            status: Status::NotApplicable,
            max_violation: f64::NAN,
            tolerance: f64::NAN,
            counterexample: None,
            note: reason.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_applicable(&self) -> bool {
        self.status != Status::NotApplicable
    }
}
