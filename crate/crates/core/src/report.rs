//! Verification results as data: every failed constraint is recorded with its
//! location so callers can point at the offending entry.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Short constraint name, e.g. `antisymmetry` or `jacobi`.
    pub kind: String,
    /// Basis names, generator indices or tuple entries locating the defect.
    pub location: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub violations: Vec<Violation>,
    /// Constraints that hold by construction and were therefore not tested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport { check: check.into(), violations: Vec::new(), notes: Vec::new() }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: &str, location: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation { kind: kind.to_string(), location, detail: detail.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends the violations (and notes) of `other`.
    pub fn merge(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "{}: valid", self.check)?;
        } else {
            write!(f, "{}: {} violation(s)", self.check, self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  {} at ({}): {}", v.kind, v.location.join(", "), v.detail)?;
            }
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
