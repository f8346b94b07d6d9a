//! Verification reports: one record per clause instance.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseRecord {
    /// Stage index `i` of the condition `C_i`.
    pub index: usize,
    /// Clause number, 1 to 7.
    pub clause: u8,
    pub pass: bool,
    /// Encoded elements exhibiting a failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<ClauseRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn first_failure(&self) -> Option<&ClauseRecord> {
        self.failures().next()
    }

    /// Result for one clause instance, if it was checked.
    pub fn clause(&self, index: usize, clause: u8) -> Option<&ClauseRecord> {
        self.records.iter().find(|r| r.index == index && r.clause == clause)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }
}

/// Checkable instance of one of the eight neighborhood-basis conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomRecord {
    /// Condition number, 1 to 8.
    pub axiom: u8,
    /// Stage index the instance is about.
    pub index: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub records: Vec<AxiomRecord>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn axiom_passed(&self, axiom: u8) -> bool {
        self.records.iter().filter(|r| r.axiom == axiom).all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}
