use alloc::string::String;
use alloc::vec::Vec;

/// One named pass/fail entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            id: id.into(),
            statement: statement.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Vacuously true for an empty report.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}
