//! Serializable check results shared by the verification suites.

use serde::{Deserialize, Serialize};

/// One pass/fail check on a named generator or input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub generator: String,
    pub pass: bool,
    pub residual: Option<String>,
}

impl Check {
    pub fn new(check: impl Into<String>, generator: impl Into<String>, residual: Option<String>) -> Check {
        Check { check: check.into(), generator: generator.into(), pass: residual.is_none(), residual }
    }

    pub fn ok(check: impl Into<String>, generator: impl Into<String>) -> Check {
        Check::new(check, generator, None)
    }

    pub fn from_bool(
        check: impl Into<String>,
        generator: impl Into<String>,
        pass: bool,
        detail: impl FnOnce() -> String,
    ) -> Check {
        let residual = if pass { None } else { Some(detail()) };
        Check::new(check, generator, residual)
    }
}

/// One row of a cup or bracket table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub table: String,
    pub entry: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub witness: Option<String>,
}

/// Truncated cohomology dimensions with the stability flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub r: u32,
    pub window: u32,
    pub dims: Vec<usize>,
    pub stable: bool,
    pub expected: Vec<usize>,
}

/// A list of checks under one name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
