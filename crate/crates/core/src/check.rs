//! Pass/fail records shared by every verifier in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one named statement, with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub statement: String,
    pub pass: bool,
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn pass(statement: impl Into<String>) -> Self {
        Check { statement: statement.into(), pass: true, counterexample: None }
    }

    pub fn fail(statement: impl Into<String>, counterexample: Value) -> Self {
        Check { statement: statement.into(), pass: false, counterexample: Some(counterexample) }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(statement: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Check::pass(statement),
            Some(w) => Check::fail(statement, w),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}", self.statement)?;
        if let Some(c) = &self.counterexample {
            write!(f, " -- counterexample: {c}")?;
        }
        Ok(())
    }
}

/// A list of checks; passes iff every entry passes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, statement: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.statement == statement)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
