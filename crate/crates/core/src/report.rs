//! Outcomes of identity checks.

use std::fmt;

use serde::Serialize;

/// A failed identity instance, rendered in the element text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on {}:\n  lhs = {}\n  rhs = {}",
            self.identity, self.input, self.lhs, self.rhs
        )
    }
}

#[must_use]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<C = Counterexample> {
    Pass,
    Fail(C),
}

impl<C> Verdict<C> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&C> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(c) => Some(c),
        }
    }

    pub fn map<D, F: FnOnce(C) -> D>(self, f: F) -> Verdict<D> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(c) => Verdict::Fail(f(c)),
        }
    }
}

impl<C> From<Option<C>> for Verdict<C> {
    fn from(o: Option<C>) -> Self {
        match o {
            None => Verdict::Pass,
            Some(c) => Verdict::Fail(c),
        }
    }
}

/// Result of one named identity suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub instances: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}
