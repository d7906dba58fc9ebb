//! Outcome of an exhaustive verification sweep.

use alloc::string::String;
use alloc::vec::Vec;

/// A failed check: the inputs that exhibit it and the nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub witness: String,
    pub residual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self) -> usize {
        self.violations.len()
    }

    /// Combines partial reports; violations are sorted so the result does
    /// not depend on how the work was split.
    pub fn merge(parts: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::default();
        for p in parts {
            out.checked += p.checked;
            out.violations.extend(p.violations);
        }
        out.violations.sort();
        out
    }

    pub fn record(&mut self, violation: Option<Violation>) {
        self.checked += 1;
        self.violations.extend(violation);
    }
}
