use std::fmt;

use serde::{Deserialize, Serialize};

/// Kind of a violated axiom instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Boundary,
    MissingComposite,
    Associativity,
    LeftUnit,
    RightUnit,
    Identity,
    Composition,
    Naturality,
    TriangleCounit,
    TriangleUnit,
    MonadAssociativity,
    MonadUnit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

/// A list of violated axiom instances; empty means the checked structure is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Prefixes every detail with `context`, for reports merged from sub-checks.
    pub fn within(mut self, context: &str) -> Self {
        for v in &mut self.violations {
            v.detail = format!("{context}: {}", v.detail);
        }
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{:?}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}
