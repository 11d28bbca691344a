//! Axiom check reports with concrete failure witnesses.

use crate::ambient::Atom;

/// Default number of witnesses kept per axiom; keeps CLI output usable on
/// large tables. Checkers still count every failure.
pub const DEFAULT_WITNESS_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Maximum number of witnesses recorded per axiom. `usize::MAX` requests
    /// an exhaustive listing.
    pub witness_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            witness_limit: DEFAULT_WITNESS_LIMIT,
        }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions {
            witness_limit: usize::MAX,
        }
    }
}

/// Outcome of checking one axiom family on one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    /// Stable identifier, e.g. `"associativity"` or `"triangle"`.
    pub axiom: String,
    /// Recorded witnesses in canonical order, capped by the witness limit.
    pub witnesses: Vec<String>,
    /// Total number of failing instances, including unrecorded ones.
    pub failures: usize,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Result of running a checker over a structure: one entry per axiom family,
/// in a deterministic order fixed by the checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub entries: Vec<AxiomCheck>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            entries: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(AxiomCheck::passed)
    }

    pub fn axiom(&self, id: &str) -> Option<&AxiomCheck> {
        self.entries.iter().find(|a| a.axiom == id)
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|a| !a.passed())
            .map(|a| a.axiom.as_str())
            .collect()
    }

    pub fn push(&mut self, axiom: Axiom) {
        self.entries.push(axiom.finish());
    }
}

/// Accumulator for one axiom family while a checker runs. Witnesses must be
/// reported in canonical order by the caller; the accumulator only truncates.
#[derive(Debug)]
pub struct Axiom {
    check: AxiomCheck,
    limit: usize,
}

impl Axiom {
    pub fn new(id: &str, opts: &CheckOptions) -> Self {
        Axiom {
            check: AxiomCheck {
                axiom: id.to_string(),
                witnesses: Vec::new(),
                failures: 0,
            },
            limit: opts.witness_limit,
        }
    }

    /// Records a failing instance described by a tuple of atoms.
    pub fn fail(&mut self, tuple: &[&Atom]) {
        self.fail_note(tuple, "");
    }

    /// Records a failing instance with a free-form note appended.
    pub fn fail_note(&mut self, tuple: &[&Atom], note: &str) {
        self.check.failures += 1;
        if self.check.witnesses.len() < self.limit {
            let mut w = render_tuple(tuple);
            if !note.is_empty() {
                w.push_str(": ");
                w.push_str(note);
            }
            self.check.witnesses.push(w);
        }
    }

    pub fn finish(self) -> AxiomCheck {
        self.check
    }
}

pub fn render_tuple(tuple: &[&Atom]) -> String {
    let parts: Vec<&str> = tuple.iter().map(|a| a.as_str()).collect();
    format!("({})", parts.join(", "))
}
