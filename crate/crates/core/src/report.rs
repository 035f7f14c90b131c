use alloc::string::String;
use alloc::vec::Vec;

use crate::group::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Outcome of one finite check.
///
/// `counterexample` holds the first violating tuple in the order the check
/// scans its carrier; `violated` names the property it broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub violated: Option<String>,
    pub counterexample: Vec<Element>,
    pub checked_tuples: u64,
    pub mode: Mode,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, checked_tuples: u64) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            violated: None,
            counterexample: Vec::new(),
            checked_tuples,
            mode: Mode::Exhaustive,
            notes: Vec::new(),
        }
    }

    pub fn fail(
        check: impl Into<String>,
        violated: impl Into<String>,
        counterexample: Vec<Element>,
        checked_tuples: u64,
    ) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Fail,
            violated: Some(violated.into()),
            counterexample,
            checked_tuples,
            mode: Mode::Exhaustive,
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(check: impl Into<String>, reason: impl Into<String>, checked_tuples: u64) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Inconclusive,
            violated: None,
            counterexample: Vec::new(),
            checked_tuples,
            mode: Mode::Exhaustive,
            notes: alloc::vec![reason.into()],
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Folds a sequence of sub-checks into one report: the first failure wins,
/// otherwise any inconclusive sub-check makes the whole inconclusive.
pub fn combine(check: impl Into<String>, parts: &[CheckReport]) -> CheckReport {
    let check = check.into();
    let total: u64 = parts.iter().map(|r| r.checked_tuples).sum();
    if let Some(bad) = parts.iter().find(|r| r.status == Status::Fail) {
        let mut out = bad.clone();
        out.check = check;
        out.checked_tuples = total;
        if out.violated.is_none() {
            out.violated = Some(bad.check.clone());
        }
        out.notes.push(alloc::format!("failed sub-check: {}", bad.check));
        return out;
    }
    let mut notes = Vec::new();
    let mut status = Status::Pass;
    for p in parts {
        if p.status == Status::Inconclusive {
            status = Status::Inconclusive;
        }
        notes.extend(p.notes.iter().cloned());
    }
    CheckReport {
        check,
        status,
        violated: None,
        counterexample: Vec::new(),
        checked_tuples: total,
        mode: parts.iter().map(|p| p.mode).find(|m| *m != Mode::Exhaustive).unwrap_or(Mode::Exhaustive),
        notes,
    }
}
