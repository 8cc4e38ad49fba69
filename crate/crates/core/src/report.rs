//! Named pass/fail verdicts, rendered one per line as `NAME PASS|FAIL [witness]`.

use std::fmt;

/// A concrete counterexample: the offending element and what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: String,
    pub detail: String,
}

impl Witness {
    pub fn new(element: impl Into<String>, detail: impl Into<String>) -> Self {
        Witness {
            element: element.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    /// Not evaluated because a prerequisite verdict failed.
    Skipped(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Fail(w) => Some(w),
            _ => None,
        }
    }

    pub fn fail(element: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome::Fail(Witness::new(element, detail))
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or(Outcome::Pass, Outcome::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: &'static str, outcome: Outcome) {
        self.verdicts.push(Verdict { name, outcome });
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.verdicts
            .iter()
            .find(|v| v.name == name)
            .map(|v| &v.outcome)
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.outcome.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.outcome.passed())
    }

    pub fn extend(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            match &v.outcome {
                Outcome::Pass => writeln!(f, "{} PASS", v.name)?,
                Outcome::Fail(w) => writeln!(f, "{} FAIL {}: {}", v.name, w.element, w.detail)?,
                Outcome::Skipped(why) => writeln!(f, "{} FAIL skipped: {}", v.name, why)?,
            }
        }
        Ok(())
    }
}
