//! Verdicts and check reports shared by all verifiers.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    /// Three-valued conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Pass,
        }
    }

    /// Three-valued disjunction.
    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Pass, _) | (_, Verdict::Pass) => Verdict::Pass,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Fail,
        }
    }

    pub fn negate(self) -> Verdict {
        match self {
            Verdict::Pass => Verdict::Fail,
            Verdict::Fail => Verdict::Pass,
            Verdict::Undecided => Verdict::Undecided,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        Verdict::from_bool(b)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default)]
    pub inputs_digest: String,
    #[serde(default)]
    pub engine: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: impl Into<Verdict>, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), verdict: verdict.into(), witness: witness.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: Report) {
        let prefix = other.command.clone();
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
        self.notes.extend(other.notes);
        if self.engine.is_empty() {
            self.engine = other.engine;
        }
    }

    /// Overall verdict: any failure fails, otherwise any undecided check
    /// leaves the report undecided.
    pub fn verdict(&self) -> Verdict {
        self.checks.iter().fold(Verdict::Pass, |acc, c| acc.and(c.verdict))
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Undecided => 3,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        if !self.inputs_digest.is_empty() {
            s += &format!("  inputs: {}\n", self.inputs_digest);
        }
        if !self.engine.is_empty() {
            s += &format!("  engine: {}\n", self.engine);
        }
        for c in &self.checks {
            s += &format!("  [{}] {}", c.verdict, c.name);
            if !c.witness.is_empty() {
                s += &format!(": {}", c.witness);
            }
            s.push('\n');
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        if let Some(ms) = self.wall_time_ms {
            s += &format!("  wall time: {ms} ms\n");
        }
        s += &format!(
            "  {} passed, {} failed, {} undecided\n",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Undecided)
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_logic() {
        use Verdict::*;
        assert_eq!(Pass.and(Undecided), Undecided);
        assert_eq!(Fail.and(Undecided), Fail);
        assert_eq!(Pass.or(Undecided), Pass);
        assert_eq!(Fail.or(Undecided), Undecided);
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t");
        assert_eq!(r.exit_code(), 0);
        r.check("a", Verdict::Undecided, "");
        assert_eq!(r.exit_code(), 3);
        r.check("b", false, "x");
        assert_eq!(r.exit_code(), 2);
    }
}
