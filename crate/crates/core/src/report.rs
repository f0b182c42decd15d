//! Per-check records shared by every verification routine.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// How much a verdict is worth.
///
/// Agreement at sampled points or up to a degree is evidence, not proof;
/// a disagreement found in exact arithmetic is a proof of failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    ExactProof,
    VerifiedAtDegree(u32),
    VerifiedAtPoints(usize),
    RefutedWithWitness,
    NotRun,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::ExactProof => write!(f, "exact-proof"),
            Label::VerifiedAtDegree(d) => write!(f, "verified-at-degree-{d}"),
            Label::VerifiedAtPoints(s) => write!(f, "verified-at-{s}-points"),
            Label::RefutedWithWitness => write!(f, "refuted-with-witness"),
            Label::NotRun => write!(f, "not-run"),
        }
    }
}

impl std::str::FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |prefix: &str, suffix: &str| {
            s.strip_prefix(prefix).and_then(|r| r.strip_suffix(suffix)).and_then(|v| v.parse().ok())
        };
        match s {
            "exact-proof" => Ok(Label::ExactProof),
            "refuted-with-witness" => Ok(Label::RefutedWithWitness),
            "not-run" => Ok(Label::NotRun),
            _ => {
                if let Some(d) = num("verified-at-degree-", "") {
                    Ok(Label::VerifiedAtDegree(d))
                } else if let Some(p) = num("verified-at-", "-points") {
                    Ok(Label::VerifiedAtPoints(p as usize))
                } else {
                    Err(format!("unknown label `{s}`"))
                }
            }
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One named check. Fields are declared in alphabetical order so that the
/// serialized JSON is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub detail: Option<String>,
    pub label: Label,
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, label: Label) -> Self {
        Check { detail: None, label, name: name.into(), verdict: Verdict::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            detail: None,
            label: Label::RefutedWithWitness,
            name: name.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            detail: Some(reason.into()),
            label: Label::NotRun,
            name: name.into(),
            verdict: Verdict::Skipped,
            witness: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// A named group of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub suite: String,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { checks: Vec::new(), suite: suite.into() }
    }

    pub fn single(suite: impl Into<String>, check: Check) -> Self {
        Report { checks: vec![check], suite: suite.into() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// No check failed. Skipped checks do not count against a report.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.failed())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {}\n\n| check | verdict | label | witness |\n|---|---|---|---|\n", self.suite);
        for c in &self.checks {
            let verdict = serde_json::to_value(c.verdict).unwrap();
            s.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                cell(&c.name),
                verdict.as_str().unwrap_or_default(),
                c.label,
                cell(c.witness.as_deref().unwrap_or(""))
            ));
        }
        s
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for l in [
            Label::ExactProof,
            Label::VerifiedAtDegree(6),
            Label::VerifiedAtPoints(20),
            Label::RefutedWithWitness,
            Label::NotRun,
        ] {
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
        }
        assert_eq!(Label::VerifiedAtPoints(20).to_string(), "verified-at-20-points");
    }

    #[test]
    fn report_json_is_sorted() {
        let mut r = Report::new("demo");
        r.push(Check::pass("a", Label::ExactProof));
        r.push(Check::fail("b", "x=1"));
        assert!(!r.passed());
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.starts_with("{\"checks\":[{\"detail\":null,\"label\":\"exact-proof\",\"name\":\"a\""));
        assert!(r.to_markdown().contains("| b | fail | refuted-with-witness | x=1 |"));
    }
}
