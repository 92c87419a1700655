//! Verification reports: named checks with case counts and the first counterexample.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of instances examined.
    pub cases: u64,
    /// Number of failing instances.
    pub failures: u64,
    /// First counterexample, or a note on a passing check.
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(name: impl Into<String>, cases: u64) -> Self {
        Check {
            name: name.into(),
            pass: true,
            cases,
            failures: 0,
            witness: None,
        }
    }

    pub fn failed(name: impl Into<String>, cases: u64, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            cases,
            failures: 1,
            witness: Some(witness.into()),
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    /// Runs `f` on every case in parallel; `f` returns a description of a failure.
    pub fn run<T: Sync>(
        name: impl Into<String>,
        cases: &[T],
        f: impl Fn(&T) -> Option<String> + Sync + Send,
    ) -> Self {
        let fails: Vec<String> = cases.par_iter().filter_map(f).collect();
        Self::from_failures(name, cases.len(), fails)
    }

    /// Like [`Check::run`], with per-worker scratch state built by `init` (caches, multipliers).
    pub fn run_with_init<T: Sync, S>(
        name: impl Into<String>,
        cases: &[T],
        init: impl Fn() -> S + Sync + Send,
        f: impl Fn(&mut S, &T) -> Option<String> + Sync + Send,
    ) -> Self {
        let fails: Vec<String> = cases
            .par_iter()
            .map_init(init, |state, case| f(state, case))
            .flatten()
            .collect();
        Self::from_failures(name, cases.len(), fails)
    }

    fn from_failures(name: impl Into<String>, cases: usize, fails: Vec<String>) -> Self {
        Check {
            name: name.into(),
            pass: fails.is_empty(),
            cases: cases as u64,
            failures: fails.len() as u64,
            witness: fails.into_iter().next(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>, params: BTreeMap<String, String>) -> Self {
        VerificationReport {
            family: family.into(),
            params,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "{} [{}]", self.family, params.join(", "))?;
        for c in &self.checks {
            write!(
                f,
                "  {} {} ({} cases",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.cases
            )?;
            if c.failures > 0 {
                write!(f, ", {} failures", c.failures)?;
            }
            write!(f, ")")?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_counts_failures_in_order() {
        let cases: Vec<u32> = (0..100).collect();
        let c = Check::run("odd", &cases, |x| (x % 2 == 1).then(|| format!("{x}")));
        assert!(!c.pass);
        assert_eq!(c.failures, 50);
        assert_eq!(c.witness.as_deref(), Some("1"));
        let mut r = VerificationReport::new("t", BTreeMap::new());
        r.push(Check::passed("ok", 3));
        assert!(r.passed());
        r.push(c);
        assert!(!r.passed());
        let back: VerificationReport = serde_json::from_value(r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
