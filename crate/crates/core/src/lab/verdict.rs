use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Verified,
    Counterexample,
    HypothesesUnmet,
    GuardExceeded,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Counterexample => "counterexample",
            Outcome::HypothesesUnmet => "hypotheses-unmet",
            Outcome::GuardExceeded => "guard-exceeded",
        }
    }
}

/// Named integer data backing a verdict (a codeword, a pair of elements,
/// a submodule, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub data: Vec<Vec<u32>>,
}

/// Enumeration scope for the code verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest code length.
    pub max_n: usize,
    /// Largest number of code generators.
    pub max_gens: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_n: 3, max_gens: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub claim: String,
    /// Hypotheses in the order they were checked.
    pub hypotheses: Vec<(String, bool)>,
    pub outcome: Outcome,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn new(claim: &str) -> Self {
        VerdictReport {
            claim: claim.to_string(),
            hypotheses: Vec::new(),
            outcome: Outcome::Verified,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push((name.to_string(), holds));
        if !holds && self.outcome == Outcome::Verified {
            self.outcome = Outcome::HypothesesUnmet;
        }
        holds
    }

    pub fn count(&mut self, name: &str, value: u64) {
        self.counts.insert(name.to_string(), value);
    }

    pub fn bump(&mut self, name: &str) {
        *self.counts.entry(name.to_string()).or_insert(0) += 1;
    }

    pub fn witness(&mut self, label: &str, data: Vec<Vec<u32>>) {
        self.witnesses.push(Witness {
            label: label.to_string(),
            data,
        });
    }

    /// Records a failure of the claim itself.
    pub fn refute(&mut self, label: &str, data: Vec<Vec<u32>>) {
        self.outcome = Outcome::Counterexample;
        self.witness(label, data);
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|(_, h)| *h)
    }

    /// Runs `body`, turning a guard trip into [`Outcome::GuardExceeded`].
    pub(crate) fn run(claim: &str, body: impl FnOnce(&mut VerdictReport) -> Result<()>) -> Result<VerdictReport> {
        let mut report = VerdictReport::new(claim);
        match body(&mut report) {
            Ok(()) => Ok(report),
            Err(e @ Error::GuardExceeded { .. }) => {
                report.outcome = Outcome::GuardExceeded;
                report.notes.push(e.to_string());
                Ok(report)
            }
            Err(e) => Err(e),
        }
    }
}
