//! Exhaustive property checks over small instances.
//!
//! Each check evaluates one instance and returns a [`PropertyReport`];
//! reports for the same property merge by summing counts, concatenating
//! violations and taking the maximum gain. A *gain* is the amount by which
//! a property fails, so a passing report has no positive gain.

mod checks;
mod corpus;
mod deviation;
mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{as_string, format_rational, Rational};

pub use checks::{
    check_degeneracy, check_dominance, check_ic, check_idm_floor, check_ir, check_oracle, check_zero_payment,
    cut_report, IcOptions, Instance,
};
pub use corpus::{build_corpus, run_suites, CorpusConfig, Suite};
pub use deviation::{default_bid_grid, degree_cap, deviation_space, Deviation, DEFAULT_DEGREE_CAP, DEGREE_CAP_ENV};
pub use oracle::{brute_force_shortest_path, brute_force_welfare, enumerate_trading_paths, BRUTE_FORCE_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub node: Option<String>,
    pub detail: String,
    #[serde(with = "as_string")]
    pub gain: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub instances_checked: usize,
    /// Mechanism runs or node checks performed.
    pub evaluations: u64,
    pub violations: Vec<Violation>,
    #[serde(with = "as_string")]
    pub max_gain: Rational,
    /// Instances with a positive gain that tie-breaking decided; excluded
    /// from the assertion.
    pub flagged: BTreeSet<String>,
    #[serde(with = "as_string")]
    pub max_flagged_gain: Rational,
}

impl PropertyReport {
    pub fn new(property: impl Into<String>) -> Self {
        PropertyReport {
            property: property.into(),
            instances_checked: 0,
            evaluations: 0,
            violations: Vec::new(),
            max_gain: Rational::zero(),
            flagged: BTreeSet::new(),
            max_flagged_gain: Rational::zero(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.max_gain <= Rational::zero()
    }

    /// Records one comparison. Positive gains become violations unless `tied`.
    pub fn observe(
        &mut self,
        instance: &str,
        node: Option<&str>,
        detail: impl FnOnce() -> String,
        gain: Rational,
        tied: bool,
    ) {
        self.evaluations += 1;
        if gain <= Rational::zero() {
            return;
        }
        if tied {
            self.flagged.insert(instance.to_string());
            self.max_flagged_gain = self.max_flagged_gain.max(gain);
        } else {
            self.max_gain = self.max_gain.max(gain);
            self.violations.push(Violation {
                instance: instance.to_string(),
                node: node.map(str::to_string),
                detail: detail(),
                gain,
            });
        }
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.instances_checked += other.instances_checked;
        self.evaluations += other.evaluations;
        self.violations.extend(other.violations);
        self.max_gain = self.max_gain.max(other.max_gain);
        self.flagged.extend(other.flagged);
        self.max_flagged_gain = self.max_flagged_gain.max(other.max_flagged_gain);
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: instances={} evaluations={} violations={} max_gain={} flagged={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.property,
            self.instances_checked,
            self.evaluations,
            self.violations.len(),
            format_rational(&self.max_gain),
            self.flagged.len(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ties_are_flagged_not_violations() {
        let mut r = PropertyReport::new("ic");
        r.observe("a", Some("X"), || "d".into(), int(0), false);
        r.observe("a", Some("X"), || "d".into(), int(2), true);
        assert!(r.passed());
        assert_eq!(r.flagged.len(), 1);
        r.observe("b", Some("Y"), || "d".into(), int(1), false);
        assert!(!r.passed());
        assert_eq!(r.max_gain, int(1));
    }

    #[test]
    fn merge_sums_and_maxes() {
        let mut a = PropertyReport::new("p");
        a.instances_checked = 2;
        let mut b = PropertyReport::new("p");
        b.instances_checked = 3;
        b.observe("x", None, || "d".into(), int(5), false);
        a.merge(b);
        assert_eq!(a.instances_checked, 5);
        assert_eq!(a.max_gain, int(5));
        assert_eq!(a.violations.len(), 1);
    }
}
