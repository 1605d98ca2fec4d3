//! Seeded corpora and the suite runner behind `verify`.

use std::fmt;
use std::str::FromStr;

use super::checks::{
    check_degeneracy, check_dominance, check_ic, check_idm_floor, check_ir, check_oracle, check_zero_payment,
    cut_report, validate_on, IcOptions, Instance,
};
use super::{default_bid_grid, PropertyReport};
use crate::critical::{CutStrategy, IdmCut, MinimalCut};
use crate::error::{GenError, HarnessError};
use crate::generate::{gen_random, GenConfig};
use crate::mechanism::{Cdm, Mechanism, Wdm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Ic,
    Ir,
    Dominance,
    Floor,
    Oracle,
    ZeroPayment,
    Degeneracy,
    Cuts,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Ic,
        Suite::Ir,
        Suite::Dominance,
        Suite::Floor,
        Suite::Oracle,
        Suite::ZeroPayment,
        Suite::Degeneracy,
        Suite::Cuts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Ic => "ic",
            Suite::Ir => "ir",
            Suite::Dominance => "dominance",
            Suite::Floor => "floor",
            Suite::Oracle => "oracle",
            Suite::ZeroPayment => "zero-payment",
            Suite::Degeneracy => "degeneracy",
            Suite::Cuts => "cuts",
        }
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>, String> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err("no suites selected".into());
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.as_str()).collect();
            format!("unknown suite `{s}` (expected one of {}, or all)", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seeds: usize,
    /// Instance `k` is generated with seed `first_seed + k`.
    pub first_seed: u64,
    pub generator: GenConfig,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seeds: 500, first_seed: 0, generator: GenConfig::default() }
    }
}

pub fn build_corpus(config: &CorpusConfig) -> Result<Vec<Instance>, GenError> {
    (0..config.seeds as u64)
        .map(|k| {
            let seed = config.first_seed.wrapping_add(k);
            let graph = gen_random(&GenConfig { seed, ..config.generator })?;
            Ok(Instance::new(format!("seed-{seed}"), graph))
        })
        .collect()
}

/// Runs each suite over every instance and merges the per-instance reports.
/// Unweighted properties run on the zero-weight projection.
pub fn run_suites(
    suites: &[Suite],
    instances: &[Instance],
    degree_cap: usize,
) -> Result<Vec<PropertyReport>, HarnessError> {
    let idm = Cdm::new(IdmCut);
    let minimal = Cdm::new(MinimalCut);
    let zeroed: Vec<Instance> = instances.iter().map(Instance::zero_weight).collect();
    let per_mechanism: [(&dyn Mechanism, &[Instance]); 3] = [(&idm, &zeroed), (&minimal, &zeroed), (&Wdm, instances)];

    let mut reports = Vec::new();
    for &suite in suites {
        match suite {
            Suite::Ic => {
                for (mechanism, corpus) in per_mechanism {
                    reports.push(merged(format!("ic:{}", mechanism.name()), corpus, |k, inst| {
                        let options = IcOptions { spot_checks: 16, seed: k as u64, degree_cap };
                        check_ic(mechanism, inst, &default_bid_grid(&inst.graph), &options)
                    })?);
                }
            }
            Suite::Ir => {
                for (mechanism, corpus) in per_mechanism {
                    reports
                        .push(merged(format!("ir:{}", mechanism.name()), corpus, |_, inst| check_ir(mechanism, inst))?);
                }
            }
            Suite::Dominance => {
                for (mechanism, corpus) in per_mechanism {
                    reports.push(merged(format!("dominance:{}", mechanism.name()), corpus, |_, inst| {
                        check_dominance(mechanism, inst)
                    })?);
                }
            }
            Suite::Floor => {
                let strategies: [&dyn CutStrategy; 1] = [&MinimalCut];
                reports.push(merged("idm-floor".into(), &zeroed, |_, inst| check_idm_floor(inst, &strategies))?);
            }
            Suite::Oracle => {
                reports.push(merged("oracle".into(), instances, |k, inst| check_oracle(inst, 4, k as u64))?);
            }
            Suite::ZeroPayment => {
                reports.push(merged("zero-payment".into(), instances, |_, inst| check_zero_payment(inst))?);
            }
            Suite::Degeneracy => {
                reports.push(merged("degeneracy".into(), &zeroed, |_, inst| check_degeneracy(inst))?);
            }
            Suite::Cuts => {
                for strategy in [&IdmCut as &dyn CutStrategy, &MinimalCut] {
                    reports.push(cut_report(&validate_on(strategy, &zeroed)));
                }
            }
        }
    }
    Ok(reports)
}

fn merged(
    property: String,
    corpus: &[Instance],
    mut check: impl FnMut(usize, &Instance) -> Result<PropertyReport, HarnessError>,
) -> Result<PropertyReport, HarnessError> {
    let mut total = PropertyReport::new(property);
    for (k, inst) in corpus.iter().enumerate() {
        total.merge(check(k, inst)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists_parse() {
        assert_eq!(Suite::parse_list("ic, ir,ic").unwrap(), vec![Suite::Ic, Suite::Ir]);
        assert_eq!(Suite::parse_list("all").unwrap().len(), Suite::ALL.len());
        assert!(Suite::parse_list("ic,nope").is_err());
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn corpus_is_deterministic() {
        let config = CorpusConfig { seeds: 5, ..CorpusConfig::default() };
        let a = build_corpus(&config).unwrap();
        let b = build_corpus(&config).unwrap();
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.graph, y.graph);
        }
    }

    #[test]
    fn small_corpus_passes_every_suite() {
        let corpus = build_corpus(&CorpusConfig { seeds: 3, ..CorpusConfig::default() }).unwrap();
        for report in run_suites(&Suite::ALL, &corpus, 10).unwrap() {
            assert!(report.passed(), "{report}: {:?}", report.violations.first());
        }
    }
}
