use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::deviation::{deviation_space, Deviation};
use super::oracle::{brute_force_shortest_path, brute_force_welfare};
use super::PropertyReport;
use crate::critical::{critical_sequence, highest_bidder, validate_cut_strategy, CutStrategy, CutValidation, IdmCut};
use crate::error::HarnessError;
use crate::graph::{Graph, NodeId};
use crate::mechanism::{cdm, wdm, wdm_allocate, wdm_pay, Mechanism};
use crate::profile::{RemovalSpec, Report, ReportedProfile};
use crate::rational::{format_rational, Rational};

/// A named graph under test.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

impl Instance {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Instance { name: name.into(), graph }
    }

    pub fn zero_weight(&self) -> Instance {
        Instance { name: self.name.clone(), graph: self.graph.zero_weight_projection() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IcOptions {
    /// Random opponent profiles drawn per instance.
    pub spot_checks: usize,
    pub seed: u64,
    pub degree_cap: usize,
}

impl Default for IcOptions {
    fn default() -> Self {
        IcOptions { spot_checks: 16, seed: 0, degree_cap: super::DEFAULT_DEGREE_CAP }
    }
}

/// Utility gain of every deviation over truth, first with every other node
/// truthful, then under random opponent profiles.
pub fn check_ic(
    mechanism: &dyn Mechanism,
    instance: &Instance,
    grid: &[Rational],
    options: &IcOptions,
) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new(format!("ic:{}", mechanism.name()));
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    let informed = graph.informed_set(&truthful);
    for node in informed {
        let space = deviation_space(graph, node, grid, options.degree_cap)?;
        assess_node(mechanism, instance, &truthful, node, &space, "truthful opponents", &mut report)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let nodes: Vec<NodeId> = graph.nodes().collect();
    if nodes.is_empty() {
        return Ok(report);
    }
    for draw in 0..options.spot_checks {
        let node = *nodes.choose(&mut rng).expect("non-empty");
        let opponents = random_profile(graph, grid, &mut rng).with_report(node, Some(graph.truthful_report(node)));
        if !graph.informed_set(&opponents).contains(node) {
            continue;
        }
        let space = deviation_space(graph, node, grid, options.degree_cap)?;
        let label = format!("random opponents #{draw} [{}]", describe_profile(graph, &opponents));
        assess_node(mechanism, instance, &opponents, node, &space, &label, &mut report)?;
    }
    Ok(report)
}

fn random_profile(graph: &Graph, grid: &[Rational], rng: &mut ChaCha8Rng) -> ReportedProfile {
    let mut profile = ReportedProfile::nil(graph);
    for node in graph.nodes() {
        if rng.gen_ratio(1, 8) {
            continue;
        }
        let pick = rng.gen_range(0..=grid.len());
        let bid = grid.get(pick).copied();
        let diffusion = graph.true_neighbors(node).iter().filter(|_| rng.gen_bool(0.5)).collect();
        profile.set(node, Some(Report { bid, diffusion }));
    }
    profile
}

/// `id=bid/{targets}` per non-nil node, `-` for a missing bid.
pub fn describe_profile(graph: &Graph, profile: &ReportedProfile) -> String {
    graph
        .nodes()
        .filter_map(|n| {
            let r = profile.report(n)?;
            let bid = r.bid.map_or_else(|| "-".to_string(), |b| format_rational(&b));
            Some(format!("{}={bid}/{{{}}}", graph.id(n), graph.ids_of(r.diffusion).join(",")))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn assess_node(
    mechanism: &dyn Mechanism,
    instance: &Instance,
    others: &ReportedProfile,
    node: NodeId,
    space: &[Deviation],
    context: &str,
    report: &mut PropertyReport,
) -> Result<(), HarnessError> {
    let graph = &instance.graph;
    let value = graph.value(node);
    let baseline = mechanism.run_or_no_sale(graph, others)?;
    let truthful_utility = baseline.utility(node, value);
    for &dev in space {
        if dev.is_truthful(graph) {
            continue;
        }
        let outcome = mechanism.run_or_no_sale(graph, &others.with_report(node, dev.to_report()))?;
        let gain = outcome.utility(node, value) - truthful_utility;
        report.observe(
            &instance.name,
            Some(graph.id(node)),
            || format!("{context}: {} gains {}", dev.describe(graph), format_rational(&gain)),
            gain,
            baseline.tied || outcome.tied,
        );
    }
    Ok(())
}

/// Truthful bid with every diffusion subset never yields negative utility.
pub fn check_ir(mechanism: &dyn Mechanism, instance: &Instance) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new(format!("ir:{}", mechanism.name()));
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    for node in graph.informed_set(&truthful) {
        let value = graph.value(node);
        for diffusion in graph.true_neighbors(node).subsets() {
            let profile = truthful.with_report(node, Some(Report { bid: Some(value), diffusion }));
            let outcome = mechanism.run_or_no_sale(graph, &profile)?;
            let utility = outcome.utility(node, value);
            report.observe(
                &instance.name,
                Some(graph.id(node)),
                || format!("diffusing to {:?} gives utility {}", graph.ids_of(diffusion), format_rational(&utility)),
                -utility,
                false,
            );
        }
    }
    Ok(report)
}

/// Revenue and welfare at the truthful profile are at least Vickrey's.
pub fn check_dominance(mechanism: &dyn Mechanism, instance: &Instance) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new(format!("dominance:{}", mechanism.name()));
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    let outcome = mechanism.run_or_no_sale(graph, &truthful)?;
    let baseline = crate::mechanism::Vickrey.run_or_no_sale(graph, &truthful)?;
    for (what, ours, theirs) in
        [("revenue", outcome.revenue, baseline.revenue), ("welfare", outcome.welfare, baseline.welfare)]
    {
        report.observe(
            &instance.name,
            None,
            || format!("{what} {} below vickrey {}", format_rational(&ours), format_rational(&theirs)),
            theirs - ours,
            false,
        );
    }
    Ok(report)
}

/// `W*` once the first critical node of the highest bidder is removed.
fn welfare_without_first_critical(graph: &Graph, profile: &ReportedProfile) -> Option<Rational> {
    let m = highest_bidder(graph, profile)?;
    let seq = critical_sequence(graph, profile, m).expect("highest bidder is informed");
    Some(graph.max_welfare(&graph.restrict(profile, &RemovalSpec::node(seq.first()))).welfare)
}

/// On an unweighted instance, every strategy earns at least the IDM revenue,
/// which equals `W*` without the first critical node.
pub fn check_idm_floor(instance: &Instance, strategies: &[&dyn CutStrategy]) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new("idm-floor");
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    let Some(floor) = welfare_without_first_critical(graph, &truthful) else { return Ok(report) };
    let idm = cdm(graph, &truthful, &IdmCut)?;
    report.observe(
        &instance.name,
        None,
        || format!("idm revenue {} differs from {}", format_rational(&idm.revenue), format_rational(&floor)),
        (idm.revenue - floor).abs(),
        false,
    );
    for strategy in strategies {
        let other = cdm(graph, &truthful, *strategy)?;
        report.observe(
            &instance.name,
            None,
            || {
                format!(
                    "{} revenue {} below idm {}",
                    strategy.name(),
                    format_rational(&other.revenue),
                    format_rational(&idm.revenue)
                )
            },
            idm.revenue - other.revenue,
            false,
        );
    }
    Ok(report)
}

/// A path node whose γ-restricted efficient path reaches past it on the
/// efficient path pays exactly zero.
pub fn check_zero_payment(instance: &Instance) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new("zero-payment");
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    let allocation = match wdm_allocate(graph, &truthful) {
        Ok(a) => a,
        Err(crate::error::MechanismError::EmptyMarket) => return Ok(report),
        Err(e) => return Err(e.into()),
    };
    let payments = wdm_pay(graph, &truthful, &allocation)?;
    let efficient = &allocation.context.efficient_path;
    for (pos, &node) in allocation.path.nodes[..allocation.path.nodes.len() - 1].iter().enumerate() {
        let beyond: crate::NodeSet = efficient.nodes[pos + 1..].iter().copied().collect();
        let restricted = graph.restrict(&truthful, &allocation.context.relay_cuts[pos].to_removal());
        let Some(path) = graph.efficient_allocation(&restricted).path else { continue };
        if path.node_set().intersection(beyond).is_empty() {
            continue;
        }
        let paid = payments.payments.get(&node).copied().unwrap_or_default();
        report.observe(
            &instance.name,
            Some(graph.id(node)),
            || format!("pays {} although its cut market still uses the path beyond it", format_rational(&paid)),
            paid.abs(),
            false,
        );
    }
    Ok(report)
}

/// Shortest paths and the efficient allocation agree with enumeration, at
/// the truthful profile and at a few random profiles.
pub fn check_oracle(instance: &Instance, random_profiles: usize, seed: u64) -> Result<PropertyReport, HarnessError> {
    let mut report = PropertyReport::new("oracle");
    report.instances_checked = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for graph in [instance.graph.clone(), instance.graph.zero_weight_projection()] {
        let grid = super::default_bid_grid(&graph);
        let mut profiles = vec![graph.truthful_profile()];
        profiles.extend((0..random_profiles).map(|_| random_profile(&graph, &grid, &mut rng)));
        for profile in &profiles {
            compare_with_oracle(instance, &graph, profile, &mut report)?;
        }
    }
    Ok(report)
}

fn compare_with_oracle(
    instance: &Instance,
    graph: &Graph,
    profile: &ReportedProfile,
    report: &mut PropertyReport,
) -> Result<(), HarnessError> {
    let expected = match brute_force_welfare(graph, profile) {
        Ok(e) => e,
        Err(HarnessError::TooLarge { .. }) => return Ok(()),
        Err(e) => return Err(e),
    };
    let actual = graph.efficient_allocation(profile);
    let mismatch = u8::from(actual != expected);
    report.observe(
        &instance.name,
        None,
        || format!("efficient allocation {actual:?} differs from enumeration {expected:?}"),
        Rational::from_integer(mismatch.into()),
        false,
    );
    for node in graph.informed_set(profile) {
        let expected = brute_force_shortest_path(graph, profile, node)?;
        let actual = graph.shortest_trading_path(profile, node);
        let mismatch = u8::from(actual != expected);
        report.observe(
            &instance.name,
            Some(graph.id(node)),
            || format!("shortest path {actual:?} differs from enumeration {expected:?}"),
            Rational::from_integer(mismatch.into()),
            false,
        );
    }
    Ok(())
}

/// On a zero-weight instance the weighted mechanism sells to a critical node
/// of the highest bidder and earns at least `W*` without the first one.
pub fn check_degeneracy(instance: &Instance) -> Result<PropertyReport, HarnessError> {
    let graph = &instance.graph;
    let mut report = PropertyReport::new("degeneracy");
    report.instances_checked = 1;
    let truthful = graph.truthful_profile();
    let Some(m) = highest_bidder(graph, &truthful) else { return Ok(report) };
    let seq = critical_sequence(graph, &truthful, m).expect("highest bidder is informed");
    let outcome = wdm(graph, &truthful)?;
    let winner = outcome.winner.expect("a non-empty market sells");
    report.observe(
        &instance.name,
        Some(graph.id(winner)),
        || format!("winner is not on the critical sequence {:?}", graph.ids_of(seq.nodes.iter().copied())),
        Rational::from_integer(i64::from(seq.position(winner).is_none())),
        false,
    );
    let floor = welfare_without_first_critical(graph, &truthful).expect("market is non-empty");
    report.observe(
        &instance.name,
        None,
        || format!("revenue {} below {}", format_rational(&outcome.revenue), format_rational(&floor)),
        floor - outcome.revenue,
        false,
    );
    Ok(report)
}

/// Converts a cut-strategy validation into a report.
pub fn cut_report(validation: &CutValidation) -> PropertyReport {
    let mut report = PropertyReport::new(format!("cuts:{}", validation.strategy));
    report.instances_checked = validation.instances_checked;
    report.evaluations = validation.positions_checked as u64;
    if let Some(c) = &validation.counterexample {
        report.max_gain = Rational::from_integer(1);
        report.violations.push(super::Violation {
            instance: format!("#{}", c.instance),
            node: None,
            detail: format!("{} at position {}: {}", c.property.label(), c.position, c.detail),
            gain: Rational::from_integer(1),
        });
    }
    report
}

/// Validates `strategy` on the given instances at the truthful profile.
pub fn validate_on(strategy: &dyn CutStrategy, instances: &[Instance]) -> CutValidation {
    let corpus: Vec<(Graph, ReportedProfile)> =
        instances.iter().map(|i| (i.graph.clone(), i.graph.truthful_profile())).collect();
    validate_cut_strategy(strategy, &corpus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::MinimalCut;
    use crate::fixtures::{fig1, star};
    use crate::mechanism::{vickrey, Cdm, Wdm};
    use crate::rational::int;

    fn fig1_instance() -> Instance {
        Instance::new("fig1", fig1())
    }

    #[test]
    fn truth_only_grid_has_no_gain() {
        let inst = fig1_instance();
        let opts = IcOptions { spot_checks: 0, ..IcOptions::default() };
        let grid: Vec<Rational> = Vec::new();
        let r = check_ic(&Wdm, &inst, &grid, &opts).unwrap();
        assert_eq!(r.max_gain, int(0));
    }

    #[test]
    fn fig1_dominance() {
        let inst = fig1_instance();
        let r = check_dominance(&Wdm, &inst).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_dominance(&Cdm::new(MinimalCut), &inst.zero_weight()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn star_matches_vickrey() {
        let inst = Instance::new("star", star(&[("A", 3), ("B", 7), ("C", 5)]));
        let t = inst.graph.truthful_profile();
        let base = vickrey(&inst.graph, &t).unwrap();
        for m in [&Wdm as &dyn Mechanism, &Cdm::new(MinimalCut), &Cdm::new(IdmCut)] {
            let out = m.run(&inst.graph, &t).unwrap();
            assert_eq!(out.revenue, base.revenue);
            assert_eq!(out.welfare, base.welfare);
        }
    }

    #[test]
    fn fig1_floor_and_zero_payment() {
        let inst = fig1_instance();
        let r = check_idm_floor(&inst.zero_weight(), &[&MinimalCut]).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_zero_payment(&inst).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn fig1_oracle_and_degeneracy() {
        let inst = fig1_instance();
        let r = check_oracle(&inst, 8, 1).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_degeneracy(&inst.zero_weight()).unwrap();
        assert!(r.passed(), "{r}");
    }
}
