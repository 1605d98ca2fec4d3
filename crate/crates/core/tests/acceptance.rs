//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p diffusion-auction --test acceptance -- --nocapture`
//! to see the lines.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::Signed;

use diffusion_auction::critical::MinimalCut;
use diffusion_auction::fixtures::fig1;
use diffusion_auction::harness::{build_corpus, run_suites, CorpusConfig, Instance, PropertyReport, Suite};
use diffusion_auction::mechanism::{cdm, reduced_distance, secondary_nodes, vickrey, wdm, wdm_allocate};
use diffusion_auction::rational::{int, Rational};

/// Amounts are compared exactly.
const TOLERANCE: i64 = 0;
const FIXTURE_RUNTIME: Duration = Duration::from_secs(1);
const SUITE_RUNTIME: Duration = Duration::from_secs(600);
const CORPUS_SEEDS: usize = 500;
const DEGREE_CAP: usize = 10;

fn report(criterion: u32, name: &str, ok: bool, detail: &str) {
    println!("criterion {criterion} {name}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn exact(actual: Rational, expected: i64) -> bool {
    (actual - int(expected)).abs() <= int(TOLERANCE)
}

fn corpus() -> &'static [Instance] {
    static CORPUS: OnceLock<Vec<Instance>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let config = CorpusConfig { seeds: CORPUS_SEEDS, ..CorpusConfig::default() };
        assert!(config.generator.n <= 5 && config.generator.value_max <= 10 && config.generator.weight_max <= 5);
        build_corpus(&config).unwrap()
    })
}

fn suite(criterion: u32, name: &str, which: Suite) -> Vec<PropertyReport> {
    let start = Instant::now();
    let reports = run_suites(&[which], corpus(), DEGREE_CAP).unwrap();
    let elapsed = start.elapsed();
    let ok = reports.iter().all(PropertyReport::passed) && elapsed <= SUITE_RUNTIME;
    let summary: Vec<String> = reports.iter().map(ToString::to_string).collect();
    report(criterion, name, ok, &format!("({:.2?}) {}", elapsed, summary.join("; ")));
    for r in &reports {
        assert!(r.instances_checked >= CORPUS_SEEDS, "{r}");
        assert!(r.passed(), "{r}: {:?}", r.violations.first());
    }
    assert!(elapsed <= SUITE_RUNTIME, "took {elapsed:?}");
    reports
}

#[test]
fn criterion_1_unweighted_example() {
    let start = Instant::now();
    let g = fig1().zero_weight_projection();
    let t = g.truthful_profile();
    let out = cdm(&g, &t, &MinimalCut).unwrap();
    let base = vickrey(&g, &t).unwrap();
    let elapsed = start.elapsed();
    let f = g.node("F").unwrap();
    let ok = out.winner == Some(f)
        && exact(out.payment(g.node("B").unwrap()), -3)
        && exact(out.payment(f), 6)
        && exact(out.revenue, 3)
        && exact(base.revenue, 1)
        && elapsed < FIXTURE_RUNTIME;
    report(1, "unweighted example", ok, &format!("revenue={} baseline={} ({elapsed:.2?})", out.revenue, base.revenue));
    assert!(ok);
}

#[test]
fn criterion_2_weighted_example() {
    let start = Instant::now();
    let g = fig1();
    let t = g.truthful_profile();
    let out = wdm(&g, &t).unwrap();
    let alloc = wdm_allocate(&g, &t).unwrap();
    let secondary = secondary_nodes(&g, &t, &alloc);
    let node = |id: &str| g.node(id).unwrap();
    let reduced = reduced_distance(&g, &t, &alloc.context, node("E"), node("F")).unwrap();
    let elapsed = start.elapsed();
    let ok = out.winner == Some(node("F"))
        && exact(out.payment(node("F")), 9)
        && exact(out.payment(node("B")), -2)
        && exact(out.payment(node("E")), 0)
        && exact(out.revenue, 7)
        && secondary == [node("E")]
        && exact(reduced, 3)
        && elapsed < FIXTURE_RUNTIME;
    report(2, "weighted example", ok, &format!("revenue={} reduced={reduced} ({elapsed:.2?})", out.revenue));
    assert!(ok);
}

#[test]
fn criterion_3_incentive_compatibility() {
    let reports = suite(3, "incentive compatibility", Suite::Ic);
    assert_eq!(reports.len(), 3);
}

#[test]
fn criterion_4_individual_rationality() {
    suite(4, "individual rationality", Suite::Ir);
}

#[test]
fn criterion_5_baseline_dominance() {
    suite(5, "baseline dominance", Suite::Dominance);
}

#[test]
fn criterion_6_revenue_floor() {
    suite(6, "revenue floor", Suite::Floor);
}

#[test]
fn criterion_7_oracle_agreement() {
    suite(7, "oracle agreement", Suite::Oracle);
}

#[test]
fn criterion_8_zero_payment() {
    suite(8, "zero payment", Suite::ZeroPayment);
}

#[test]
fn criterion_9_degeneracy() {
    suite(9, "unweighted degeneracy", Suite::Degeneracy);
}
