//! The eight-buyer running example, unweighted and weighted.

use diffusion_auction::critical::{
    critical_sequence, cut_at, dependents, in_edge_cut, minimal_out_cut, IdmCut, MinimalCut,
};
use diffusion_auction::fixtures::fig1;
use diffusion_auction::mechanism::{
    cdm, intermediaries, reduced_distance, relay_cut, secondary_nodes, vickrey, wdm, wdm_allocate, wdm_pay,
};
use diffusion_auction::rational::int;
use diffusion_auction::{Graph, NodeId, NodeSet, RemovalSpec, ReportedProfile};

fn n(g: &Graph, id: &str) -> NodeId {
    g.node(id).unwrap_or_else(|| panic!("no node {id}"))
}

fn set(g: &Graph, ids: &[&str]) -> NodeSet {
    ids.iter().map(|id| n(g, id)).collect()
}

fn ids(g: &Graph, nodes: &[NodeId]) -> Vec<String> {
    g.ids_of(nodes.iter().copied())
}

fn edges(g: &Graph, pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut out: Vec<_> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    out.sort();
    let _ = g;
    out
}

fn setup() -> (Graph, ReportedProfile) {
    let g = fig1();
    let t = g.truthful_profile();
    (g, t)
}

#[test]
fn informed_sets() {
    let (g, t) = setup();
    assert_eq!(g.informed_set(&t), g.all_nodes());

    let cut = RemovalSpec::edges([(n(&g, "B"), n(&g, "D")), (n(&g, "B"), n(&g, "E"))]);
    assert_eq!(g.restrict(&t, &cut).non_nil(), set(&g, &["A", "B", "C"]));

    let without_f = g.restrict(&t, &RemovalSpec::node(n(&g, "F")));
    assert_eq!(without_f.non_nil(), set(&g, &["A", "B", "C", "D", "E"]));
    assert_eq!(g.informed_set(&without_f), set(&g, &["A", "B", "C", "D", "E"]));
}

#[test]
fn shortest_path_to_f() {
    let (g, t) = setup();
    let path = g.shortest_trading_path(&t, n(&g, "F")).unwrap();
    assert_eq!(ids(&g, &path.nodes), ["B", "E", "F"]);
    assert_eq!(path.weight, int(0));
}

#[test]
fn efficient_allocation_is_f() {
    let (g, t) = setup();
    let eff = g.efficient_allocation(&t);
    assert_eq!(eff.winner, Some(n(&g, "F")));
    assert_eq!(ids(&g, &eff.path.unwrap().nodes), ["B", "E", "F"]);
    assert_eq!(eff.welfare, int(10));
}

#[test]
fn critical_sequences_and_dependents() {
    let (g, t) = setup();
    let seq_g = critical_sequence(&g, &t, n(&g, "G")).unwrap();
    assert_eq!(ids(&g, &seq_g.nodes), ["B", "F", "G"]);
    let seq_f = critical_sequence(&g, &t, n(&g, "F")).unwrap();
    assert_eq!(ids(&g, &seq_f.nodes), ["B", "F"]);
    assert_eq!(dependents(&g, &t, n(&g, "F")), set(&g, &["F", "G", "H"]));

    let b = n(&g, "B");
    let remaining = g.informed_set(&g.restrict(&t, &RemovalSpec::node(b)));
    assert_eq!(remaining, g.all_nodes().difference(dependents(&g, &t, b)));
}

#[test]
fn cuts_on_the_critical_sequence_of_g() {
    let (g, t) = setup();
    let seq = critical_sequence(&g, &t, n(&g, "G")).unwrap();
    assert_eq!(in_edge_cut(&g, &t, &seq, 0).unwrap().named(&g), edges(&g, &[("D", "F"), ("E", "F")]));
    assert_eq!(minimal_out_cut(&g, &t, &seq, 0).unwrap().named(&g), edges(&g, &[("B", "D"), ("B", "E")]));
    assert_eq!(minimal_out_cut(&g, &t, &seq, 1).unwrap().named(&g), edges(&g, &[("F", "G"), ("F", "H")]));
    assert!(cut_at(&MinimalCut, &g, &t, &seq, 2).unwrap().is_empty());
    assert!(cut_at(&IdmCut, &g, &t, &seq, 2).unwrap().is_empty());
}

#[test]
fn unweighted_cdm_with_both_cuts() {
    let g = fig1().zero_weight_projection();
    let t = g.truthful_profile();
    let out = cdm(&g, &t, &MinimalCut).unwrap();
    assert_eq!(out.winner, Some(n(&g, "F")));
    assert_eq!(out.payment(n(&g, "B")), int(-3));
    assert_eq!(out.payment(n(&g, "F")), int(6));
    assert_eq!(out.revenue, int(3));
    assert_eq!(vickrey(&g, &t).unwrap().revenue, int(1));

    let idm = cdm(&g, &t, &IdmCut).unwrap();
    let w_without_b = g.max_welfare(&g.restrict(&t, &RemovalSpec::node(n(&g, "B")))).welfare;
    assert_eq!(w_without_b, int(1));
    assert_eq!(idm.revenue, w_without_b);
}

#[test]
fn weighted_wdm() {
    let (g, t) = setup();
    let b = n(&g, "B");
    let e = n(&g, "E");
    let f = n(&g, "F");
    assert_eq!(intermediaries(&g, &t, b), set(&g, &["A", "D", "E"]));

    let alloc = wdm_allocate(&g, &t).unwrap();
    assert_eq!(alloc.winner, f);
    let lm = &alloc.context.efficient_path;
    assert_eq!(ids(&g, &lm.nodes), ["B", "E", "F"]);
    assert_eq!(relay_cut(&g, &t, lm, 0).named(&g), edges(&g, &[("B", "A"), ("B", "D"), ("B", "E")]));
    assert_eq!(relay_cut(&g, &t, lm, 1).named(&g), edges(&g, &[("E", "B"), ("E", "F")]));
    assert!(relay_cut(&g, &t, lm, 2).is_empty());

    // B loses to C, E loses to F
    let after_b = g.efficient_allocation(&g.restrict(&t, &alloc.context.relay_cuts[0].to_removal()));
    assert_eq!(after_b.winner, Some(n(&g, "C")));
    let after_e = g.efficient_allocation(&g.restrict(&t, &alloc.context.relay_cuts[1].to_removal()));
    assert_ne!(after_e.winner, Some(e));

    assert_eq!(secondary_nodes(&g, &t, &alloc), vec![e]);
    assert_eq!(reduced_distance(&g, &t, &alloc.context, e, e).unwrap(), int(0));
    assert_eq!(reduced_distance(&g, &t, &alloc.context, e, f).unwrap(), int(3));
    assert_eq!(reduced_distance(&g, &t, &alloc.context, f, f).unwrap(), lm.weight);

    let pay = wdm_pay(&g, &t, &alloc).unwrap();
    assert_eq!(pay.critical_value, int(9));
    let out = wdm(&g, &t).unwrap();
    assert_eq!(out.payment(f), int(9));
    assert_eq!(out.payment(b), int(-2));
    assert_eq!(out.payment(e), int(0));
    assert_eq!(out.revenue, int(7));
    assert!(out.revenue > vickrey(&g, &t).unwrap().revenue);
    let without_f = g.max_welfare(&g.restrict(&t, &RemovalSpec::node(f))).welfare;
    assert_eq!(without_f + reduced_distance(&g, &t, &alloc.context, f, f).unwrap(), int(6));
}
