//! Weighted cut shapes where a path node links directly to a later path node.

use diffusion_auction::harness::{
    check_dominance, check_ic, check_zero_payment, default_bid_grid, IcOptions, Instance,
};
use diffusion_auction::mechanism::{private_leaves, relay_cut, vickrey, wdm, wdm_allocate, Wdm};
use diffusion_auction::rational::int;
use diffusion_auction::Graph;

fn graph(values: &[(&str, i64)], edges: &[(&str, &str, i64)]) -> Graph {
    Graph::new(
        "s",
        values.iter().map(|(id, v)| (id.to_string(), int(*v))),
        edges.iter().map(|(a, b, w)| (a.to_string(), b.to_string(), int(*w))),
    )
    .unwrap()
}

/// The winner sits behind a cheap detour but is also a direct neighbor of
/// the first path node.
fn detour() -> Graph {
    graph(&[("a", 2), ("b", 5), ("c", 9)], &[("s", "a", 0), ("a", "b", 1), ("a", "c", 2), ("b", "c", 0), ("c", "a", 3)])
}

/// A later node can shorten the path by hiding its link to the winner.
fn shortcut() -> Graph {
    graph(
        &[("a", 3), ("b", 1), ("c", 6), ("d", 8)],
        &[
            ("s", "a", 5),
            ("a", "b", 1),
            ("a", "c", 1),
            ("a", "d", 4),
            ("b", "a", 3),
            ("b", "d", 3),
            ("c", "b", 5),
            ("c", "d", 1),
        ],
    )
}

#[test]
fn direct_link_to_a_later_node_is_cut() {
    let g = detour();
    let t = g.truthful_profile();
    let alloc = wdm_allocate(&g, &t).unwrap();
    let path = &alloc.context.efficient_path;
    assert_eq!(g.ids_of(path.nodes.iter().copied()), ["a", "b", "c"]);
    let cut = relay_cut(&g, &t, path, 0).named(&g);
    assert!(cut.contains(&("a".to_string(), "c".to_string())));
}

#[test]
fn detour_keeps_revenue_above_the_baseline() {
    let g = detour();
    let t = g.truthful_profile();
    let out = wdm(&g, &t).unwrap();
    assert!(out.revenue >= vickrey(&g, &t).unwrap().revenue);
    let inst = Instance::new("detour", g);
    assert!(check_zero_payment(&inst).unwrap().passed());
    assert!(check_dominance(&Wdm, &inst).unwrap().passed());
}

#[test]
fn hiding_a_link_to_the_winner_does_not_pay() {
    let inst = Instance::new("shortcut", shortcut());
    let grid = default_bid_grid(&inst.graph);
    let options = IcOptions { spot_checks: 16, seed: 7, degree_cap: 10 };
    let report = check_ic(&Wdm, &inst, &grid, &options).unwrap();
    assert!(report.passed(), "{report}: {:?}", report.violations.first());
}

#[test]
fn private_leaves_ignore_the_reported_path() {
    let g = shortcut();
    let a = g.node("a").unwrap();
    assert!(private_leaves(&g, a).is_empty());

    let star = graph(&[("a", 1), ("b", 2), ("c", 3)], &[("s", "a", 0), ("a", "b", 0), ("b", "a", 0), ("a", "c", 0)]);
    let a = star.node("a").unwrap();
    assert_eq!(star.ids_of(private_leaves(&star, a).iter()), ["b", "c"]);
}
