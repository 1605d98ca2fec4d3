//! Searches completions of the eight-buyer example over a small parameter box
//! and checks that the bundled fixture is one of the completions reproducing
//! every quoted outcome.

use diffusion_auction::critical::{critical_sequence, dependents, MinimalCut};
use diffusion_auction::fixtures::fig1;
use diffusion_auction::harness::brute_force_welfare;
use diffusion_auction::mechanism::{
    cdm, intermediaries, reduced_distance, secondary_nodes, vickrey, wdm, wdm_allocate,
};
use diffusion_auction::rational::int;
use diffusion_auction::{Graph, NodeSet, RemovalSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Params {
    b: i64,
    d: i64,
    f: i64,
    g: i64,
    h: i64,
    bd: i64,
    fg: i64,
    fh: i64,
    hg: i64,
}

fn build(p: Params) -> Graph {
    let values = [("A", 1), ("B", p.b), ("C", 4), ("D", p.d), ("E", 6), ("F", p.f), ("G", p.g), ("H", p.h)];
    let edges = [
        ("s", "A", 0),
        ("s", "B", 0),
        ("A", "s", 0),
        ("B", "A", 1),
        ("B", "C", 1),
        ("B", "D", p.bd),
        ("B", "E", 0),
        ("C", "B", 1),
        ("D", "B", 1),
        ("D", "F", 3 - p.bd),
        ("E", "B", 1),
        ("E", "F", 0),
        ("F", "G", p.fg),
        ("F", "H", p.fh),
        ("H", "G", p.hg),
    ];
    Graph::new(
        "s",
        values.iter().map(|(id, v)| (id.to_string(), int(*v))),
        edges.iter().map(|(a, b, w)| (a.to_string(), b.to_string(), int(*w))),
    )
    .unwrap()
}

fn names(g: &Graph, set: NodeSet) -> Vec<String> {
    g.ids_of(set.iter())
}

/// Structural constraints plus every quoted outcome.
fn reproduces(g: &Graph) -> bool {
    let t = g.truthful_profile();
    let node = |id: &str| g.node(id).unwrap();
    let top = g.nodes().map(|x| g.value(x)).max().unwrap();
    if g.value(node("G")) != top || g.nodes().filter(|&x| g.value(x) == top).count() != 1 {
        return false;
    }
    if names(g, intermediaries(g, &t, node("B"))) != ["A", "D", "E"] {
        return false;
    }
    if names(g, dependents(g, &t, node("F"))) != ["F", "G", "H"] {
        return false;
    }
    let seq = critical_sequence(g, &t, node("G")).unwrap();
    if g.ids_of(seq.nodes.iter().copied()) != ["B", "F", "G"] {
        return false;
    }
    let Ok(reference) = brute_force_welfare(g, &t) else { return false };
    let Some(path) = reference.path else { return false };
    if g.ids_of(path.nodes.iter().copied()) != ["B", "E", "F"] || path.weight != int(0) {
        return false;
    }

    let z = g.zero_weight_projection();
    let zt = z.truthful_profile();
    let Ok(minimal) = cdm(&z, &zt, &MinimalCut) else { return false };
    let zf = z.node("F").unwrap();
    if minimal.winner != Some(zf)
        || minimal.payment(z.node("B").unwrap()) != int(-3)
        || minimal.payment(zf) != int(6)
        || minimal.revenue != int(3)
        || vickrey(&z, &zt).map(|o| o.revenue) != Ok(int(1))
    {
        return false;
    }

    let Ok(out) = wdm(g, &t) else { return false };
    if out.winner != Some(node("F"))
        || out.payment(node("F")) != int(9)
        || out.payment(node("B")) != int(-2)
        || out.payment(node("E")) != int(0)
        || out.revenue != int(7)
    {
        return false;
    }
    let alloc = wdm_allocate(g, &t).unwrap();
    secondary_nodes(g, &t, &alloc) == [node("E")]
        && reduced_distance(g, &t, &alloc.context, node("E"), node("F")) == Ok(int(3))
}

fn shipped() -> Params {
    Params { b: 2, d: 3, f: 10, g: 12, h: 5, bd: 1, fg: 4, fh: 2, hg: 3 }
}

#[test]
fn shipped_parameters_rebuild_the_fixture() {
    assert_eq!(build(shipped()), fig1());
}

/// Inclusive search ranges, in `Params` field order.
const BOX: [(i64, i64); 9] = [(1, 3), (2, 4), (9, 11), (11, 13), (4, 6), (0, 3), (3, 5), (1, 2), (2, 3)];

fn params(d: &[i64; 9]) -> Params {
    Params { b: d[0], d: d[1], f: d[2], g: d[3], h: d[4], bd: d[5], fg: d[6], fh: d[7], hg: d[8] }
}

#[test]
fn search_finds_the_shipped_completion() {
    let mut digits = BOX.map(|(lo, _)| lo);
    let mut found = Vec::new();
    'search: loop {
        let p = params(&digits);
        if reproduces(&build(p)) {
            found.push(p);
        }
        for (k, &(lo, hi)) in BOX.iter().enumerate() {
            if digits[k] < hi {
                digits[k] += 1;
                continue 'search;
            }
            digits[k] = lo;
        }
        break;
    }
    assert!(found.contains(&shipped()), "{} completions, shipped one missing", found.len());
}

#[test]
fn bundled_fixture_satisfies_the_constraints() {
    assert!(reproduces(&fig1()));
    let g = fig1();
    let t = g.truthful_profile();
    let without_b = g.restrict(&t, &RemovalSpec::node(g.node("B").unwrap()));
    assert!(!g.informed_set(&without_b).contains(g.node("C").unwrap()));
}
