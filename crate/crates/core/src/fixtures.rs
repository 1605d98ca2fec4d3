//! Bundled example graphs.

use crate::graph::Graph;
use crate::io::parse_graph_str;

pub const FIG1_JSON: &str = include_str!("../fixtures/fig1.json");

/// The eight-buyer running example: seller `s` reaches `A` and `B`, `B`
/// relays to `C`, `D` and `E`, and `F` (behind `D`/`E`) relays to `G` and `H`.
pub fn fig1() -> Graph {
    parse_graph_str(FIG1_JSON).expect("bundled fixture is valid")
}

/// Seller with direct neighbors only; no diffusion is possible.
pub fn star(bids: &[(&str, i64)]) -> Graph {
    let nodes = bids.iter().map(|(id, v)| (id.to_string(), crate::rational::int(*v)));
    let edges = bids.iter().map(|(id, _)| ("s".to_string(), id.to_string(), crate::rational::zero()));
    Graph::new("s", nodes, edges).expect("star graphs are valid")
}
