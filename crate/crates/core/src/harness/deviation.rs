//! Unilateral misreports.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::HarnessError;
use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;
use crate::profile::Report;
use crate::rational::{format_rational, int, Rational};

pub const DEFAULT_DEGREE_CAP: usize = 10;
pub const DEGREE_CAP_ENV: &str = "AUCTION_DEGREE_CAP";

/// The deviation-space degree cap, overridable through `AUCTION_DEGREE_CAP`.
pub fn degree_cap() -> usize {
    std::env::var(DEGREE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_DEGREE_CAP)
}

/// A report `node` could submit instead of its true type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub node: NodeId,
    /// `None` relays the sale without bidding.
    pub bid: Option<Rational>,
    pub diffusion: NodeSet,
}

impl Deviation {
    /// No bid and no diffusion is the nil report.
    pub fn to_report(self) -> Option<Report> {
        if self.bid.is_none() && self.diffusion.is_empty() {
            None
        } else {
            Some(Report { bid: self.bid, diffusion: self.diffusion })
        }
    }

    pub fn is_truthful(self, graph: &Graph) -> bool {
        self.bid == Some(graph.value(self.node)) && self.diffusion == graph.true_neighbors(self.node)
    }

    pub fn describe(self, graph: &Graph) -> String {
        DeviationDisplay { graph, deviation: self }.to_string()
    }
}

struct DeviationDisplay<'a> {
    graph: &'a Graph,
    deviation: Deviation,
}

impl fmt::Display for DeviationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.deviation;
        let bid = d.bid.map_or_else(|| "nil".to_string(), |b| format_rational(&b));
        let to = self.graph.ids_of(d.diffusion).join(",");
        write!(f, "{} bids {} and diffuses to {{{}}}", self.graph.id(d.node), bid, to)
    }
}

/// Every instance value, each value plus and minus one, zero, and one above
/// the maximum. Negative candidates are dropped.
pub fn default_bid_grid(graph: &Graph) -> Vec<Rational> {
    let mut grid = BTreeSet::new();
    grid.insert(int(0));
    for node in graph.nodes() {
        let v = graph.value(node);
        grid.extend([v - int(1), v, v + int(1)]);
    }
    if let Some(max) = graph.max_value() {
        grid.insert(max + int(1));
    }
    grid.into_iter().filter(|b| *b >= int(0)).collect()
}

/// `(grid ∪ {nil}) × 2^{true neighbors}` for `node`.
pub fn deviation_space(
    graph: &Graph,
    node: NodeId,
    grid: &[Rational],
    cap: usize,
) -> Result<Vec<Deviation>, HarnessError> {
    let neighbors = graph.true_neighbors(node);
    if neighbors.len() > cap {
        return Err(HarnessError::DegreeTooLarge { node: graph.id(node).to_string(), degree: neighbors.len(), cap });
    }
    let bids = grid.iter().copied().map(Some).chain(std::iter::once(None));
    Ok(bids.flat_map(|bid| neighbors.subsets().map(move |diffusion| Deviation { node, bid, diffusion })).collect())
}
