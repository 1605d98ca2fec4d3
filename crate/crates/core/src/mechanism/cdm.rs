use std::collections::BTreeMap;

use super::{AuctionOutcome, Mechanism};
use crate::critical::{critical_sequence, cut_at, highest_bidder, CutStrategy};
use crate::error::MechanismError;
use crate::graph::Graph;
use crate::profile::{RemovalSpec, ReportedProfile};

/// Critical diffusion mechanism parameterized by its cut strategy.
#[derive(Clone, Debug, Default)]
pub struct Cdm<S> {
    pub strategy: S,
}

impl<S: CutStrategy> Cdm<S> {
    pub fn new(strategy: S) -> Self {
        Cdm { strategy }
    }
}

impl<S: CutStrategy> Mechanism for Cdm<S> {
    fn name(&self) -> String {
        format!("cdm-{}", self.strategy.name())
    }

    fn run(&self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
        cdm(graph, profile, &self.strategy)
    }
}

/// Walks the highest bidder's critical sequence; the first node that is the
/// efficient winner once its cut is removed takes the item and pays
/// `W*(t'_{-i})`. Each node passed over receives `W*(t'_{-i}) - W*(t'_{-α_i})`.
pub fn cdm(
    graph: &Graph,
    profile: &ReportedProfile,
    strategy: &dyn CutStrategy,
) -> Result<AuctionOutcome, MechanismError> {
    if !graph.is_unweighted() {
        return Err(MechanismError::WeightedGraph);
    }
    let name = format!("cdm-{}", strategy.name());
    let m = highest_bidder(graph, profile).ok_or(MechanismError::EmptyMarket)?;
    let seq = critical_sequence(graph, profile, m)?;

    let mut payments = BTreeMap::new();
    let mut tied = graph.max_welfare(profile).tied;
    for (position, &node) in seq.nodes.iter().enumerate() {
        let cut = cut_at(strategy, graph, profile, &seq, position)?;
        let blocked = graph.max_welfare(&graph.restrict(profile, &cut.to_removal()));
        let without = graph.max_welfare(&graph.restrict(profile, &RemovalSpec::node(node)));
        tied |= blocked.tied || without.tied;
        if blocked.winner == Some(node) {
            payments.insert(node, without.welfare);
            let path = graph.shortest_trading_path(profile, node).expect("critical nodes are informed");
            return Ok(AuctionOutcome::assemble(name, profile, node, path, payments, tied));
        }
        payments.insert(node, without.welfare - blocked.welfare);
    }
    unreachable!("the highest bidder wins at the end of its own critical sequence")
}
