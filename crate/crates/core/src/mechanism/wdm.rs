//! Weighted diffusion mechanism.
//!
//! Allocation walks the efficient path `L*_m` from the seller side and stops
//! at the first node that is the efficient winner once its γ cut is removed.
//! The winner pays its critical value `B*_g`; every other node on its path
//! pays `W*(t'_{-i}) - W*(t'_{-γ_i})`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AuctionOutcome, Mechanism};
use crate::critical::EdgeCut;
use crate::error::MechanismError;
use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;
use crate::paths::TradingPath;
use crate::profile::{RemovalSpec, ReportedProfile};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, Default)]
pub struct Wdm;

impl Mechanism for Wdm {
    fn name(&self) -> String {
        "wdm".into()
    }

    fn run(&self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
        wdm(graph, profile)
    }
}

/// State shared by the allocation and payment phases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdmContext {
    /// `π*(t') = L*_m`.
    pub efficient_path: TradingPath,
    /// `γ_i` for every position of `efficient_path`; the last one is empty.
    pub relay_cuts: Vec<EdgeCut>,
}

impl WdmContext {
    fn relay_cut_of(&self, node: NodeId) -> &EdgeCut {
        let pos = self.efficient_path.position(node).expect("node lies on the efficient path");
        &self.relay_cuts[pos]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdmAllocation {
    pub winner: NodeId,
    /// `L*_g(t')`, a prefix of the efficient path.
    pub path: TradingPath,
    pub context: WdmContext,
    pub tied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdmPayments {
    pub payments: BTreeMap<NodeId, Rational>,
    pub secondary: Vec<NodeId>,
    /// `w̃(i, j)` for every pair the payment rule consulted.
    pub reduced_distance: BTreeMap<(NodeId, NodeId), Rational>,
    pub critical_value: Rational,
    pub tied: bool,
}

/// `I_i`: neighbors of `node` that have some neighbor other than `node`.
pub fn intermediaries(graph: &Graph, _profile: &ReportedProfile, node: NodeId) -> NodeSet {
    graph.true_neighbors(node).iter().filter(|&j| !graph.true_neighbors(j).without(node).is_empty()).collect()
}

/// Neighbors of `node` that are reachable only through it and link nowhere
/// except back to it.
pub fn private_leaves(graph: &Graph, node: NodeId) -> NodeSet {
    graph
        .true_neighbors(node)
        .iter()
        .filter(|&j| graph.in_neighbors(j).without(node).is_empty())
        .filter(|&j| graph.true_neighbors(j).without(node).is_empty())
        .collect()
}

/// `γ_i`: edges from the node at `position` to its intermediaries, to its
/// successor on `path`, and to every other neighbor that is not a private
/// leaf. Empty for the last node.
///
/// Only the successor depends on reports; the rest is fixed by the true graph.
pub fn relay_cut(graph: &Graph, profile: &ReportedProfile, path: &TradingPath, position: usize) -> EdgeCut {
    if position + 1 >= path.nodes.len() {
        return EdgeCut::empty();
    }
    let node = path.nodes[position];
    let neighbors = graph.true_neighbors(node);
    let shared = neighbors.difference(private_leaves(graph, node));
    intermediaries(graph, profile, node)
        .union(shared)
        .union(NodeSet::single(path.nodes[position + 1]).intersection(neighbors))
        .iter()
        .map(|j| (node, j))
        .collect()
}

pub fn wdm_allocate(graph: &Graph, profile: &ReportedProfile) -> Result<WdmAllocation, MechanismError> {
    let efficient = graph.efficient_allocation(profile);
    let efficient_path = efficient.path.ok_or(MechanismError::EmptyMarket)?;
    let relay_cuts: Vec<EdgeCut> =
        (0..efficient_path.nodes.len()).map(|pos| relay_cut(graph, profile, &efficient_path, pos)).collect();
    let mut tied = efficient.tied;
    for (pos, &node) in efficient_path.nodes.iter().enumerate() {
        let restricted = graph.restrict(profile, &relay_cuts[pos].to_removal());
        let best = graph.max_welfare(&restricted);
        tied |= best.tied;
        if best.winner == Some(node) {
            let path = efficient_path.prefix(graph, pos);
            return Ok(WdmAllocation { winner: node, path, context: WdmContext { efficient_path, relay_cuts }, tied });
        }
    }
    unreachable!("the efficient winner wins when its empty cut is removed")
}

/// `w̃(i, j)`: weight of the shortest trading path to `j` once `γ_i` is removed.
pub fn reduced_distance(
    graph: &Graph,
    profile: &ReportedProfile,
    context: &WdmContext,
    i: NodeId,
    j: NodeId,
) -> Result<Rational, MechanismError> {
    let restricted = graph.restrict(profile, &context.relay_cut_of(i).to_removal());
    graph.distances(&restricted).get(j).ok_or_else(|| MechanismError::Unreachable(graph.id(j).to_string()))
}

/// Nodes of `L*_g ∖ {g}` that would win after removing their γ cut if the
/// winner withdrew its bid but kept diffusing.
pub fn secondary_nodes(graph: &Graph, profile: &ReportedProfile, allocation: &WdmAllocation) -> Vec<NodeId> {
    let g = allocation.winner;
    allocation.path.nodes[..allocation.path.nodes.len() - 1]
        .iter()
        .copied()
        .filter(|&i| is_secondary(graph, profile, &allocation.context, i, g).0)
        .collect()
}

fn is_secondary(graph: &Graph, profile: &ReportedProfile, context: &WdmContext, i: NodeId, g: NodeId) -> (bool, bool) {
    let restricted = graph.restrict(profile, &context.relay_cut_of(i).to_removal());
    let best = graph.max_welfare(&restricted.with_bid_withdrawn(g));
    (best.winner == Some(i), best.tied)
}

pub fn wdm_pay(
    graph: &Graph,
    profile: &ReportedProfile,
    allocation: &WdmAllocation,
) -> Result<WdmPayments, MechanismError> {
    let g = allocation.winner;
    let ctx = &allocation.context;
    let mut payments = BTreeMap::new();
    let mut secondary = Vec::new();
    let mut reduced = BTreeMap::new();
    let mut tied = false;
    let mut critical_value = Rational::zero();

    for &i in &allocation.path.nodes[..allocation.path.nodes.len() - 1] {
        let restricted = graph.restrict(profile, &ctx.relay_cut_of(i).to_removal());
        let with_cut = graph.max_welfare(&restricted);
        let without = graph.max_welfare(&graph.restrict(profile, &RemovalSpec::node(i)));
        tied |= with_cut.tied || without.tied;
        payments.insert(i, without.welfare - with_cut.welfare);

        let (is_sec, sec_tied) = is_secondary(graph, profile, ctx, i, g);
        tied |= sec_tied;
        if is_sec {
            secondary.push(i);
            let dist = graph.distances(&restricted);
            let own = dist.get(i).expect("secondary nodes are informed");
            let to_winner = dist.get(g).ok_or_else(|| MechanismError::Unreachable(graph.id(g).to_string()))?;
            reduced.insert((i, i), own);
            reduced.insert((i, g), to_winner);
            let bid = profile.bid(i).expect("secondary nodes bid");
            critical_value = critical_value.max(bid - own + to_winner);
        }
    }

    let without_winner = graph.max_welfare(&graph.restrict(profile, &RemovalSpec::node(g)));
    tied |= without_winner.tied;
    let own = reduced_distance(graph, profile, ctx, g, g)?;
    reduced.insert((g, g), own);
    critical_value = critical_value.max(without_winner.welfare + own);
    payments.insert(g, critical_value);

    Ok(WdmPayments { payments, secondary, reduced_distance: reduced, critical_value, tied })
}

pub fn wdm(graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
    let allocation = wdm_allocate(graph, profile)?;
    let paid = wdm_pay(graph, profile, &allocation)?;
    Ok(AuctionOutcome::assemble(
        "wdm",
        profile,
        allocation.winner,
        allocation.path,
        paid.payments,
        allocation.tied || paid.tied,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, star};
    use crate::rational::int;

    #[test]
    fn star_coincides_with_second_price() {
        let g = star(&[("A", 7), ("B", 4)]);
        let out = wdm(&g, &g.truthful_profile()).unwrap();
        assert_eq!(out.winner, g.node("A"));
        assert_eq!(out.revenue, int(4));
    }

    #[test]
    fn lone_bidder_wins_at_once() {
        let g = star(&[("A", 2)]);
        let t = g.truthful_profile();
        let alloc = wdm_allocate(&g, &t).unwrap();
        assert_eq!(alloc.winner, g.node("A").unwrap());
        assert_eq!(alloc.context.relay_cuts, vec![EdgeCut::empty()]);
        assert!(secondary_nodes(&g, &t, &alloc).is_empty());
    }

    #[test]
    fn leaves_are_not_intermediaries() {
        let g = fig1();
        let f = g.node("F").unwrap();
        assert_eq!(g.ids_of(intermediaries(&g, &g.truthful_profile(), f)), ["H"]);
        let s = star(&[("A", 1)]);
        assert!(intermediaries(&s, &s.truthful_profile(), s.node("A").unwrap()).is_empty());
    }

    #[test]
    fn without_secondaries_the_winner_pays_the_fallback() {
        let g = star(&[("A", 7), ("B", 4)]);
        let t = g.truthful_profile();
        let alloc = wdm_allocate(&g, &t).unwrap();
        let paid = wdm_pay(&g, &t, &alloc).unwrap();
        assert!(paid.secondary.is_empty());
        assert_eq!(paid.critical_value, int(4));
        assert_eq!(paid.reduced_distance[&(alloc.winner, alloc.winner)], int(0));
    }

    #[test]
    fn nil_market_is_empty() {
        let g = star(&[("A", 1)]);
        assert_eq!(wdm(&g, &ReportedProfile::nil(&g)).unwrap_err(), MechanismError::EmptyMarket);
    }
}
