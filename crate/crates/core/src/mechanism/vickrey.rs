use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AuctionOutcome, Mechanism};
use crate::error::MechanismError;
use crate::graph::Graph;
use crate::paths::TradingPath;
use crate::profile::ReportedProfile;
use crate::rational::Rational;

/// Second-price auction among the seller's direct neighbors.
#[derive(Clone, Copy, Debug, Default)]
pub struct Vickrey;

impl Mechanism for Vickrey {
    fn name(&self) -> String {
        "vickrey".into()
    }

    fn run(&self, graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
        vickrey(graph, profile)
    }
}

pub fn vickrey(graph: &Graph, profile: &ReportedProfile) -> Result<AuctionOutcome, MechanismError> {
    let mut bids: Vec<_> =
        graph.true_neighbors(graph.seller()).iter().filter_map(|n| profile.bid(n).map(|b| (n, b))).collect();
    // highest bid first, smallest identifier among equal bids
    bids.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let (&(winner, _), rest) = bids.split_first().ok_or(MechanismError::EmptyMarket)?;
    let price = rest.first().map_or_else(Rational::zero, |&(_, b)| b);
    let tied = rest.first().is_some_and(|&(_, b)| b == bids[0].1);
    let path = TradingPath { nodes: vec![winner], weight: Rational::zero() };
    Ok(AuctionOutcome::assemble("vickrey", profile, winner, path, BTreeMap::from([(winner, price)]), tied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, star};
    use crate::rational::int;

    #[test]
    fn fig1_revenue_is_one() {
        let g = fig1();
        assert_eq!(vickrey(&g, &g.truthful_profile()).unwrap().revenue, int(1));
    }

    #[test]
    fn lone_bidder_pays_nothing() {
        let g = star(&[("A", 5)]);
        let out = vickrey(&g, &g.truthful_profile()).unwrap();
        assert_eq!(out.winner, g.node("A"));
        assert_eq!(out.revenue, int(0));
    }

    #[test]
    fn equal_bids_go_to_the_smaller_id() {
        let g = star(&[("B", 3), ("A", 3)]);
        let out = vickrey(&g, &g.truthful_profile()).unwrap();
        assert_eq!(out.winner, g.node("A"));
        assert_eq!(out.payment(g.node("A").unwrap()), int(3));
        assert!(out.tied);
    }

    #[test]
    fn no_bidders_is_an_empty_market() {
        let g = star(&[]);
        assert_eq!(vickrey(&g, &g.truthful_profile()), Err(MechanismError::EmptyMarket));
    }
}
