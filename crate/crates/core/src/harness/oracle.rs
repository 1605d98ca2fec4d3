//! Exhaustive path enumeration, used as an independent reference for the
//! shortest-path and efficient-allocation code.

use num_traits::Zero;

use crate::error::HarnessError;
use crate::graph::{Graph, NodeId};
use crate::paths::{TradingPath, WelfareResult};
use crate::profile::ReportedProfile;
use crate::rational::Rational;

pub const BRUTE_FORCE_CAP: usize = 10;

/// Every simple trading path under `profile`, in depth-first order.
pub fn enumerate_trading_paths(graph: &Graph, profile: &ReportedProfile) -> Result<Vec<TradingPath>, HarnessError> {
    let reached = reachable(graph, profile);
    if reached.len() > BRUTE_FORCE_CAP {
        return Err(HarnessError::TooLarge { informed: reached.len(), cap: BRUTE_FORCE_CAP });
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in graph.true_neighbors(graph.seller()) {
        if profile.report(start).is_some() {
            walk(graph, profile, start, Rational::zero(), &mut stack, &mut out);
        }
    }
    Ok(out)
}

fn walk(
    graph: &Graph,
    profile: &ReportedProfile,
    node: NodeId,
    weight: Rational,
    stack: &mut Vec<NodeId>,
    out: &mut Vec<TradingPath>,
) {
    stack.push(node);
    out.push(TradingPath { nodes: stack.clone(), weight });
    let Some(report) = profile.report(node) else { unreachable!("walk only enters non-nil nodes") };
    for next in report.diffusion {
        if stack.contains(&next) || profile.report(next).is_none() {
            continue;
        }
        let w = graph.weight(node, next).expect("reports follow graph edges");
        walk(graph, profile, next, weight + w, stack, out);
    }
    stack.pop();
}

fn reachable(graph: &Graph, profile: &ReportedProfile) -> Vec<NodeId> {
    let mut seen: Vec<NodeId> = Vec::new();
    let mut todo: Vec<NodeId> =
        graph.true_neighbors(graph.seller()).iter().filter(|&a| profile.report(a).is_some()).collect();
    while let Some(u) = todo.pop() {
        if seen.contains(&u) {
            continue;
        }
        seen.push(u);
        for v in profile.diffusion(u) {
            if profile.report(v).is_some() && !seen.contains(&v) {
                todo.push(v);
            }
        }
    }
    seen
}

fn better(candidate: &TradingPath, current: &TradingPath) -> bool {
    (candidate.weight, &candidate.nodes) < (current.weight, &current.nodes)
}

/// Minimum-weight simple trading path to `target`, lexicographically smallest
/// among equals.
pub fn brute_force_shortest_path(
    graph: &Graph,
    profile: &ReportedProfile,
    target: NodeId,
) -> Result<Option<TradingPath>, HarnessError> {
    let mut best: Option<TradingPath> = None;
    for path in enumerate_trading_paths(graph, profile)? {
        if path.target() == target && best.as_ref().map_or(true, |b| better(&path, b)) {
            best = Some(path);
        }
    }
    Ok(best)
}

/// Efficient allocation by enumeration: the bidder and path maximizing
/// `bid - weight`, smallest bidder identifier on ties. Negative scores lose
/// to not selling.
pub fn brute_force_welfare(graph: &Graph, profile: &ReportedProfile) -> Result<WelfareResult, HarnessError> {
    let paths = enumerate_trading_paths(graph, profile)?;
    let mut shortest: Vec<Option<TradingPath>> = vec![None; graph.slot_count()];
    for path in paths {
        let slot = &mut shortest[path.target().index()];
        if slot.as_ref().map_or(true, |b| better(&path, b)) {
            *slot = Some(path);
        }
    }
    let mut best: Option<(Rational, TradingPath)> = None;
    let mut tied = false;
    for path in shortest.into_iter().flatten() {
        let Some(bid) = profile.bid(path.target()) else { continue };
        let score = bid - path.weight;
        if score < Rational::zero() {
            continue;
        }
        match &best {
            Some((top, _)) if score < *top => {}
            Some((top, _)) if score == *top => tied = true,
            _ => {
                tied = false;
                best = Some((score, path));
            }
        }
    }
    Ok(match best {
        Some((welfare, path)) => WelfareResult { winner: Some(path.target()), welfare, path: Some(path), tied },
        None => WelfareResult { winner: None, welfare: Rational::zero(), path: None, tied: false },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, star};
    use crate::rational::int;

    #[test]
    fn fig1_has_four_simple_paths_to_g() {
        let g = fig1();
        let t = g.truthful_profile();
        let target = g.node("G").unwrap();
        let paths = enumerate_trading_paths(&g, &t).unwrap();
        assert_eq!(paths.iter().filter(|p| p.target() == target).count(), 4);
    }

    #[test]
    fn fig1_efficient_path() {
        let g = fig1();
        let t = g.truthful_profile();
        let best = brute_force_welfare(&g, &t).unwrap();
        assert_eq!(best.winner, g.node("F"));
        assert_eq!(g.ids_of(best.path.unwrap().nodes), ["B", "E", "F"]);
        assert_eq!(best.welfare, int(10));
    }

    #[test]
    fn single_node_wins_with_its_bid() {
        let g = star(&[("A", 4)]);
        let best = brute_force_welfare(&g, &g.truthful_profile()).unwrap();
        assert_eq!(best.winner, g.node("A"));
        assert_eq!(best.welfare, int(4));
    }

    #[test]
    fn refuses_large_markets() {
        let bids: Vec<(String, i64)> = (0..11).map(|i| (format!("N{i:02}"), i)).collect();
        let refs: Vec<(&str, i64)> = bids.iter().map(|(s, v)| (s.as_str(), *v)).collect();
        let g = star(&refs);
        let err = brute_force_welfare(&g, &g.truthful_profile()).unwrap_err();
        assert_eq!(err, HarnessError::TooLarge { informed: 11, cap: BRUTE_FORCE_CAP });
    }
}
