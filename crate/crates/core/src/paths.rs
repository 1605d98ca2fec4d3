//! Shortest trading paths and the efficient allocation `W*`.

use num_traits::Zero;

use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;
use crate::profile::ReportedProfile;
use crate::rational::Rational;

/// A trading path `(a_1, ..., a_{l+1})` from a seller neighbor to its last
/// node. The seller is not part of the sequence, so seller out-edges never
/// count towards `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradingPath {
    pub nodes: Vec<NodeId>,
    pub weight: Rational,
}

impl TradingPath {
    pub fn target(&self) -> NodeId {
        *self.nodes.last().expect("trading paths are never empty")
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.contains(&node)
    }

    pub fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    pub fn node_set(&self) -> NodeSet {
        self.nodes.iter().copied().collect()
    }

    /// The sub-path ending at position `end` (inclusive).
    pub fn prefix(&self, graph: &Graph, end: usize) -> TradingPath {
        let nodes = self.nodes[..=end].to_vec();
        let weight = path_weight(graph, &nodes);
        TradingPath { nodes, weight }
    }
}

pub(crate) fn path_weight(graph: &Graph, nodes: &[NodeId]) -> Rational {
    nodes
        .windows(2)
        .map(|w| graph.weight(w[0], w[1]).expect("path follows graph edges"))
        .fold(Rational::zero(), |acc, w| acc + w)
}

/// Shortest-path distances over the informed subgraph.
#[derive(Clone, Debug)]
pub struct Distances {
    informed: NodeSet,
    dist: Vec<Option<Rational>>,
}

impl Distances {
    pub fn get(&self, node: NodeId) -> Option<Rational> {
        self.dist[node.index()]
    }

    pub fn informed(&self) -> NodeSet {
        self.informed
    }
}

/// Outcome of the efficient allocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WelfareResult {
    pub winner: Option<NodeId>,
    pub welfare: Rational,
    pub path: Option<TradingPath>,
    /// Another bidder attains the same maximal score as the winner.
    pub tied: bool,
}

/// `W*` without the winner's path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Welfare {
    pub winner: Option<NodeId>,
    pub welfare: Rational,
    pub tied: bool,
}

impl Graph {
    /// Bellman-Ford over the reported diffusion links among informed nodes,
    /// with every seller neighbor at distance zero.
    pub fn distances(&self, profile: &ReportedProfile) -> Distances {
        let informed = self.informed_set(profile);
        let mut dist: Vec<Option<Rational>> = vec![None; self.slot_count()];
        let starts = self.true_neighbors(self.seller()).intersection(informed);
        for a in starts {
            dist[a.index()] = Some(Rational::zero());
        }
        if self.is_unweighted() {
            for v in informed {
                dist[v.index()] = Some(Rational::zero());
            }
            return Distances { informed, dist };
        }
        for _ in 0..informed.len() {
            let mut changed = false;
            for u in informed {
                let Some(du) = dist[u.index()] else { continue };
                for v in profile.diffusion(u).intersection(informed) {
                    let w = self.weight(u, v).expect("diffusion follows graph edges");
                    let candidate = du + w;
                    if dist[v.index()].map_or(true, |dv| candidate < dv) {
                        dist[v.index()] = Some(candidate);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Distances { informed, dist }
    }

    /// `L*_i(t')`: the minimum-weight trading path to `target`, ties broken by
    /// the lexicographically smallest node sequence.
    pub fn shortest_trading_path(&self, profile: &ReportedProfile, target: NodeId) -> Option<TradingPath> {
        let dist = self.distances(profile);
        self.path_from_distances(profile, &dist, target)
    }

    /// Reconstructs the lexicographically smallest shortest path. Only
    /// "tight" links (`d(u) + w(u,v) = d(v)`) can appear on a shortest path;
    /// the walk greedily takes the smallest next node from which the target
    /// is still reachable over tight links without revisiting a node.
    pub(crate) fn path_from_distances(
        &self,
        profile: &ReportedProfile,
        dist: &Distances,
        target: NodeId,
    ) -> Option<TradingPath> {
        let informed = dist.informed();
        if !informed.contains(target) {
            return None;
        }
        let tight = |u: NodeId| -> NodeSet {
            let du = dist.get(u).expect("informed nodes have a distance");
            profile
                .diffusion(u)
                .intersection(informed)
                .iter()
                .filter(|&v| {
                    let w = self.weight(u, v).expect("diffusion follows graph edges");
                    Some(du + w) == dist.get(v)
                })
                .collect()
        };
        let reaches = |from: NodeId, visited: NodeSet| -> bool {
            let mut seen = NodeSet::single(from);
            let mut frontier = seen;
            while let Some(u) = frontier.first() {
                if u == target {
                    return true;
                }
                frontier.remove(u);
                let fresh = tight(u).difference(visited).difference(seen);
                seen = seen.union(fresh);
                frontier = frontier.union(fresh);
            }
            false
        };

        let mut candidates: NodeSet = self
            .true_neighbors(self.seller())
            .intersection(informed)
            .iter()
            .filter(|&a| dist.get(a) == Some(Rational::zero()))
            .collect();
        let mut visited = NodeSet::empty();
        let mut nodes = Vec::new();
        loop {
            let next = candidates.difference(visited).iter().find(|&x| reaches(x, visited))?;
            nodes.push(next);
            visited.insert(next);
            if next == target {
                break;
            }
            candidates = tight(next);
        }
        let weight = dist.get(target).expect("target is informed");
        Some(TradingPath { nodes, weight })
    }

    /// `W*(t')` and its winner: the informed bidder maximizing
    /// `bid - d(i)`, smallest identifier on ties. Not selling is worth 0, so
    /// a market without a bidder of nonnegative score has no winner and
    /// welfare 0.
    pub fn max_welfare(&self, profile: &ReportedProfile) -> Welfare {
        let dist = self.distances(profile);
        best_bidder(profile, &dist)
    }

    pub fn efficient_allocation(&self, profile: &ReportedProfile) -> WelfareResult {
        let dist = self.distances(profile);
        let best = best_bidder(profile, &dist);
        let path = best.winner.and_then(|w| self.path_from_distances(profile, &dist, w));
        WelfareResult { winner: best.winner, welfare: best.welfare, path, tied: best.tied }
    }
}

fn best_bidder(profile: &ReportedProfile, dist: &Distances) -> Welfare {
    let mut best: Option<(NodeId, Rational)> = None;
    let mut tied = false;
    for node in dist.informed() {
        let (Some(bid), Some(d)) = (profile.bid(node), dist.get(node)) else { continue };
        let score = bid - d;
        if score < Rational::zero() {
            continue;
        }
        match best {
            Some((_, top)) if score < top => {}
            Some((_, top)) if score == top => tied = true,
            _ => {
                best = Some((node, score));
                tied = false;
            }
        }
    }
    match best {
        Some((winner, welfare)) => Welfare { winner: Some(winner), welfare, tied },
        None => Welfare { winner: None, welfare: Rational::zero(), tied: false },
    }
}
