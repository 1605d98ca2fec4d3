//! Reported types, removal operators and information reachability.

use num_traits::Zero;

use crate::error::ProfileError;
use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;
use crate::rational::Rational;

/// A node's reported type `(v'_i, r'_i)`.
///
/// `bid == None` means the node relays the sale without bidding, so it can
/// never be allocated the item.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Report {
    pub bid: Option<Rational>,
    pub diffusion: NodeSet,
}

/// Per-node reports; `None` is the nil type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportedProfile {
    reports: Vec<Option<Report>>,
}

impl ReportedProfile {
    /// Every node nil.
    pub fn nil(graph: &Graph) -> Self {
        ReportedProfile { reports: vec![None; graph.slot_count()] }
    }

    pub fn report(&self, node: NodeId) -> Option<&Report> {
        self.reports[node.index()].as_ref()
    }

    pub fn bid(&self, node: NodeId) -> Option<Rational> {
        self.report(node).and_then(|r| r.bid)
    }

    pub fn diffusion(&self, node: NodeId) -> NodeSet {
        self.report(node).map_or(NodeSet::empty(), |r| r.diffusion)
    }

    pub fn set(&mut self, node: NodeId, report: Option<Report>) {
        self.reports[node.index()] = report;
    }

    pub fn with_report(&self, node: NodeId, report: Option<Report>) -> Self {
        let mut out = self.clone();
        out.set(node, report);
        out
    }

    /// The same profile with `node`'s bid replaced by nil, keeping its diffusion.
    pub fn with_bid_withdrawn(&self, node: NodeId) -> Self {
        let mut out = self.clone();
        if let Some(r) = out.reports[node.index()].as_mut() {
            r.bid = None;
        }
        out
    }

    /// Nodes whose report is not nil.
    pub fn non_nil(&self) -> NodeSet {
        self.reports.iter().enumerate().filter(|(_, r)| r.is_some()).map(|(i, _)| NodeId::new(i)).collect()
    }

    pub fn slots(&self) -> usize {
        self.reports.len()
    }

    /// Checks that no node reports a link it does not have.
    pub fn validate(&self, graph: &Graph) -> Result<(), ProfileError> {
        if self.reports.len() != graph.slot_count() {
            return Err(ProfileError::SizeMismatch { expected: graph.slot_count(), found: self.reports.len() });
        }
        for node in graph.nodes() {
            let Some(report) = self.report(node) else { continue };
            if report.bid.is_some_and(|b| b < Rational::zero()) {
                return Err(ProfileError::NegativeBid(graph.id(node).to_string()));
            }
            let invented = report.diffusion.difference(graph.true_neighbors(node));
            if let Some(target) = invented.first() {
                return Err(ProfileError::InventedLink {
                    node: graph.id(node).to_string(),
                    target: graph.id(target).to_string(),
                });
            }
        }
        if self.report(graph.seller()).is_some() {
            return Err(ProfileError::InventedLink {
                node: graph.id(graph.seller()).to_string(),
                target: graph.id(graph.seller()).to_string(),
            });
        }
        Ok(())
    }
}

/// A set of nodes and directed edges to take out of a profile (`t'_{-x}`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RemovalSpec {
    pub nodes: NodeSet,
    pub edges: Vec<(NodeId, NodeId)>,
}

impl RemovalSpec {
    pub fn none() -> Self {
        RemovalSpec::default()
    }

    pub fn node(node: NodeId) -> Self {
        RemovalSpec { nodes: NodeSet::single(node), edges: Vec::new() }
    }

    pub fn edges(edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        RemovalSpec { nodes: NodeSet::empty(), edges: edges.into_iter().collect() }
    }
}

impl Graph {
    /// Nodes reachable from the seller's neighbors along reported diffusion
    /// links, through non-nil nodes only.
    pub fn informed_set(&self, profile: &ReportedProfile) -> NodeSet {
        self.reach_avoiding(profile, NodeSet::empty())
    }

    /// [`informed_set`](Self::informed_set) with `blocked` treated as nil.
    pub(crate) fn reach_avoiding(&self, profile: &ReportedProfile, blocked: NodeSet) -> NodeSet {
        let allowed = profile.non_nil().difference(blocked);
        let mut seen = self.true_neighbors(self.seller()).intersection(allowed);
        let mut frontier = seen;
        while let Some(u) = frontier.first() {
            frontier.remove(u);
            let fresh = profile.diffusion(u).intersection(allowed).difference(seen);
            seen = seen.union(fresh);
            frontier = frontier.union(fresh);
        }
        seen
    }

    /// Applies `removal` to `profile`, then silences every node that is no
    /// longer reachable.
    pub fn restrict(&self, profile: &ReportedProfile, removal: &RemovalSpec) -> ReportedProfile {
        let mut out = profile.clone();
        for &(from, to) in &removal.edges {
            if let Some(r) = out.reports[from.index()].as_mut() {
                r.diffusion.remove(to);
            }
        }
        for node in removal.nodes {
            out.reports[node.index()] = None;
        }
        let informed = self.informed_set(&out);
        for (i, slot) in out.reports.iter_mut().enumerate() {
            if !informed.contains(NodeId::new(i)) {
                *slot = None;
            }
        }
        out
    }

    /// Profile restricted to its informed set (`restrict` with nothing removed).
    pub fn normalize(&self, profile: &ReportedProfile) -> ReportedProfile {
        self.restrict(profile, &RemovalSpec::none())
    }

    /// Whether `target` receives the sale information starting from `start`,
    /// never passing through `avoid`. The target counts as reached as soon as
    /// some traversed node diffuses to it, whatever its own report.
    pub(crate) fn reaches_from(
        &self,
        profile: &ReportedProfile,
        start: NodeId,
        target: NodeId,
        avoid: NodeSet,
    ) -> bool {
        if start == target {
            return true;
        }
        let expandable = profile.non_nil().difference(avoid).without(self.seller());
        if !expandable.contains(start) {
            return false;
        }
        let mut seen = NodeSet::single(start);
        let mut frontier = seen;
        while let Some(u) = frontier.first() {
            frontier.remove(u);
            let next = profile.diffusion(u).difference(avoid);
            if next.contains(target) {
                return true;
            }
            let fresh = next.intersection(expandable).difference(seen);
            seen = seen.union(fresh);
            frontier = frontier.union(fresh);
        }
        false
    }
}
