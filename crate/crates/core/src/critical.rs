//! Critical diffusion sequences, dependent sets and edge-cut strategies.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CriticalError;
use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;
use crate::profile::{RemovalSpec, Report, ReportedProfile};
use crate::rational::{int, Rational};

/// Nodes lying on every trading path to `target`, in path order, ending with
/// `target` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSequence {
    pub target: NodeId,
    pub nodes: Vec<NodeId>,
}

impl CriticalSequence {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    pub fn is_last(&self, position: usize) -> bool {
        position + 1 == self.nodes.len()
    }
}

/// A set of directed edges removed from a profile.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeCut {
    edges: BTreeSet<(NodeId, NodeId)>,
}

impl EdgeCut {
    pub fn empty() -> Self {
        EdgeCut::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, from: NodeId, to: NodeId) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn to_removal(&self) -> RemovalSpec {
        RemovalSpec::edges(self.iter())
    }

    /// Readable `(from, to)` pairs.
    pub fn named(&self, graph: &Graph) -> Vec<(String, String)> {
        self.iter().map(|(a, b)| (graph.id(a).to_string(), graph.id(b).to_string())).collect()
    }
}

impl FromIterator<(NodeId, NodeId)> for EdgeCut {
    fn from_iter<I: IntoIterator<Item = (NodeId, NodeId)>>(iter: I) -> Self {
        EdgeCut { edges: iter.into_iter().collect() }
    }
}

/// Computes the cut `α_i` for position `i` of the highest bidder's critical
/// sequence. Implementations should satisfy information blocking, node
/// independence and diffusion monotonicity; [`validate_cut_strategy`] checks
/// them empirically.
pub trait CutStrategy: Send + Sync {
    fn name(&self) -> &str;

    /// Called only for non-terminal positions.
    fn cut(
        &self,
        graph: &Graph,
        profile: &ReportedProfile,
        seq: &CriticalSequence,
        position: usize,
    ) -> Result<EdgeCut, CriticalError>;
}

/// Every in-edge of the next critical node.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdmCut;

/// The minimum set of the current node's out-edges that blocks the next
/// critical node.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinimalCut;

impl CutStrategy for IdmCut {
    fn name(&self) -> &str {
        "idm"
    }

    fn cut(
        &self,
        graph: &Graph,
        profile: &ReportedProfile,
        seq: &CriticalSequence,
        position: usize,
    ) -> Result<EdgeCut, CriticalError> {
        in_edge_cut(graph, profile, seq, position)
    }
}

impl CutStrategy for MinimalCut {
    fn name(&self) -> &str {
        "beta"
    }

    fn cut(
        &self,
        graph: &Graph,
        profile: &ReportedProfile,
        seq: &CriticalSequence,
        position: usize,
    ) -> Result<EdgeCut, CriticalError> {
        minimal_out_cut(graph, profile, seq, position)
    }
}

pub fn strategy_by_name(name: &str) -> Option<Box<dyn CutStrategy>> {
    match name {
        "idm" => Some(Box::new(IdmCut)),
        "beta" => Some(Box::new(MinimalCut)),
        _ => None,
    }
}

/// `C*_target(t')`, found by probing the removal of each informed node.
pub fn critical_sequence(
    graph: &Graph,
    profile: &ReportedProfile,
    target: NodeId,
) -> Result<CriticalSequence, CriticalError> {
    let informed = graph.informed_set(profile);
    if !informed.contains(target) {
        return Err(CriticalError::TargetUninformed(graph.id(target).to_string()));
    }
    let critical: NodeSet =
        informed.iter().filter(|&c| !graph.reach_avoiding(profile, NodeSet::single(c)).contains(target)).collect();
    // every trading path visits all critical nodes, in the same order
    let route = any_path(graph, profile, informed, target);
    let nodes = route.into_iter().filter(|&n| critical.contains(n)).collect();
    Ok(CriticalSequence { target, nodes })
}

fn any_path(graph: &Graph, profile: &ReportedProfile, informed: NodeSet, target: NodeId) -> Vec<NodeId> {
    let mut parent: Vec<Option<NodeId>> = vec![None; graph.slot_count()];
    let starts = graph.true_neighbors(graph.seller()).intersection(informed);
    let mut seen = starts;
    let mut queue: std::collections::VecDeque<NodeId> = starts.iter().collect();
    while let Some(u) = queue.pop_front() {
        if u == target {
            break;
        }
        for v in profile.diffusion(u).intersection(informed).difference(seen) {
            seen.insert(v);
            parent[v.index()] = Some(u);
            queue.push_back(v);
        }
    }
    let mut route = vec![target];
    let mut cur = target;
    while let Some(p) = parent[cur.index()] {
        route.push(p);
        cur = p;
    }
    route.reverse();
    route
}

/// `d_i`: informed nodes that lose the sale information when `node` is
/// removed, `node` included.
pub fn dependents(graph: &Graph, profile: &ReportedProfile, node: NodeId) -> NodeSet {
    let informed = graph.informed_set(profile);
    if !informed.contains(node) {
        return NodeSet::empty();
    }
    informed.difference(graph.reach_avoiding(profile, NodeSet::single(node)))
}

fn next_critical(seq: &CriticalSequence, position: usize) -> Result<NodeId, CriticalError> {
    if position >= seq.len() {
        return Err(CriticalError::PositionOutOfRange { position, len: seq.len() });
    }
    if seq.is_last(position) {
        return Err(CriticalError::LastPosition(position));
    }
    Ok(seq.nodes[position + 1])
}

pub fn in_edge_cut(
    graph: &Graph,
    _profile: &ReportedProfile,
    seq: &CriticalSequence,
    position: usize,
) -> Result<EdgeCut, CriticalError> {
    let next = next_critical(seq, position)?;
    Ok(graph.in_neighbors(next).iter().map(|j| (j, next)).collect())
}

/// Keeps `(i, j)` exactly when the next critical node cannot be reached from
/// `j` without passing through `i`; every other reported out-edge of `i` is cut.
pub fn minimal_out_cut(
    graph: &Graph,
    profile: &ReportedProfile,
    seq: &CriticalSequence,
    position: usize,
) -> Result<EdgeCut, CriticalError> {
    let next = next_critical(seq, position)?;
    let node = seq.nodes[position];
    let avoid = NodeSet::single(node).with(graph.seller());
    Ok(profile
        .diffusion(node)
        .without(graph.seller())
        .iter()
        .filter(|&j| graph.reaches_from(profile, j, next, avoid))
        .map(|j| (node, j))
        .collect())
}

/// `α_position`, with the convention `α_m = ∅` for the last position.
pub fn cut_at(
    strategy: &dyn CutStrategy,
    graph: &Graph,
    profile: &ReportedProfile,
    seq: &CriticalSequence,
    position: usize,
) -> Result<EdgeCut, CriticalError> {
    if seq.is_last(position) {
        Ok(EdgeCut::empty())
    } else {
        strategy.cut(graph, profile, seq, position)
    }
}

/// Highest bid among informed nodes; smallest identifier on ties.
pub fn highest_bidder(graph: &Graph, profile: &ReportedProfile) -> Option<NodeId> {
    let mut best: Option<(NodeId, Rational)> = None;
    for node in graph.informed_set(profile) {
        let Some(bid) = profile.bid(node) else { continue };
        if best.map_or(true, |(_, b)| bid > b) {
            best = Some((node, bid));
        }
    }
    best.map(|(n, _)| n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutProperty {
    InformationBlocking,
    NodeIndependence,
    DiffusionMonotonicity,
}

impl CutProperty {
    pub fn label(self) -> &'static str {
        match self {
            CutProperty::InformationBlocking => "information blocking",
            CutProperty::NodeIndependence => "node independence",
            CutProperty::DiffusionMonotonicity => "diffusion monotonicity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCounterexample {
    pub instance: usize,
    pub position: usize,
    pub property: CutProperty,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutValidation {
    pub strategy: String,
    pub instances_checked: usize,
    pub positions_checked: usize,
    pub counterexample: Option<CutCounterexample>,
}

impl CutValidation {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Subsets of a dependent set up to this size are perturbed exhaustively.
const EXHAUSTIVE_DEPENDENTS: usize = 4;
const RANDOM_PERTURBATIONS: usize = 64;
/// Beyond this degree the monotonicity check samples nested subset pairs.
const MONOTONICITY_DEGREE: usize = 8;

/// Checks the three cut properties at every non-terminal position of each
/// instance's highest-bidder critical sequence. Stops at the first
/// counterexample.
pub fn validate_cut_strategy(strategy: &dyn CutStrategy, corpus: &[(Graph, ReportedProfile)]) -> CutValidation {
    let mut report = CutValidation {
        strategy: strategy.name().to_string(),
        instances_checked: 0,
        positions_checked: 0,
        counterexample: None,
    };
    for (idx, (graph, profile)) in corpus.iter().enumerate() {
        report.instances_checked += 1;
        let Some(m) = highest_bidder(graph, profile) else { continue };
        let seq = critical_sequence(graph, profile, m).expect("highest bidder is informed");
        for position in 0..seq.len().saturating_sub(1) {
            report.positions_checked += 1;
            if let Err((property, detail)) = check_position(strategy, graph, profile, &seq, position, idx) {
                report.counterexample = Some(CutCounterexample { instance: idx, position, property, detail });
                return report;
            }
        }
    }
    report
}

type Failure = (CutProperty, String);

fn check_position(
    strategy: &dyn CutStrategy,
    graph: &Graph,
    profile: &ReportedProfile,
    seq: &CriticalSequence,
    position: usize,
    instance: usize,
) -> Result<(), Failure> {
    let cut_of = |p: &ReportedProfile| {
        strategy.cut(graph, p, seq, position).map_err(|e| (CutProperty::InformationBlocking, e.to_string()))
    };
    let next = seq.nodes[position + 1];
    let node = seq.nodes[position];
    let cut = cut_of(profile)?;

    let blocked = graph.restrict(profile, &cut.to_removal());
    if graph.informed_set(&blocked).contains(next) {
        return Err((
            CutProperty::InformationBlocking,
            format!("`{}` stays informed after cutting {:?}", graph.id(next), cut.named(graph)),
        ));
    }

    let deps = dependents(graph, profile, next);
    for perturbed in perturbations(graph, profile, deps, instance as u64) {
        let other = cut_of(&perturbed)?;
        if other != cut {
            return Err((
                CutProperty::NodeIndependence,
                format!(
                    "reports inside d_{} changed the cut from {:?} to {:?}",
                    graph.id(next),
                    cut.named(graph),
                    other.named(graph)
                ),
            ));
        }
    }

    let neighbors = graph.true_neighbors(node).without(graph.seller());
    let base = *profile.report(node).expect("critical nodes are non-nil");
    let survivors = |diffusion: NodeSet| -> Result<NodeSet, Failure> {
        let p = profile.with_report(node, Some(Report { diffusion, ..base }));
        let c = cut_of(&p)?;
        Ok(graph.informed_set(&graph.restrict(&p, &c.to_removal())))
    };
    let pairs: Vec<(NodeSet, NodeSet)> = if neighbors.len() <= MONOTONICITY_DEGREE {
        neighbors.subsets().flat_map(|outer| outer.subsets().map(move |inner| (inner, outer))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(instance as u64 ^ 0x5eed);
        (0..256)
            .map(|_| {
                let outer = random_subset(&mut rng, neighbors);
                (random_subset(&mut rng, outer), outer)
            })
            .collect()
    };
    let mut cache: std::collections::HashMap<NodeSet, NodeSet> = std::collections::HashMap::new();
    for (inner, outer) in pairs {
        for s in [inner, outer] {
            if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(s) {
                slot.insert(survivors(s)?);
            }
        }
        let (small, large) = (cache[&inner], cache[&outer]);
        if !small.is_subset(large) {
            return Err((
                CutProperty::DiffusionMonotonicity,
                format!(
                    "`{}` diffusing to {:?} keeps {:?} informed, but diffusing to {:?} keeps only {:?}",
                    graph.id(node),
                    graph.ids_of(inner),
                    graph.ids_of(small),
                    graph.ids_of(outer),
                    graph.ids_of(large)
                ),
            ));
        }
    }
    Ok(())
}

fn random_subset(rng: &mut ChaCha8Rng, of: NodeSet) -> NodeSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Alternative reports for the nodes in `deps`: every subset silenced or set
/// to nil when `deps` is small, otherwise random reports.
fn perturbations(graph: &Graph, profile: &ReportedProfile, deps: NodeSet, seed: u64) -> Vec<ReportedProfile> {
    let mut out = Vec::new();
    if deps.len() <= EXHAUSTIVE_DEPENDENTS {
        for subset in deps.subsets().skip(1) {
            let mut silenced = profile.clone();
            let mut nil = profile.clone();
            for n in subset {
                if let Some(r) = profile.report(n) {
                    silenced.set(n, Some(Report { diffusion: NodeSet::empty(), ..*r }));
                }
                nil.set(n, None);
            }
            out.push(silenced);
            out.push(nil);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = graph.max_value().map_or(1, |v| v.to_integer() + 2);
        for _ in 0..RANDOM_PERTURBATIONS {
            let mut p = profile.clone();
            for n in deps {
                let report = if rng.gen_ratio(1, 4) {
                    None
                } else {
                    let bid = if rng.gen_ratio(1, 5) { None } else { Some(int(rng.gen_range(0..=top))) };
                    Some(Report { bid, diffusion: random_subset(&mut rng, graph.true_neighbors(n)) })
                };
                p.set(n, report);
            }
            out.push(p);
        }
    }
    out
}
