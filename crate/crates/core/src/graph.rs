//! The weighted social graph an auction runs on.
//!
//! Non-seller nodes are stored sorted by identifier, so comparing [`NodeId`]s
//! is the same as comparing identifiers lexicographically. The seller always
//! occupies the last index.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::GraphError;
use crate::nodeset::{NodeSet, MAX_NODES};
use crate::profile::{Report, ReportedProfile};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, NodeId>,
    values: Vec<Rational>,
    edges: Vec<Edge>,
    weights: Vec<Option<Rational>>,
    neighbors: Vec<NodeSet>,
    in_neighbors: Vec<NodeSet>,
    unweighted: bool,
}

impl Graph {
    /// Builds and validates a graph. Edges are `(from, to, weight)` triples
    /// over node identifiers; the seller may appear on either end.
    pub fn new<S, N, E>(seller: S, nodes: N, edges: E) -> Result<Graph, GraphError>
    where
        S: Into<String>,
        N: IntoIterator<Item = (String, Rational)>,
        E: IntoIterator<Item = (String, String, Rational)>,
    {
        let seller = seller.into();
        let mut nodes: Vec<(String, Rational)> = nodes.into_iter().collect();
        nodes.sort_by(|a, b| a.0.cmp(&b.0));
        if nodes.len() + 1 > MAX_NODES {
            return Err(GraphError::TooManyNodes(nodes.len()));
        }
        for pair in nodes.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(GraphError::DuplicateNode(pair[0].0.clone()));
            }
        }
        if nodes.iter().any(|(id, _)| *id == seller) {
            return Err(GraphError::DuplicateNode(seller));
        }
        if let Some((id, _)) = nodes.iter().find(|(_, v)| *v < Rational::zero()) {
            return Err(GraphError::NegativeValue(id.clone()));
        }

        let size = nodes.len() + 1;
        let mut ids: Vec<String> = Vec::with_capacity(size);
        let mut values = Vec::with_capacity(size);
        for (id, value) in nodes {
            ids.push(id);
            values.push(value);
        }
        ids.push(seller);
        values.push(Rational::zero());
        let index: HashMap<String, NodeId> =
            ids.iter().enumerate().map(|(i, id)| (id.clone(), NodeId::new(i))).collect();

        let mut weights = vec![None; size * size];
        let mut neighbors = vec![NodeSet::empty(); size];
        let mut in_neighbors = vec![NodeSet::empty(); size];
        let mut edge_list = Vec::new();
        for (from, to, weight) in edges {
            let f = *index.get(&from).ok_or_else(|| GraphError::UnknownNode(from.clone()))?;
            let t = *index.get(&to).ok_or_else(|| GraphError::UnknownNode(to.clone()))?;
            if f == t {
                return Err(GraphError::SelfLoop(from));
            }
            let slot = &mut weights[f.index() * size + t.index()];
            if slot.is_some() {
                return Err(GraphError::DuplicateEdge(from, to));
            }
            *slot = Some(weight);
            neighbors[f.index()].insert(t);
            in_neighbors[t.index()].insert(f);
            edge_list.push(Edge { from: f, to: t, weight });
        }
        edge_list.sort_by_key(|e| (e.from, e.to));
        let unweighted = edge_list.iter().all(|e| e.weight.is_zero());

        let graph = Graph { ids, index, values, edges: edge_list, weights, neighbors, in_neighbors, unweighted };
        assert_no_negative_cycles(&graph)?;
        Ok(graph)
    }

    pub fn seller(&self) -> NodeId {
        NodeId::new(self.ids.len() - 1)
    }

    /// Number of nodes excluding the seller.
    pub fn node_count(&self) -> usize {
        self.ids.len() - 1
    }

    /// Slots in a profile: every node plus the seller.
    pub fn slot_count(&self) -> usize {
        self.ids.len()
    }

    /// Non-seller nodes in identifier order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn all_nodes(&self) -> NodeSet {
        self.nodes().collect()
    }

    pub fn id(&self, node: NodeId) -> &str {
        &self.ids[node.index()]
    }

    pub fn node(&self, id: &str) -> Option<NodeId> {
        self.index.get(id).copied()
    }

    pub fn value(&self, node: NodeId) -> Rational {
        self.values[node.index()]
    }

    pub fn max_value(&self) -> Option<Rational> {
        self.nodes().map(|n| self.value(n)).max()
    }

    pub fn weight(&self, from: NodeId, to: NodeId) -> Option<Rational> {
        self.weights[from.index() * self.ids.len() + to.index()]
    }

    /// Out-neighbors `r_i` in the true graph.
    pub fn true_neighbors(&self, node: NodeId) -> NodeSet {
        self.neighbors[node.index()]
    }

    pub fn in_neighbors(&self, node: NodeId) -> NodeSet {
        self.in_neighbors[node.index()]
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// True when every edge weight is zero.
    pub fn is_unweighted(&self) -> bool {
        self.unweighted
    }

    /// The same graph with every edge weight set to zero.
    pub fn zero_weight_projection(&self) -> Graph {
        let size = self.ids.len();
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = Rational::zero();
        }
        for e in &g.edges {
            g.weights[e.from.index() * size + e.to.index()] = Some(Rational::zero());
        }
        g.unweighted = true;
        g
    }

    /// Every node bids its valuation and diffuses to all of its neighbors.
    pub fn truthful_profile(&self) -> ReportedProfile {
        let mut profile = ReportedProfile::nil(self);
        for node in self.nodes() {
            profile.set(node, Some(self.truthful_report(node)));
        }
        profile
    }

    pub fn truthful_report(&self, node: NodeId) -> Report {
        Report { bid: Some(self.value(node)), diffusion: self.true_neighbors(node) }
    }

    pub fn ids_of(&self, nodes: impl IntoIterator<Item = NodeId>) -> Vec<String> {
        nodes.into_iter().map(|n| self.id(n).to_string()).collect()
    }
}

/// Rejects graphs with a directed cycle of negative total weight.
///
/// Runs Bellman-Ford from a virtual source joined to every node by a
/// zero-weight edge; an improvement on round `n` exposes a cycle, which is
/// recovered by walking predecessors.
pub fn assert_no_negative_cycles(graph: &Graph) -> Result<(), GraphError> {
    let n = graph.slot_count();
    let mut dist = vec![Rational::zero(); n];
    let mut pred: Vec<Option<NodeId>> = vec![None; n];
    let mut last_relaxed = None;
    for _ in 0..n {
        last_relaxed = None;
        for e in graph.edges() {
            let candidate = dist[e.from.index()] + e.weight;
            if candidate < dist[e.to.index()] {
                dist[e.to.index()] = candidate;
                pred[e.to.index()] = Some(e.from);
                last_relaxed = Some(e.to);
            }
        }
        if last_relaxed.is_none() {
            return Ok(());
        }
    }
    let Some(mut v) = last_relaxed else {
        return Ok(());
    };
    for _ in 0..n {
        v = pred[v.index()].expect("relaxed node has a predecessor");
    }
    let start = v;
    let mut cycle = vec![start];
    let mut cur = pred[start.index()].expect("cycle node has a predecessor");
    while cur != start {
        cycle.push(cur);
        cur = pred[cur.index()].expect("cycle node has a predecessor");
    }
    cycle.push(start);
    cycle.reverse();
    Err(GraphError::NegativeCycle(graph.ids_of(cycle)))
}
