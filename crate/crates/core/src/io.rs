//! JSON graph files.
//!
//! ```json
//! {
//!   "seller": "s",
//!   "nodes": [{"id": "A", "value": "13/2"}],
//!   "edges": [{"from": "s", "to": "A", "weight": "0"}]
//! }
//! ```
//!
//! Amounts are strings holding an integer, a `p/q` fraction or a decimal.
//! Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::Graph;
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub seller: String,
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    pub weight: String,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<Graph, GraphError> {
        let nodes = self
            .nodes
            .into_iter()
            .enumerate()
            .map(|(i, n)| {
                let value = parse_rational(&n.value)
                    .map_err(|e| GraphError::Parse { location: format!("nodes[{i}].value"), message: e.to_string() })?;
                Ok((n.id, value))
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        let edges = self
            .edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                let weight = parse_rational(&e.weight).map_err(|err| GraphError::Parse {
                    location: format!("edges[{i}].weight"),
                    message: err.to_string(),
                })?;
                Ok((e.from, e.to, weight))
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        Graph::new(self.seller, nodes, edges)
    }

    pub fn from_graph(graph: &Graph) -> GraphFile {
        GraphFile {
            seller: graph.id(graph.seller()).to_string(),
            nodes: graph
                .nodes()
                .map(|n| NodeEntry { id: graph.id(n).to_string(), value: format_rational(&graph.value(n)) })
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    from: graph.id(e.from).to_string(),
                    to: graph.id(e.to).to_string(),
                    weight: format_rational(&e.weight),
                })
                .collect(),
        }
    }
}

pub fn parse_graph_str(text: &str) -> Result<Graph, GraphError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.into_graph()
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_graph_str(&text)
}

/// Canonical JSON: nodes in identifier order, edges sorted by endpoints.
pub fn graph_to_json(graph: &Graph) -> String {
    let mut out = serde_json::to_string_pretty(&GraphFile::from_graph(graph)).expect("graph files serialize");
    out.push('\n');
    out
}
