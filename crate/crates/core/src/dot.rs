//! Graphviz export.

use std::fmt::Write;

use crate::graph::Graph;
use crate::rational::format_rational;

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `graph` with values as node labels and weights as edge labels.
/// Nodes of `path` (and the edges joining the seller to them in order) are
/// highlighted.
pub fn to_dot(graph: &Graph, path: Option<&[String]>) -> String {
    let path = path.unwrap_or(&[]);
    let seller = graph.id(graph.seller());
    let on_path = |id: &str| path.iter().any(|p| p == id);
    let mut hops: Vec<(&str, &str)> = Vec::new();
    if let Some(first) = path.first() {
        hops.push((seller, first.as_str()));
    }
    hops.extend(path.windows(2).map(|w| (w[0].as_str(), w[1].as_str())));

    let mut out = String::from("digraph auction {\n  rankdir=LR;\n");
    writeln!(out, "  {} [shape=doublecircle, label={}];", quote(seller), quote(seller)).unwrap();
    for node in graph.nodes() {
        let id = graph.id(node);
        let label = quote(&format!("{id}\n{}", format_rational(&graph.value(node))));
        let style = if on_path(id) { ", style=filled, fillcolor=lightblue" } else { "" };
        writeln!(out, "  {} [label={label}{style}];", quote(id)).unwrap();
    }
    for edge in graph.edges() {
        let (from, to) = (graph.id(edge.from), graph.id(edge.to));
        let style = if hops.contains(&(from, to)) { ", color=red, penwidth=2" } else { "" };
        writeln!(out, "  {} -> {} [label={}{style}];", quote(from), quote(to), quote(&format_rational(&edge.weight)))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig1;

    #[test]
    fn one_line_per_node_and_edge() {
        let g = fig1();
        let dot = to_dot(&g, None);
        assert_eq!(dot.matches(" -> ").count(), g.edges().len());
        assert_eq!(dot.matches("label=").count(), g.node_count() + 1 + g.edges().len());
        assert!(!dot.contains("penwidth"));
        assert_eq!(dot, to_dot(&g, None));
    }

    #[test]
    fn highlights_the_allocation_path() {
        let g = fig1();
        let path: Vec<String> = ["B", "E", "F"].iter().map(|s| s.to_string()).collect();
        let dot = to_dot(&g, Some(&path));
        assert_eq!(dot.matches("penwidth=2").count(), 3);
        assert_eq!(dot.matches("fillcolor").count(), 3);
        assert!(dot.contains("\"s\" -> \"B\" [label=\"0\", color=red, penwidth=2];"));
    }

    #[test]
    fn quotes_awkward_ids() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
