//! DOT export: single graphs with weight labels and numbered legs, and
//! Hasse diagrams of strata posets.

use std::fmt::Write;

use tropmod::{StrataPoset, WeightedGraph};

pub fn graph_to_dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let w = g.weight(v).unwrap();
        writeln!(out, "  v{} [label=\"w={}\"];", v.index(), w).unwrap();
    }
    for e in g.edges() {
        let (a, b) = g.edge_endpoints(e).unwrap();
        writeln!(
            out,
            "  v{} -- v{} [label=\"e{}\"];",
            a.index(),
            b.index(),
            e.index()
        )
        .unwrap();
    }
    for (label, v) in g.legs() {
        writeln!(out, "  leg{label} [shape=none, label=\"{label}\"];").unwrap();
        writeln!(out, "  v{} -- leg{label} [style=dashed];", v.index()).unwrap();
    }
    out.push_str("}\n");
    out
}

fn weight_profile(g: &WeightedGraph) -> String {
    let mut ws: Vec<u64> = g.weights().to_vec();
    ws.sort_unstable();
    let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    parts.join(",")
}

/// Hasse diagram: nodes labeled `|E|=k, w=(profile)`, covers drawn downward
/// with their multiplicities.
pub fn poset_to_dot(poset: &StrataPoset) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=TB;\n  node [shape=box];\n");
    for (i, node) in poset.nodes.iter().enumerate() {
        writeln!(
            out,
            "  n{i} [label=\"|E|={}, w=({})\"];",
            node.num_edges(),
            weight_profile(&node.graph)
        )
        .unwrap();
    }
    for c in &poset.covers {
        let label = if c.multiplicity > 1 {
            format!(" [label=\"x{}\"]", c.multiplicity)
        } else {
            String::new()
        };
        writeln!(out, "  n{} -> n{}{};", c.from, c.to, label).unwrap();
    }
    out.push_str("}\n");
    out
}
