//! Graphviz export of labelled graphs.

use std::fmt::Write;

use lambkit_core::unigraph::LabeledGraph;

/// Reflexive `1` loops are left out unless `loops` is set.
pub fn graph_to_dot(g: &LabeledGraph, loops: bool) -> String {
    let mut out = String::from("digraph G {\n  rankdir=LR;\n");
    for v in 0..g.vertices {
        let _ = writeln!(out, "  {};", v);
    }
    for (&(x, y), f) in &g.edges {
        if x == y && !loops {
            continue;
        }
        let label = f.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", x, y, label);
    }
    out.push_str("}\n");
    out
}
