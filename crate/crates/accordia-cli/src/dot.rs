//! DOT emitter for the oriented flip graph: nodes labeled by diagonal lists,
//! arcs labeled removed→added, oriented along increasing flips.

use accordia_core::complex::OrientedFlipGraph;

pub fn emit_dot(graph: &OrientedFlipGraph) -> String {
    let mut out = String::from("digraph accordion_flips {\n  rankdir=BT;\n");
    for (i, face) in graph.nodes.iter().enumerate() {
        let label: Vec<String> = face.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, label.join(",")));
    }
    for arc in &graph.arcs {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\u{2192}{}\"];\n",
            arc.from, arc.to, arc.removed, arc.added
        ));
    }
    out.push_str("}\n");
    out
}
