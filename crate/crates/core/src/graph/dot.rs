//! Graphviz export.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{EdgeClass, SystemDigraph, Vertex};

/// Extra styling on top of the plain digraph.
#[derive(Clone, Debug, Default)]
pub struct DotOverlay {
    /// Drawn bold, e.g. a certificate cycle family.
    pub bold_edges: BTreeSet<(Vertex, Vertex)>,
    /// Drawn in red, e.g. the component that holds a feedback link.
    pub highlighted_edges: BTreeSet<(Vertex, Vertex)>,
    /// Vertices not part of the selection; they and their edges are dashed.
    pub unselected: BTreeSet<Vertex>,
    /// Edges not part of the selection, dashed.
    pub dashed_edges: BTreeSet<(Vertex, Vertex)>,
}

/// Renders `g` as a DOT digraph. States are circles, inputs boxes and outputs
/// diamonds; each edge carries `class` in `{xx, ux, xy, yu}`.
pub fn to_dot(g: &SystemDigraph, overlay: Option<&DotOverlay>) -> String {
    let empty = DotOverlay::default();
    let overlay = overlay.unwrap_or(&empty);
    let mut out = String::from("digraph closed_loop {\n  rankdir=LR;\n");
    for v in g.vertices() {
        let shape = match v {
            Vertex::State(_) => "circle",
            Vertex::Input(_) => "box",
            Vertex::Output(_) => "diamond",
        };
        let style = if overlay.unselected.contains(&v) { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  {v} [shape={shape}{style}];");
    }
    for (from, to) in g.edges() {
        let class = EdgeClass::of(from, to).map_or("other", EdgeClass::tag);
        let mut attrs = vec![format!("class=\"{class}\"")];
        let mut styles = Vec::new();
        let edge = (from, to);
        if overlay.dashed_edges.contains(&edge)
            || overlay.unselected.contains(&from)
            || overlay.unselected.contains(&to)
        {
            styles.push("dashed");
        }
        if overlay.bold_edges.contains(&edge) {
            styles.push("bold");
            attrs.push("penwidth=2.5".into());
        }
        if overlay.highlighted_edges.contains(&edge) {
            attrs.push("color=red".into());
        }
        if !styles.is_empty() {
            attrs.push(format!("style=\"{}\"", styles.join(",")));
        }
        let _ = writeln!(out, "  {from} -> {to} [{}];", attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_classes() {
        let g = SystemDigraph::from_edges(
            1,
            1,
            1,
            [
                (Vertex::Input(0), Vertex::State(0)),
                (Vertex::State(0), Vertex::Output(0)),
                (Vertex::Output(0), Vertex::Input(0)),
            ],
        )
        .unwrap();
        let mut overlay = DotOverlay::default();
        overlay.bold_edges.insert((Vertex::Output(0), Vertex::Input(0)));
        let dot = to_dot(&g, Some(&overlay));
        assert!(dot.contains("x1 [shape=circle];"));
        assert!(dot.contains("u1 [shape=box];"));
        assert!(dot.contains("y1 [shape=diamond];"));
        assert!(dot.contains("u1 -> x1 [class=\"ux\"];"));
        assert!(dot.contains("y1 -> u1 [class=\"yu\", penwidth=2.5, style=\"bold\"];"));
    }
}
