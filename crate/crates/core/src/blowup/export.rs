//! JSON, edge-list and DOT exports of a blow-up graph.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::{BlowupGraph, EdgeKind, Side, VertexKind, CONVENTION};
use crate::graph::VertexId;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub format_version: u32,
    pub ell: usize,
    pub tree: String,
    pub convention: String,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: VertexId,
    pub kind: VertexKind,
    pub rank: usize,
    pub pi: usize,
    pub side: Option<Side>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
}

impl BlowupGraph {
    pub fn to_json(&self, tree: &str) -> GraphJson {
        GraphJson {
            format_version: crate::index_tree::FORMAT_VERSION,
            ell: self.ell(),
            tree: tree.to_string(),
            convention: CONVENTION.to_string(),
            vertices: (0..self.vertex_count() as VertexId)
                .map(|v| VertexJson { id: v, kind: self.kind(v), rank: self.rank(v), pi: self.pi(v), side: self.side(v) })
                .collect(),
            edges: self.typed_edges().iter().map(|&(u, v, kind)| EdgeJson { u, v, kind }).collect(),
        }
    }

    /// `u v kind` lines, preceded by a `#` comment header.
    pub fn write_edge_list<W: Write>(&self, tree: &str, mut w: W) -> io::Result<()> {
        writeln!(w, "# ell={} tree={} vertices={} edges={}", self.ell(), tree, self.vertex_count(), self.edge_count())?;
        writeln!(w, "# convention: {CONVENTION}")?;
        for &(u, v, kind) in self.typed_edges() {
            writeln!(w, "{u} {v} {}", kind.as_str())?;
        }
        Ok(())
    }

    /// Graphviz source; vertices colored by rank and shaped by kind.
    pub fn write_dot<W: Write>(&self, tree: &str, mut w: W) -> io::Result<()> {
        const PALETTE: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];
        writeln!(w, "graph G {{")?;
        writeln!(w, "  label=\"ell={} tree={}\";", self.ell(), tree)?;
        writeln!(w, "  node [style=filled, fontsize=8];")?;
        for v in 0..self.vertex_count() as VertexId {
            let shape = match self.kind(v) {
                VertexKind::TriangleTopLeft | VertexKind::TriangleTopRight => "triangle",
                VertexKind::TriangleBottom => "invtriangle",
                _ => "box",
            };
            let color = PALETTE[(self.rank(v) - 1) % PALETTE.len()];
            writeln!(w, "  {v} [shape={shape}, fillcolor=\"{color}\", label=\"{v}:{}\"];", self.rank(v))?;
        }
        for &(u, v, kind) in self.typed_edges() {
            let style = match kind {
                EdgeKind::TriangleTop => "bold",
                k if k.is_rib() => "dashed",
                _ => "solid",
            };
            writeln!(w, "  {u} -- {v} [style={style}];")?;
        }
        writeln!(w, "}}")
    }
}

#[cfg(test)]
mod tests {
    use crate::blowup::tests::blowup;
    use crate::index_tree::IndexTree;

    #[test]
    fn json_shape() {
        let g = blowup(2, IndexTree::build_balanced(2));
        let j = g.to_json("complete");
        assert_eq!(j.vertices.len(), 45);
        assert_eq!(j.edges.len(), g.edge_count());
        let v = serde_json::to_value(&j).unwrap();
        assert_eq!(v["vertices"][0]["kind"], "triangle-top-left");
        assert_eq!(v["vertices"][0]["side"], serde_json::Value::Null);
        assert_eq!(v["vertices"][44]["side"], "right");
        assert_eq!(v["format_version"], 1);
        let back: super::GraphJson = serde_json::from_value(v).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn text_exports() {
        let g = blowup(2, IndexTree::build_balanced(2));
        let mut el = Vec::new();
        g.write_edge_list("complete", &mut el).unwrap();
        let el = String::from_utf8(el).unwrap();
        assert_eq!(el.lines().filter(|l| !l.starts_with('#')).count(), g.edge_count());
        let mut dot = Vec::new();
        g.write_dot("complete", &mut dot).unwrap();
        let dot = String::from_utf8(dot).unwrap();
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
    }
}
