//! Fixed JSON shapes and DOT output.

use std::fmt::Write;

use raag_core::jsj::{Color, GraphOfGroups, GroupDescriptor};
use raag_core::SimplicialGraph;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl From<&SimplicialGraph> for GraphJson {
    fn from(g: &SimplicialGraph) -> Self {
        GraphJson {
            vertices: g.vertices().iter().map(|v| v.as_str().to_owned()).collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(a, b)| [a.as_str().to_owned(), b.as_str().to_owned()])
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GroupJson {
    pub kind: &'static str,
    pub vertices: Vec<String>,
}

impl From<&GroupDescriptor> for GroupJson {
    fn from(d: &GroupDescriptor) -> Self {
        GroupJson {
            kind: if d.is_cyclic() { "cyclic" } else { "raag" },
            vertices: d.generators().iter().map(|v| v.as_str().to_owned()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GogVertexJson {
    pub id: usize,
    pub color: Color,
    pub group: GroupJson,
    pub hanging: bool,
    pub toral: bool,
}

#[derive(Debug, Serialize)]
pub struct GogEdgeJson {
    pub id: usize,
    pub ends: [usize; 2],
    pub group_vertex: String,
    #[serde(rename = "loop")]
    pub is_loop: bool,
    pub stable_letter: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct GogJson {
    pub vertices: Vec<GogVertexJson>,
    pub edges: Vec<GogEdgeJson>,
}

impl From<&GraphOfGroups> for GogJson {
    fn from(gog: &GraphOfGroups) -> Self {
        GogJson {
            vertices: gog
                .vertices
                .iter()
                .map(|v| GogVertexJson {
                    id: v.id,
                    color: v.color,
                    group: (&v.group).into(),
                    hanging: v.hanging,
                    toral: v.toral,
                })
                .collect(),
            edges: gog
                .edges
                .iter()
                .map(|e| GogEdgeJson {
                    id: e.id,
                    ends: e.ends,
                    group_vertex: e.generator.as_str().to_owned(),
                    is_loop: e.is_loop(),
                    stable_letter: e.stable_letter.as_ref().map(|s| s.as_str().to_owned()),
                })
                .collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("views serialize infallibly");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_dot(g: &SimplicialGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {} [shape=circle, style=filled, fillcolor=white];", quote(v.as_str()));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(a.as_str()), quote(b.as_str()));
    }
    out.push_str("}\n");
    out
}

/// Black vertices are filled boxes, white vertices are ellipses. Edges carry
/// their edge-group generator, loops their stable letter.
pub fn gog_dot(gog: &GraphOfGroups) -> String {
    let mut out = String::from("graph {\n");
    for v in &gog.vertices {
        let (shape, fill, font) = match v.color {
            Color::Black => ("box", "black", ", fontcolor=white"),
            Color::White => ("ellipse", "white", ""),
        };
        let _ = writeln!(
            out,
            "  n{} [label={}, shape={shape}, style=filled, fillcolor={fill}{font}];",
            v.id,
            quote(&v.group.label())
        );
    }
    for e in &gog.edges {
        let label = e.stable_letter.as_ref().unwrap_or(&e.generator);
        let _ = writeln!(out, "  n{} -- n{} [label={}];", e.ends[0], e.ends[1], quote(label.as_str()));
    }
    out.push_str("}\n");
    out
}
