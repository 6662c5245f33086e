//! The cyclic JSJ decomposition of a 1-ended right-angled Artin group.
//!
//! [`build_j0`] turns the block tree into a graph of groups: cut vertices
//! carry `A(v) ≅ ℤ`, blocks carry `A(block)`, and a `K₂` block hanging off
//! the tree carries `A(v)` for its cut vertex together with a loop whose
//! stable letter is the leaf vertex. [`collapse_to_j`] then folds every black
//! vertex of valence two into a neighbor, which makes the result reduced.

use std::fmt;

use serde::Serialize;

use crate::blocks::{block_tree_unchecked, decompose};
use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSubset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum GroupDescriptor {
    /// `A(Γ_S)` for the induced subgraph on `S`.
    Raag(VertexSubset),
    /// `A(v) ≅ ℤ`.
    Cyclic(VertexId),
}

impl GroupDescriptor {
    /// The vertices of Γ generating this group.
    pub fn generators(&self) -> Vec<VertexId> {
        match self {
            GroupDescriptor::Raag(s) => s.members().to_vec(),
            GroupDescriptor::Cyclic(v) => vec![v.clone()],
        }
    }

    pub fn has_generator(&self, v: &VertexId) -> bool {
        match self {
            GroupDescriptor::Raag(s) => s.contains(v),
            GroupDescriptor::Cyclic(c) => c == v,
        }
    }

    /// Whether `A(v)` is a proper subgroup of this group.
    pub fn properly_contains_cyclic(&self, v: &VertexId) -> bool {
        match self {
            GroupDescriptor::Raag(s) => s.len() >= 2 && s.contains(v),
            GroupDescriptor::Cyclic(_) => false,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupDescriptor::Cyclic(_))
    }

    /// Short label such as `raag:abc` or `cyclic:c`. Multi-character names
    /// are comma separated.
    pub fn label(&self) -> String {
        let gens = self.generators();
        let sep = if gens.iter().all(|g| g.as_str().len() == 1) { "" } else { "," };
        let joined = gens.iter().map(VertexId::as_str).collect::<Vec<_>>().join(sep);
        match self {
            GroupDescriptor::Raag(_) => format!("raag:{joined}"),
            GroupDescriptor::Cyclic(_) => format!("cyclic:{joined}"),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogVertex {
    pub id: usize,
    pub color: Color,
    pub group: GroupDescriptor,
    /// The block (white) or `{v}` (black) of Γ this vertex comes from.
    pub block: VertexSubset,
    pub toral: bool,
    pub hanging: bool,
    /// Cut vertices whose black vertices were collapsed into this one.
    pub absorbed: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogEdge {
    pub id: usize,
    /// Equal for loops.
    pub ends: [usize; 2],
    /// Generator of the infinite cyclic edge group `A(v)`.
    pub generator: VertexId,
    /// Image of the generator in the vertex group at each end.
    pub inclusion: [VertexId; 2],
    pub stable_letter: Option<VertexId>,
}

impl GogEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<GogVertex>,
    pub edges: Vec<GogEdge>,
    pub source: SimplicialGraph,
}

impl GraphOfGroups {
    pub fn vertex(&self, id: usize) -> Option<&GogVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Base-graph valence; a loop counts twice.
    pub fn valence(&self, id: usize) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&x| x == id).count())
            .sum()
    }

    pub fn incident_edges(&self, id: usize) -> impl Iterator<Item = &GogEdge> + '_ {
        self.edges.iter().filter(move |e| e.ends.contains(&id))
    }

    pub fn loops(&self) -> impl Iterator<Item = &GogEdge> + '_ {
        self.edges.iter().filter(|e| e.is_loop())
    }

    pub fn stable_letters(&self) -> Vec<VertexId> {
        self.edges.iter().filter_map(|e| e.stable_letter.clone()).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut reached = vec![self.vertices[0].id];
        let mut frontier = reached.clone();
        while let Some(x) = frontier.pop() {
            for e in self.incident_edges(x) {
                for &y in &e.ends {
                    if !reached.contains(&y) {
                        reached.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        self.vertices.iter().all(|v| reached.contains(&v.id))
    }
}

fn require_jsj_input(g: &SimplicialGraph) -> Result<()> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.vertex_count() < 3 || !g.is_connected() {
        return Err(Error::Precondition(
            "the JSJ decomposition is defined for connected graphs with at least three vertices"
                .into(),
        ));
    }
    Ok(())
}

/// The graph of groups on the block tree, with a loop at every hanging
/// vertex.
pub fn build_j0(g: &SimplicialGraph) -> Result<GraphOfGroups> {
    require_jsj_input(g)?;
    let d = decompose(g);
    let tree = block_tree_unchecked(g, &d);
    let whites = tree.white.len();
    let mut vertices = Vec::with_capacity(tree.node_count());
    let mut loops = Vec::new();

    for (j, block) in tree.white.iter().enumerate() {
        let toral = block.len() == 2;
        let hanging = toral && tree.white_valence(j) == 1;
        let group = if hanging {
            // exactly one end of a hanging K₂ is a cut vertex, the other is a leaf of Γ
            let (cut, leaf) = hanging_ends(g, &d.cut, block);
            loops.push((j, cut.clone(), leaf));
            GroupDescriptor::Cyclic(cut)
        } else {
            GroupDescriptor::Raag(block.clone())
        };
        vertices.push(GogVertex {
            id: j,
            color: Color::White,
            group,
            block: block.clone(),
            toral,
            hanging,
            absorbed: Vec::new(),
        });
    }
    for (b, v) in tree.black.iter().enumerate() {
        vertices.push(GogVertex {
            id: whites + b,
            color: Color::Black,
            group: GroupDescriptor::Cyclic(v.clone()),
            block: VertexSubset::new([v.clone()]),
            toral: false,
            hanging: false,
            absorbed: Vec::new(),
        });
    }

    let mut edges = Vec::new();
    for &(b, w) in &tree.edges {
        let v = tree.black[b].clone();
        edges.push(GogEdge {
            id: edges.len(),
            ends: [whites + b, w],
            generator: v.clone(),
            inclusion: [v.clone(), v],
            stable_letter: None,
        });
    }
    for (w, cut, leaf) in loops {
        edges.push(GogEdge {
            id: edges.len(),
            ends: [w, w],
            generator: cut.clone(),
            inclusion: [cut.clone(), cut],
            stable_letter: Some(leaf),
        });
    }
    Ok(GraphOfGroups { vertices, edges, source: g.clone() })
}

fn hanging_ends(g: &SimplicialGraph, cut: &[bool], block: &VertexSubset) -> (VertexId, VertexId) {
    let [x, y] = block.members() else { unreachable!("hanging blocks are K2") };
    let xi = g.index_of(x).expect("block vertices belong to the graph");
    if cut[xi] {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

/// Collapses one edge at every black vertex of valence two.
///
/// The black vertex merges into the white neighbor whose block is least;
/// its other edge is re-attached to that neighbor unchanged. Vertex and edge
/// ids are renumbered densely in their original order.
pub fn collapse_to_j(j0: &GraphOfGroups) -> GraphOfGroups {
    let mut vertices = j0.vertices.clone();
    let mut edges: Vec<Option<GogEdge>> = j0.edges.iter().cloned().map(Some).collect();
    let mut removed = Vec::new();

    for black in j0.vertices.iter().filter(|v| v.color == Color::Black) {
        let incident: Vec<usize> = (0..edges.len())
            .filter(|&k| edges[k].as_ref().is_some_and(|e| !e.is_loop() && e.ends.contains(&black.id)))
            .collect();
        if incident.len() != 2 {
            continue;
        }
        let other_end = |k: usize| {
            let e = edges[k].as_ref().expect("edge still present");
            if e.ends[0] == black.id { e.ends[1] } else { e.ends[0] }
        };
        let block_of = |id: usize| &j0.vertex(id).expect("edge ends exist").block;
        let (n0, n1) = (other_end(incident[0]), other_end(incident[1]));
        let (target, kept) = if block_of(n0) <= block_of(n1) {
            (n0, incident[1])
        } else {
            (n1, incident[0])
        };
        let dropped = if kept == incident[0] { incident[1] } else { incident[0] };
        edges[dropped] = None;
        if let Some(e) = edges[kept].as_mut() {
            for end in &mut e.ends {
                if *end == black.id {
                    *end = target;
                }
            }
        }
        if let Some(t) = vertices.iter_mut().find(|v| v.id == target) {
            t.absorbed.push(black.group.generators()[0].clone());
        }
        removed.push(black.id);
    }

    vertices.retain(|v| !removed.contains(&v.id));
    let renumber: Vec<(usize, usize)> =
        vertices.iter().enumerate().map(|(new, v)| (v.id, new)).collect();
    let map = |old: usize| renumber.iter().find(|p| p.0 == old).map(|p| p.1).expect("live vertex");
    let edges: Vec<GogEdge> = edges
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(k, mut e)| {
            e.id = k;
            e.ends = [map(e.ends[0]), map(e.ends[1])];
            e
        })
        .collect();
    for (new, v) in vertices.iter_mut().enumerate() {
        v.id = new;
    }
    GraphOfGroups { vertices, edges, source: j0.source.clone() }
}

/// Reduced in the sense of Bestvina–Feighn: at every vertex of valence at
/// most two, each incident edge group is a proper subgroup of the vertex
/// group.
pub fn is_reduced(gog: &GraphOfGroups) -> bool {
    gog.vertices.iter().all(|x| {
        gog.valence(x.id) > 2
            || gog
                .incident_edges(x.id)
                .all(|e| x.group.properly_contains_cyclic(&e.generator))
    })
}

pub fn jsj(g: &SimplicialGraph) -> Result<GraphOfGroups> {
    Ok(collapse_to_j(&build_j0(g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn v(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    fn set(names: &[&str]) -> VertexSubset {
        VertexSubset::from_names(names).unwrap()
    }

    fn raag(names: &[&str]) -> GroupDescriptor {
        GroupDescriptor::Raag(set(names))
    }

    fn cyc(name: &str) -> GroupDescriptor {
        GroupDescriptor::Cyclic(v(name))
    }

    fn gamma1() -> SimplicialGraph {
        parse_graph("c l1\nc l2\nc l3").unwrap()
    }

    fn gamma2() -> SimplicialGraph {
        parse_graph("a b\nb c\na c\nc d\nd e\ne f\nd f").unwrap()
    }

    #[test]
    fn j0_of_star() {
        let j0 = build_j0(&gamma1()).unwrap();
        assert_eq!(j0.vertices.len(), 4);
        let blacks: Vec<_> = j0.vertices.iter().filter(|x| x.color == Color::Black).collect();
        assert_eq!(blacks.len(), 1);
        assert_eq!(blacks[0].group, cyc("c"));
        for w in j0.vertices.iter().filter(|x| x.color == Color::White) {
            assert!(w.hanging && w.toral);
            assert_eq!(w.group, cyc("c"));
        }
        let tree: Vec<_> = j0.edges.iter().filter(|e| !e.is_loop()).collect();
        assert_eq!(tree.len(), 3);
        assert!(tree.iter().all(|e| e.generator == v("c")));
        let letters: Vec<_> = j0.loops().map(|e| e.stable_letter.clone().unwrap()).collect();
        assert_eq!(letters, vec![v("l1"), v("l2"), v("l3")]);
        assert!(j0.loops().all(|e| e.inclusion == [v("c"), v("c")]));
    }

    #[test]
    fn j0_of_gamma2() {
        let j0 = build_j0(&gamma2()).unwrap();
        let groups: Vec<_> = j0.vertices.iter().map(|x| x.group.clone()).collect();
        assert_eq!(
            groups,
            vec![raag(&["a", "b", "c"]), raag(&["c", "d"]), raag(&["d", "e", "f"]), cyc("c"), cyc("d")]
        );
        let middle = &j0.vertices[1];
        assert!(middle.toral && !middle.hanging);
        assert_eq!(j0.loops().count(), 0);
        assert_eq!(j0.edges.len(), 4);
        assert!(!is_reduced(&j0));
    }

    #[test]
    fn biconnected_input_gives_one_vertex() {
        let tri = parse_graph("a b\nb c\na c").unwrap();
        let j0 = build_j0(&tri).unwrap();
        assert_eq!(j0.vertices.len(), 1);
        assert_eq!(j0.vertices[0].group, raag(&["a", "b", "c"]));
        assert!(j0.edges.is_empty());
        assert!(is_reduced(&j0));
        let c4 = parse_graph("a b\nb c\nc d\nd a").unwrap();
        let j = jsj(&c4).unwrap();
        assert_eq!(j.vertices.len(), 1);
        assert_eq!(j.vertices[0].group, raag(&["a", "b", "c", "d"]));
    }

    #[test]
    fn collapse_gamma2() {
        let j = jsj(&gamma2()).unwrap();
        let groups: Vec<_> = j.vertices.iter().map(|x| x.group.clone()).collect();
        assert_eq!(groups, vec![raag(&["a", "b", "c"]), raag(&["c", "d"]), raag(&["d", "e", "f"])]);
        assert!(j.vertices.iter().all(|x| x.color == Color::White));
        let ends: Vec<_> = j.edges.iter().map(|e| (e.ends, e.generator.clone())).collect();
        assert_eq!(ends, vec![([0, 1], v("c")), ([1, 2], v("d"))]);
        assert_eq!(j.vertices[0].absorbed, vec![v("c")]);
        assert_eq!(j.vertices[1].absorbed, vec![v("d")]);
        assert!(is_reduced(&j));
    }

    #[test]
    fn collapse_keeps_star() {
        let j0 = build_j0(&gamma1()).unwrap();
        assert!(is_reduced(&j0));
        assert_eq!(collapse_to_j(&j0), j0);
    }

    #[test]
    fn collapse_path3() {
        let j = jsj(&parse_graph("a b\nb c").unwrap()).unwrap();
        assert_eq!(j.vertices.len(), 2);
        assert!(j.vertices.iter().all(|x| x.group == cyc("b")));
        let letters: Vec<_> = j.loops().map(|e| e.stable_letter.clone().unwrap()).collect();
        assert_eq!(letters, vec![v("a"), v("c")]);
        let tree: Vec<_> = j.edges.iter().filter(|e| !e.is_loop()).collect();
        assert_eq!(tree.len(), 1);
        assert_eq!(tree[0].generator, v("b"));
        assert_eq!(j.valence(0), 3);
        assert!(is_reduced(&j));
    }

    #[test]
    fn rejects_out_of_scope_inputs() {
        assert!(matches!(build_j0(&parse_graph("a b").unwrap()), Err(Error::Precondition(_))));
        assert!(matches!(jsj(&parse_graph("a b\nb c\nx").unwrap()), Err(Error::Precondition(_))));
        assert_eq!(jsj(&SimplicialGraph::empty()), Err(Error::EmptyGraph));
    }

    #[test]
    fn reducedness_on_hand_built_graphs() {
        let g = gamma2();
        let lone = |group| GraphOfGroups {
            vertices: vec![GogVertex {
                id: 0,
                color: Color::White,
                group,
                block: set(&["c"]),
                toral: false,
                hanging: false,
                absorbed: vec![],
            }],
            edges: vec![GogEdge {
                id: 0,
                ends: [0, 0],
                generator: v("c"),
                inclusion: [v("c"), v("c")],
                stable_letter: Some(v("a")),
            }],
            source: g.clone(),
        };
        // valence 2 (a loop) with edge group equal to the vertex group
        assert!(!is_reduced(&lone(cyc("c"))));
        assert!(is_reduced(&lone(raag(&["c", "d"]))));
    }

    #[test]
    fn labels() {
        assert_eq!(raag(&["a", "b", "c"]).label(), "raag:abc");
        assert_eq!(raag(&["c", "l1"]).label(), "raag:c,l1");
        assert_eq!(cyc("c").label(), "cyclic:c");
    }
}
