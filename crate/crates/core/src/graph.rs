//! Finite simplicial graphs: the defining graphs of right-angled Artin groups.
//!
//! A [`SimplicialGraph`] keeps its vertices sorted by name, so vertex indices
//! follow lexicographic order and every index-based tie-break is also a
//! name-based one. Declaration order from the input is remembered separately.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest graph accepted by clique enumeration (one bit per vertex).
pub const CLIQUE_CAPACITY: usize = 64;

/// A vertex name: a nonempty token over `[A-Za-z0-9_]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(name: &str) -> Result<Self> {
        if is_token(name) {
            Ok(VertexId(Arc::from(name)))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl TryFrom<String> for VertexId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        VertexId::new(&s)
    }
}

impl TryFrom<&str> for VertexId {
    type Error = Error;
    fn try_from(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl From<VertexId> for String {
    fn from(v: VertexId) -> String {
        v.0.to_string()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl PartialEq<str> for VertexId {
    fn eq(&self, other: &str) -> bool {
        &*self.0 == other
    }
}

impl PartialEq<&str> for VertexId {
    fn eq(&self, other: &&str) -> bool {
        &*self.0 == *other
    }
}

/// A set of vertices, stored sorted and deduplicated.
///
/// The derived ordering compares the sorted member sequences, which is the
/// "lexicographically least vertex sequence" order used for tie-breaks.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct VertexSubset(Vec<VertexId>);

impl VertexSubset {
    pub fn new<I: IntoIterator<Item = VertexId>>(members: I) -> Self {
        let mut v: Vec<VertexId> = members.into_iter().collect();
        v.sort();
        v.dedup();
        VertexSubset(v)
    }

    /// Builds a subset from names, validating each one.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        names
            .iter()
            .map(|n| VertexId::new(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(VertexSubset::new)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexId> {
        self.0.iter()
    }

    pub fn union(&self, other: &VertexSubset) -> VertexSubset {
        VertexSubset::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn intersection(&self, other: &VertexSubset) -> VertexSubset {
        VertexSubset(self.0.iter().filter(|v| other.contains(v)).cloned().collect())
    }

    pub fn difference(&self, other: &VertexSubset) -> VertexSubset {
        VertexSubset(self.0.iter().filter(|v| !other.contains(v)).cloned().collect())
    }

    pub fn is_subset(&self, other: &VertexSubset) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn names(&self) -> Vec<&str> {
        self.0.iter().map(VertexId::as_str).collect()
    }
}

impl From<Vec<VertexId>> for VertexSubset {
    fn from(v: Vec<VertexId>) -> Self {
        VertexSubset::new(v)
    }
}

impl From<VertexSubset> for Vec<VertexId> {
    fn from(s: VertexSubset) -> Self {
        s.0
    }
}

impl FromIterator<VertexId> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSubset::new(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSubset {
    type Item = &'a VertexId;
    type IntoIter = std::slice::Iter<'a, VertexId>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A cyclic sequence of vertices claimed to be an embedded cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(pub Vec<VertexId>);

impl CycleWitness {
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        names
            .iter()
            .map(|n| VertexId::new(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(CycleWitness)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }
}

/// A finite simple graph with named vertices.
#[derive(Clone)]
pub struct SimplicialGraph {
    names: Vec<VertexId>,
    declared: Vec<usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PartialEq for SimplicialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for SimplicialGraph {}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.names)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Accumulates vertices and edges in declaration order.
#[derive(Default)]
pub struct GraphBuilder {
    index: HashMap<VertexId, usize>,
    order: Vec<VertexId>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> Result<usize> {
        let id = VertexId::new(name)?;
        Ok(self.vertex_id(id))
    }

    fn vertex_id(&mut self, id: VertexId) -> usize {
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = self.order.len();
        self.index.insert(id.clone(), i);
        self.order.push(id);
        i
    }

    pub fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            VertexId::new(a)?;
            return Err(Error::SelfLoop(a.to_string()));
        }
        let i = self.vertex(a)?;
        let j = self.vertex(b)?;
        self.edges.insert((i.min(j), i.max(j)));
        Ok(())
    }

    pub fn build(self) -> SimplicialGraph {
        let n = self.order.len();
        let mut by_name: Vec<usize> = (0..n).collect();
        by_name.sort_by(|&a, &b| self.order[a].cmp(&self.order[b]));
        // rank[declared index] = sorted index
        let mut rank = vec![0; n];
        for (sorted, &decl) in by_name.iter().enumerate() {
            rank[decl] = sorted;
        }
        let names = by_name.iter().map(|&d| self.order[d].clone()).collect();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[rank[a]].push(rank[b]);
            adj[rank[b]].push(rank[a]);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SimplicialGraph {
            names,
            declared: rank,
            adj,
            edge_count: self.edges.len(),
        }
    }
}

impl SimplicialGraph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    /// Builds a graph from explicit vertex and edge lists.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.vertex(v.as_ref())?;
        }
        for (x, y) in edges {
            b.edge(x.as_ref(), y.as_ref())?;
        }
        Ok(b.build())
    }

    /// Builds a graph from an edge list alone (no isolated vertices).
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        SimplicialGraph::new::<&str>(&[], edges)
    }

    /// A graph on `n` vertices named `v0, v1, ...` (zero padded so that name
    /// order agrees with numeric order) with the given index pairs as edges.
    pub fn labeled<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let width = n.saturating_sub(1).to_string().len();
        let names: Vec<VertexId> = (0..n)
            .map(|i| VertexId(Arc::from(format!("v{i:0width$}"))))
            .collect();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("v{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoop(names[a].to_string()));
            }
            if seen.insert((a.min(b), a.max(b))) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SimplicialGraph {
            names,
            declared: (0..n).collect(),
            adj,
            edge_count: seen.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertices in lexicographic order; position is the vertex index.
    pub fn vertices(&self) -> &[VertexId] {
        &self.names
    }

    /// Vertices in the order they were first declared.
    pub fn declared_vertices(&self) -> Vec<VertexId> {
        let mut out = vec![None; self.names.len()];
        for (decl, &sorted) in self.declared.iter().enumerate() {
            out[decl] = Some(self.names[sorted].clone());
        }
        out.into_iter().flatten().collect()
    }

    pub fn vertex_set(&self) -> VertexSubset {
        VertexSubset(self.names.clone())
    }

    /// Edges as name pairs `(x, y)` with `x < y`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edge_indices()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn name(&self, i: usize) -> &VertexId {
        &self.names[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.names.binary_search(v).ok()
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// Sorted neighbor indices.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge_indices(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge_indices(i, j),
            _ => false,
        }
    }

    pub fn subset_of_indices<'a, I: IntoIterator<Item = &'a usize>>(&self, idx: I) -> VertexSubset {
        VertexSubset::new(idx.into_iter().map(|&i| self.names[i].clone()))
    }

    pub(crate) fn indices_of(&self, s: &VertexSubset) -> Result<Vec<usize>> {
        s.iter().map(|v| self.require(v)).collect()
    }

    /// The induced subgraph on the vertices of `s`.
    pub fn induced_subgraph(&self, s: &VertexSubset) -> Result<SimplicialGraph> {
        let keep = self.indices_of(s)?;
        Ok(self.induced_by_indices(&keep))
    }

    /// Induced subgraph on a sorted list of indices.
    pub(crate) fn induced_by_indices(&self, keep: &[usize]) -> SimplicialGraph {
        let mut new_index = vec![usize::MAX; self.names.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let adj: Vec<Vec<usize>> = keep
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .map(|&j| new_index[j]).filter(|&k| k != usize::MAX)
                    .collect()
            })
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        // restrict declaration order
        let mut position = vec![0; self.names.len()];
        for (decl, &sorted) in self.declared.iter().enumerate() {
            position[sorted] = decl;
        }
        let mut decl: Vec<(usize, usize)> =
            keep.iter().enumerate().map(|(k, &i)| (position[i], k)).collect();
        decl.sort_unstable();
        let mut declared = vec![0; keep.len()];
        for (pos, &(_, k)) in decl.iter().enumerate() {
            declared[pos] = k;
        }
        SimplicialGraph {
            names,
            declared,
            adj,
            edge_count,
        }
    }

    /// Components as sorted index lists, ordered by least member. The vertex
    /// `removed`, if any, is treated as deleted.
    pub fn component_indices(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_indices(None).len()
    }

    pub fn connected_components(&self) -> Vec<VertexSubset> {
        self.component_indices(None)
            .iter()
            .map(|c| self.subset_of_indices(c))
            .collect()
    }

    /// True for a graph with exactly one component; the empty graph is not
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Breadth-first distances from `source` in the graph minus `removed`.
    fn distances_avoiding(&self, source: usize, removed: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.names.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if y != removed && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Lexicographically least shortest path from `u` to `w` avoiding `v`.
    pub fn shortest_path_avoiding_indices(&self, u: usize, w: usize, v: usize) -> Option<Vec<usize>> {
        let to_target = self.distances_avoiding(w, v);
        if to_target[u] == usize::MAX {
            return None;
        }
        let mut path = vec![u];
        let mut x = u;
        while x != w {
            // neighbors are sorted, so the first one on a shortest route is the least
            x = *self.adj[x]
                .iter()
                .find(|&&y| y != v && to_target[y] != usize::MAX && to_target[y] + 1 == to_target[x])
                .expect("distance labels are consistent");
            path.push(x);
        }
        Some(path)
    }

    /// A shortest path from `u` to `w` in the graph with `v` deleted, ties
    /// broken by the lexicographically least vertex sequence. `None` if `v`
    /// separates `u` from `w`.
    pub fn shortest_path_avoiding(
        &self,
        u: &VertexId,
        w: &VertexId,
        v: &VertexId,
    ) -> Result<Option<Vec<VertexId>>> {
        let (ui, wi, vi) = (self.require(u)?, self.require(w)?, self.require(v)?);
        if ui == wi || ui == vi || wi == vi {
            return Err(Error::Precondition(format!(
                "shortest_path_avoiding needs three distinct vertices, got {u}, {w}, {v}"
            )));
        }
        Ok(self
            .shortest_path_avoiding_indices(ui, wi, vi)
            .map(|p| p.into_iter().map(|i| self.names[i].clone()).collect()))
    }

    /// True iff `cycle` visits every vertex exactly once and each cyclically
    /// consecutive pair spans an edge.
    pub fn verify_hamiltonian_cycle(&self, cycle: &CycleWitness) -> bool {
        let seq = cycle.vertices();
        let n = self.names.len();
        if seq.len() < 3 || seq.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut idx = Vec::with_capacity(n);
        for v in seq {
            match self.index_of(v) {
                Some(i) if !seen[i] => {
                    seen[i] = true;
                    idx.push(i);
                }
                _ => return false,
            }
        }
        (0..n).all(|k| self.has_edge_indices(idx[k], idx[(k + 1) % n]))
    }

    /// Entry `k` is the number of complete subgraphs on `k` vertices.
    pub fn clique_counts(&self) -> Result<Vec<u64>> {
        let n = self.names.len();
        if n > CLIQUE_CAPACITY {
            return Err(Error::Capacity { limit: CLIQUE_CAPACITY, actual: n });
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(self.clique_counts_masked(all))
    }

    /// Clique counts of the induced subgraph on the vertices in `mask`.
    /// Requires at most [`CLIQUE_CAPACITY`] vertices.
    pub(crate) fn clique_counts_masked(&self, mask: u64) -> Vec<u64> {
        let masks: Vec<u64> = self
            .adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &j| m | (1u64 << j)))
            .collect();
        let mut counts = vec![1u64];
        extend_cliques(&masks, mask, 0, &mut counts);
        while counts.len() > 1 && counts[counts.len() - 1] == 0 {
            counts.pop();
        }
        counts
    }

    /// Alternating clique sum, the Euler characteristic of A(Γ).
    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(alternating_sum(&self.clique_counts()?))
    }

    pub(crate) fn mask_of(&self, idx: &[usize]) -> u64 {
        idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
    }
}

pub(crate) fn alternating_sum(counts: &[u64]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

fn extend_cliques(masks: &[u64], candidates: u64, size: usize, counts: &mut Vec<u64>) {
    let mut rest = candidates;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if counts.len() <= size + 1 {
            counts.push(0);
        }
        counts[size + 1] += 1;
        let above = if i == 63 { 0 } else { u64::MAX << (i + 1) };
        let next = candidates & masks[i] & above;
        if next != 0 {
            extend_cliques(masks, next, size + 1, counts);
        }
    }
}

/// Parses the line-oriented edge-list format.
///
/// Each nonempty line not starting with `#` holds one token (an isolated
/// vertex) or two tokens (an edge).
pub fn parse_graph(text: &str) -> Result<SimplicialGraph> {
    let mut b = GraphBuilder::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        for t in &tokens {
            if !is_token(t) {
                return Err(parse_err(format!("malformed token `{t}`")));
            }
        }
        match tokens.as_slice() {
            [v] => {
                b.vertex(v).map_err(|e| parse_err(e.to_string()))?;
            }
            [x, y] => {
                if x == y {
                    return Err(parse_err(format!("self-loop at `{x}`")));
                }
                b.edge(x, y).map_err(|e| parse_err(e.to_string()))?;
            }
            _ => {
                return Err(parse_err(format!(
                    "expected one or two tokens, found {}",
                    tokens.len()
                )))
            }
        }
    }
    Ok(b.build())
}

impl FromStr for SimplicialGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}
