//! Cut vertices, bicomponents and the block tree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSubset};

/// Cut vertices and blocks of a graph, by vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `cut[i]` is true iff vertex `i` is a cut vertex.
    pub cut: Vec<bool>,
    /// Blocks as sorted index lists, sorted. Isolated vertices lie in no block.
    pub blocks: Vec<Vec<usize>>,
}

/// Lowpoint depth-first traversal. Works on disconnected graphs too.
pub fn decompose(g: &SimplicialGraph) -> Decomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        let mut vstack = vec![root];
        // (vertex, parent, position in neighbor list)
        let mut frames = vec![(root, UNSEEN, 0usize)];

        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            let nbrs = g.neighbors(v);
            if frame.2 < nbrs.len() {
                let w = nbrs[frame.2];
                frame.2 += 1;
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    vstack.push(w);
                    frames.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            let Some(&(u, _, _)) = frames.last() else { continue };
            low[u] = low[u].min(low[v]);
            if low[v] >= disc[u] {
                if u == root {
                    root_children += 1;
                } else {
                    cut[u] = true;
                }
                let mut block = vec![u];
                while let Some(x) = vstack.pop() {
                    block.push(x);
                    if x == v {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
        if root_children >= 2 {
            cut[root] = true;
        }
    }
    blocks.sort();
    Decomposition { cut, blocks }
}

/// Cut vertices by the definition: deleting the vertex increases the number
/// of components. Quadratic; kept as a reference for the lowpoint code.
pub fn cut_vertices_by_removal(g: &SimplicialGraph) -> Vec<bool> {
    let base = g.component_count();
    (0..g.vertex_count())
        .map(|v| g.component_indices(Some(v)).len() > base)
        .collect()
}

/// Vertices whose removal increases the number of components.
pub fn cut_vertices(g: &SimplicialGraph) -> VertexSubset {
    let d = decompose(g);
    let idx: Vec<usize> = (0..g.vertex_count()).filter(|&i| d.cut[i]).collect();
    g.subset_of_indices(&idx)
}

/// Connected, at least two vertices, no cut vertex. `K₂` is biconnected; a
/// single vertex is not.
pub fn is_biconnected(g: &SimplicialGraph) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(is_biconnected_nonempty(g))
}

pub(crate) fn is_biconnected_nonempty(g: &SimplicialGraph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && !decompose(g).cut.iter().any(|&c| c)
}

fn require_connected_nontrivial(g: &SimplicialGraph, what: &str) -> Result<()> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.vertex_count() < 2 {
        return Err(Error::Precondition(format!("{what} needs at least two vertices")));
    }
    if !g.is_connected() {
        return Err(Error::Precondition(format!("{what} needs a connected graph")));
    }
    Ok(())
}

/// The maximal biconnected induced subgraphs, as vertex sets, sorted.
pub fn bicomponents(g: &SimplicialGraph) -> Result<Vec<VertexSubset>> {
    require_connected_nontrivial(g, "bicomponents")?;
    Ok(decompose(g).blocks.iter().map(|b| g.subset_of_indices(b)).collect())
}

/// Bipartite tree of cut vertices (black) and bicomponents (white).
///
/// Black node `i` is `black[i]`, white node `j` is `white[j]`; `edges` holds
/// `(black, white)` pairs, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTree {
    pub black: Vec<VertexId>,
    pub white: Vec<VertexSubset>,
    pub edges: Vec<(usize, usize)>,
}

impl BlockTree {
    pub fn node_count(&self) -> usize {
        self.black.len() + self.white.len()
    }

    pub fn black_valence(&self, b: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == b).count()
    }

    pub fn white_valence(&self, w: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == w).count()
    }

    /// White neighbors of a black node, in order.
    pub fn whites_of(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == b).map(|e| e.1)
    }

    /// True iff the underlying graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let nb = self.black.len();
        let total = self.node_count();
        if total == 0 || self.edges.len() + 1 != total {
            return false;
        }
        // union-find over black 0..nb, white nb..
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(b, w) in &self.edges {
            let (x, y) = (find(&mut parent, b), find(&mut parent, nb + w));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        true
    }
}

pub fn block_tree(g: &SimplicialGraph) -> Result<BlockTree> {
    require_connected_nontrivial(g, "block_tree")?;
    Ok(block_tree_unchecked(g, &decompose(g)))
}

pub(crate) fn block_tree_unchecked(g: &SimplicialGraph, d: &Decomposition) -> BlockTree {
    let cuts: Vec<usize> = (0..g.vertex_count()).filter(|&i| d.cut[i]).collect();
    let mut edges = Vec::new();
    for (b, &v) in cuts.iter().enumerate() {
        for (w, block) in d.blocks.iter().enumerate() {
            if block.binary_search(&v).is_ok() {
                edges.push((b, w));
            }
        }
    }
    BlockTree {
        black: cuts.iter().map(|&i| g.name(i).clone()).collect(),
        white: d.blocks.iter().map(|b| g.subset_of_indices(b)).collect(),
        edges,
    }
}
