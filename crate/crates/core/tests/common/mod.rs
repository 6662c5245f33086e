//! Brute-force oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.
#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use raag_core::SimplicialGraph;

/// Adjacency matrix of `g`, built from its edge list.
pub fn adjacency(g: &SimplicialGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in g.edge_indices() {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

/// Components of the graph with the vertices in `removed` deleted, by
/// repeated flood fill over the adjacency matrix.
pub fn component_count(adj: &[Vec<bool>], removed: &[usize]) -> usize {
    let n = adj.len();
    let mut seen: Vec<bool> = (0..n).map(|i| removed.contains(&i)).collect();
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if adj[x][y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

pub fn brute_cut_vertices(g: &SimplicialGraph) -> Vec<usize> {
    let adj = adjacency(g);
    let base = component_count(&adj, &[]);
    (0..adj.len()).filter(|&v| component_count(&adj, &[v]) > base).collect()
}

pub fn brute_biconnected(g: &SimplicialGraph) -> bool {
    let adj = adjacency(g);
    let n = adj.len();
    n >= 2 && component_count(&adj, &[]) == 1 && (0..n).all(|v| component_count(&adj, &[v]) <= 1)
}

/// Breadth-first distance in the graph minus `removed`.
pub fn bfs_distance(adj: &[Vec<bool>], from: usize, to: usize, removed: usize) -> Option<usize> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(x) = q.pop_front() {
        for y in 0..n {
            if adj[x][y] && y != removed && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    (dist[to] != usize::MAX).then_some(dist[to])
}

/// Clique counts by checking every vertex subset.
pub fn brute_clique_counts(g: &SimplicialGraph) -> Vec<u64> {
    let adj = adjacency(g);
    let n = adj.len();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let complete = members
            .iter()
            .enumerate()
            .all(|(k, &a)| members[k + 1..].iter().all(|&b| adj[a][b]));
        if complete {
            counts[members.len()] += 1;
        }
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts
}

/// Every labeled graph on `n` vertices, built from edge bitmasks.
pub fn all_graphs(n: usize) -> impl Iterator<Item = SimplicialGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
        SimplicialGraph::labeled(n, edges).unwrap()
    })
}

pub fn all_connected_graphs(n: usize) -> impl Iterator<Item = SimplicialGraph> {
    all_graphs(n).filter(|g| component_count(&adjacency(g), &[]) == 1)
}

/// Random labeled graphs with `lo..=hi` vertices and edge density around 1/2.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = SimplicialGraph> {
    (lo..=hi).prop_flat_map(|n| {
        let m = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p);
            SimplicialGraph::labeled(n, edges).unwrap()
        })
    })
}

pub fn arb_connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = SimplicialGraph> {
    arb_graph(lo, hi).prop_filter("connected", |g| component_count(&adjacency(g), &[]) == 1)
}
