//! Exhaustive sweeps over labeled graphs.
//!
//! Labeled graphs on `n` vertices are indexed by a bitmask over the vertex
//! pairs `(i, j)`, `i < j`, in lexicographic order. Sweeps fan out across
//! masks and fold into order-independent tallies.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::blocks::is_biconnected_nonempty;
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::jsj::jsj;
use crate::par::{self, Execution};
use crate::splitting::{splits_over_z_with, ZSplit};

/// Largest `n` for internal enumeration (2^28 graphs).
pub const MAX_ENUMERATION: usize = 8;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled graph on `v0..v{n-1}` whose edges are the set bits of `mask`.
pub fn labeled_graph(n: usize, mask: u64) -> SimplicialGraph {
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let edges = pairs.enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| p);
    SimplicialGraph::labeled(n, edges).expect("pairs are in range and loop-free")
}

fn check_size(n: usize) -> Result<u64> {
    if n > MAX_ENUMERATION {
        return Err(Error::Capacity { limit: MAX_ENUMERATION, actual: n });
    }
    Ok(1u64 << pair_count(n))
}

/// Counters from one sweep. Graph masks that fail are kept (first 32).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sweep {
    pub checked: u64,
    pub failures: u64,
    pub examples: Vec<u64>,
}

impl Sweep {
    fn merge(mut self, other: Sweep) -> Sweep {
        self.checked += other.checked;
        self.failures += other.failures;
        self.examples.extend(other.examples);
        self.examples.sort_unstable();
        self.examples.truncate(32);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `check` on every connected labeled graph on `n` vertices.
pub fn sweep_connected<F>(n: usize, mode: Execution, check: F) -> Result<Sweep>
where
    F: Fn(&SimplicialGraph) -> bool + Sync + Send,
{
    let total = check_size(n)?;
    Ok(par::map_reduce(
        mode,
        0..total,
        Sweep::default,
        |mask| {
            let g = labeled_graph(n, mask);
            if !g.is_connected() {
                return Sweep::default();
            }
            let ok = check(&g);
            Sweep {
                checked: 1,
                failures: u64::from(!ok),
                examples: if ok { vec![] } else { vec![mask] },
            }
        },
        Sweep::merge,
    ))
}

/// Connected and biconnected counts by the definitions alone: union-find
/// connectivity, and deletion of each vertex in turn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub connected: u64,
    pub biconnected: u64,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Component count of `g` with `skip` deleted, by union-find over the edges.
fn oracle_components(g: &SimplicialGraph, skip: Option<usize>) -> usize {
    let n = g.vertex_count();
    let mut dsu = Dsu((0..n).collect());
    let mut count = n - usize::from(skip.is_some());
    for (a, b) in g.edge_indices() {
        if Some(a) == skip || Some(b) == skip {
            continue;
        }
        let (ra, rb) = (dsu.find(a), dsu.find(b));
        if ra != rb {
            dsu.0[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// `(connected, biconnected)` by the removal definition.
pub fn oracle_connectivity(g: &SimplicialGraph) -> (bool, bool) {
    let n = g.vertex_count();
    let connected = n >= 1 && oracle_components(g, None) == 1;
    let biconnected = connected && n >= 2 && (0..n).all(|v| oracle_components(g, Some(v)) <= 1);
    (connected, biconnected)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub graphs: u64,
    pub connected: u64,
    #[serde(rename = "splits_over_Z")]
    pub splits_over_z: u64,
    pub biconnected: u64,
    /// Number of edges of the JSJ decomposition → number of graphs.
    pub jsj_edge_histogram: BTreeMap<usize, u64>,
    pub oracle: OracleCounts,
    /// Graphs where the splitting verdict and the removal oracle disagree.
    pub disagreements: u64,
}

impl CensusRow {
    pub fn empty(n: usize) -> Self {
        CensusRow { n, ..Default::default() }
    }

    /// Tally of a single graph.
    pub fn of_graph(g: &SimplicialGraph) -> Self {
        let n = g.vertex_count();
        let mut row = CensusRow::empty(n);
        row.graphs = 1;
        let (oracle_connected, oracle_biconnected) = oracle_connectivity(g);
        row.oracle.connected = u64::from(oracle_connected);
        row.oracle.biconnected = u64::from(oracle_biconnected && n >= 3);
        if !g.is_connected() {
            row.disagreements = u64::from(oracle_connected);
            return row;
        }
        row.connected = 1;
        if n < 3 {
            return row;
        }
        let biconnected = is_biconnected_nonempty(g);
        let splits = match splits_over_z_with(g, Execution::Sequential) {
            Ok(report) => report.z_split == ZSplit::Yes,
            Err(_) => {
                row.disagreements = 1;
                return row;
            }
        };
        row.biconnected = u64::from(biconnected);
        row.splits_over_z = u64::from(splits);
        row.disagreements = u64::from(splits == oracle_biconnected || !oracle_connected);
        if let Ok(j) = jsj(g) {
            row.jsj_edge_histogram.insert(j.edges.len(), 1);
        }
        row
    }

    /// Adds `other` into `self`. Rows for different `n` merge their counts.
    pub fn merge(mut self, other: CensusRow) -> CensusRow {
        self.graphs += other.graphs;
        self.connected += other.connected;
        self.splits_over_z += other.splits_over_z;
        self.biconnected += other.biconnected;
        self.oracle.connected += other.oracle.connected;
        self.oracle.biconnected += other.oracle.biconnected;
        self.disagreements += other.disagreements;
        for (k, c) in other.jsj_edge_histogram {
            *self.jsj_edge_histogram.entry(k).or_insert(0) += c;
        }
        self
    }

    /// The fast-path totals agree with the oracle recount, every verdict
    /// agreed with the oracle, and (for `n ≥ 3`) splits + biconnected =
    /// connected.
    pub fn consistent(&self) -> bool {
        self.disagreements == 0
            && self.oracle.connected == self.connected
            && (self.n < 3
                || (self.oracle.biconnected == self.biconnected
                    && self.splits_over_z + self.biconnected == self.connected))
    }
}

/// Census over all labeled graphs on `n` vertices.
pub fn census_row(n: usize, mode: Execution) -> Result<CensusRow> {
    let total = check_size(n)?;
    Ok(par::map_reduce(
        mode,
        0..total,
        || CensusRow::empty(n),
        |mask| CensusRow::of_graph(&labeled_graph(n, mask)),
        CensusRow::merge,
    ))
}

/// Census over a stream of graphs, one row per vertex count seen.
pub fn census_of<I: IntoIterator<Item = SimplicialGraph>>(graphs: I) -> BTreeMap<usize, CensusRow> {
    let mut rows: BTreeMap<usize, CensusRow> = BTreeMap::new();
    for g in graphs {
        let row = CensusRow::of_graph(&g);
        let n = row.n;
        let acc = rows.remove(&n).unwrap_or_else(|| CensusRow::empty(n));
        rows.insert(n, acc.merge(row));
    }
    rows
}
