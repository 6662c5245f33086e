//! Free splittings and splittings over ℤ, with checkable witnesses.
//!
//! For three or more vertices, A(Γ) splits over ℤ exactly when Γ is not
//! biconnected. A "yes" comes with an amalgam `A(Γ₁) *_{A(v)} A(Γ₂)` given
//! by two proper induced subgraphs meeting in one vertex. A "no" comes with
//! a cover of every two-edge segment by an induced subgraph carrying a
//! Hamiltonian cycle.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::blocks::{decompose, is_biconnected_nonempty};
use crate::error::{Error, Result};
use crate::graph::{CycleWitness, SimplicialGraph, VertexId, VertexSubset};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZSplit {
    Yes,
    No,
    /// Two vertices: F₂ or ℤ², both HNN-extensions over ℤ.
    HnnSmallCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SmallCaseTag {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "Z^2")]
    Z2,
}

impl SmallCaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SmallCaseTag::Z => "Z",
            SmallCaseTag::F2 => "F2",
            SmallCaseTag::Z2 => "Z^2",
        }
    }
}

/// Two proper induced subgraphs covering Γ and meeting in the single vertex
/// `v`, so that `A(Γ) = A(gamma1) *_{A(v)} A(gamma2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZSplitWitness {
    pub gamma1: VertexSubset,
    pub gamma2: VertexSubset,
    pub v: VertexId,
}

impl ZSplitWitness {
    /// Checks the amalgam conditions against `g`; returns the first violation.
    pub fn validate(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        let all = g.vertex_set();
        if !self.gamma1.is_subset(&all) || !self.gamma2.is_subset(&all) {
            return Err("a side contains vertices outside the graph".into());
        }
        if self.gamma1.union(&self.gamma2) != all {
            return Err("sides do not cover the graph".into());
        }
        let meet = self.gamma1.intersection(&self.gamma2);
        if meet.members() != [self.v.clone()] {
            return Err(format!("sides meet in {meet:?}, expected {{{}}}", self.v));
        }
        if self.gamma1 == all || self.gamma2 == all {
            return Err("a side is not proper".into());
        }
        Ok(())
    }
}

/// A two-edge path `u – v – w`, normalized so that `u < w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
}

impl Segment {
    pub fn new(u: VertexId, v: VertexId, w: VertexId) -> Self {
        if u <= w {
            Segment { u, v, w }
        } else {
            Segment { u: w, v, w: u }
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.u, self.v, self.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverEntry {
    pub delta: VertexSubset,
    pub cycle: CycleWitness,
}

/// One induced subgraph with a Hamiltonian cycle per two-edge segment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NonSplitCover {
    pub entries: BTreeMap<Segment, CoverEntry>,
}

impl NonSplitCover {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Serialize for NonSplitCover {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Item<'a> {
            segment: [&'a VertexId; 3],
            delta: &'a VertexSubset,
            cycle: &'a CycleWitness,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (seg, e) in &self.entries {
            seq.serialize_element(&Item {
                segment: [&seg.u, &seg.v, &seg.w],
                delta: &e.delta,
                cycle: &e.cycle,
            })?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    FreeSplit { parts: [VertexSubset; 2] },
    ZSplit(ZSplitWitness),
    NoSplit { cover: NonSplitCover },
    SmallCase { tag: SmallCaseTag },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub free_split: bool,
    pub z_split: ZSplit,
    pub witness: Witness,
}

/// Free splitting: A(Γ) is freely decomposable iff Γ is disconnected. The
/// partition is the first component against the rest.
pub fn splits_freely(g: &SimplicialGraph) -> Result<(bool, Option<[VertexSubset; 2]>)> {
    if g.vertex_count() < 2 {
        return Err(Error::Precondition(
            "free splitting is decided for graphs with at least two vertices".into(),
        ));
    }
    let comps = g.component_indices(None);
    if comps.len() == 1 {
        return Ok((false, None));
    }
    let first = g.subset_of_indices(&comps[0]);
    let rest = g.vertex_set().difference(&first);
    Ok((true, Some([first, rest])))
}

/// Decides whether A(Γ) splits over ℤ and attaches a witness.
pub fn splits_over_z(g: &SimplicialGraph) -> Result<SplitReport> {
    splits_over_z_with(g, Execution::default())
}

pub fn splits_over_z_with(g: &SimplicialGraph, mode: Execution) -> Result<SplitReport> {
    let free_split = g.vertex_count() >= 2 && !g.is_connected();
    match g.vertex_count() {
        0 => Err(Error::EmptyGraph),
        1 => Ok(SplitReport {
            free_split,
            z_split: ZSplit::No,
            witness: Witness::SmallCase { tag: SmallCaseTag::Z },
        }),
        2 => Ok(SplitReport {
            free_split,
            z_split: ZSplit::HnnSmallCase,
            witness: Witness::SmallCase {
                tag: if g.edge_count() == 1 { SmallCaseTag::Z2 } else { SmallCaseTag::F2 },
            },
        }),
        _ if is_biconnected_nonempty(g) => Ok(SplitReport {
            free_split,
            z_split: ZSplit::No,
            witness: Witness::NoSplit { cover: nonsplit_cover_with(g, mode)? },
        }),
        _ => Ok(SplitReport {
            free_split,
            z_split: ZSplit::Yes,
            witness: Witness::ZSplit(z_split_witness(g)?),
        }),
    }
}

/// The free-splitting witness, when Γ is disconnected.
pub fn free_split_witness(g: &SimplicialGraph) -> Result<Option<Witness>> {
    Ok(splits_freely(g)?.1.map(|parts| Witness::FreeSplit { parts }))
}

/// An amalgam over a vertex group for a non-biconnected graph on at least
/// three vertices.
///
/// Through the least cut vertex `v` when there is one: `gamma1` is `v` plus
/// the first component of `Γ − v`. Otherwise Γ is disconnected: `gamma1` is
/// the first component `C₁` plus the least vertex outside it, and `gamma2` is
/// everything outside `C₁`. If only one vertex `x` lies outside `C₁` the
/// roles swap, giving `{x, min C₁}` and `C₁`.
pub fn z_split_witness(g: &SimplicialGraph) -> Result<ZSplitWitness> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Precondition("z_split_witness needs at least three vertices".into()));
    }
    if is_biconnected_nonempty(g) {
        return Err(Error::Precondition("graph is biconnected; A(Γ) does not split over Z".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let minus = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
    };
    let with = |a: &[usize], x: usize| -> Vec<usize> {
        let mut v = a.to_vec();
        v.push(x);
        v.sort_unstable();
        v
    };

    let d = decompose(g);
    let (side1, side2, v) = if let Some(v) = d.cut.iter().position(|&c| c) {
        let comps = g.component_indices(Some(v));
        let c1 = &comps[0];
        (with(c1, v), minus(&all, c1), v)
    } else {
        let comps = g.component_indices(None);
        let c1 = &comps[0];
        let rest = minus(&all, c1);
        if rest.len() >= 2 {
            (with(c1, rest[0]), rest.clone(), rest[0])
        } else {
            let v = c1[0];
            (with(&rest, v), c1.clone(), v)
        }
    };
    Ok(ZSplitWitness {
        gamma1: g.subset_of_indices(&side1),
        gamma2: g.subset_of_indices(&side2),
        v: g.name(v).clone(),
    })
}

/// All two-edge segments `(u, v, w)` with `u < w`, as index triples.
pub(crate) fn segment_indices(g: &SimplicialGraph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let ns = g.neighbors(v);
        for (k, &u) in ns.iter().enumerate() {
            for &w in &ns[k + 1..] {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// For each segment `u – v – w`, the shortest path ρ from `u` to `w`
/// avoiding `v` closes up to a Hamiltonian cycle `v, u, …ρ…, w` of the
/// subgraph induced on `{v} ∪ ρ`.
pub fn nonsplit_cover(g: &SimplicialGraph) -> Result<NonSplitCover> {
    nonsplit_cover_with(g, Execution::default())
}

pub fn nonsplit_cover_with(g: &SimplicialGraph, mode: Execution) -> Result<NonSplitCover> {
    if g.vertex_count() < 3 || !is_biconnected_nonempty(g) {
        return Err(Error::Precondition(
            "nonsplit_cover needs a biconnected graph with at least three vertices".into(),
        ));
    }
    let segments = segment_indices(g);
    let built = par::map(mode, &segments, |&(u, v, w)| {
        let path = g.shortest_path_avoiding_indices(u, w, v)?;
        let mut cycle_idx = Vec::with_capacity(path.len() + 1);
        cycle_idx.push(v);
        cycle_idx.extend_from_slice(&path);
        let cycle = CycleWitness(cycle_idx.iter().map(|&i| g.name(i).clone()).collect());
        let delta = g.subset_of_indices(&cycle_idx);
        let seg = Segment::new(g.name(u).clone(), g.name(v).clone(), g.name(w).clone());
        Some((seg, CoverEntry { delta, cycle }))
    });
    let mut entries = BTreeMap::new();
    for item in built {
        let (seg, entry) = item.ok_or_else(|| {
            Error::Precondition("a vertex separates two of its neighbors".into())
        })?;
        entries.insert(seg, entry);
    }
    Ok(NonSplitCover { entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverDefect {
    MissingSegment(Segment),
    NotASegment(Segment),
    SmallDelta(Segment),
    DeltaMissesSegment(Segment),
    DeltaOutsideGraph(Segment),
    BadCycle(Segment),
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDefect::MissingSegment(s) => write!(f, "segment {s} is not covered"),
            CoverDefect::NotASegment(s) => write!(f, "key {s} is not a two-edge segment"),
            CoverDefect::SmallDelta(s) => write!(f, "subgraph for {s} has fewer than 3 vertices"),
            CoverDefect::DeltaMissesSegment(s) => write!(f, "subgraph for {s} does not contain it"),
            CoverDefect::DeltaOutsideGraph(s) => write!(f, "subgraph for {s} leaves the graph"),
            CoverDefect::BadCycle(s) => write!(f, "cycle for {s} is not Hamiltonian"),
        }
    }
}

/// Every violation of the two cover conditions, in segment order.
pub fn cover_defects(g: &SimplicialGraph, cover: &NonSplitCover) -> Vec<CoverDefect> {
    let mut defects = Vec::new();
    for (u, v, w) in segment_indices(g) {
        let seg = Segment::new(g.name(u).clone(), g.name(v).clone(), g.name(w).clone());
        if !cover.entries.contains_key(&seg) {
            defects.push(CoverDefect::MissingSegment(seg));
        }
    }
    for (seg, entry) in &cover.entries {
        let is_segment = seg.u != seg.w
            && g.has_edge(&seg.u, &seg.v)
            && g.has_edge(&seg.v, &seg.w);
        if !is_segment {
            defects.push(CoverDefect::NotASegment(seg.clone()));
            continue;
        }
        if entry.delta.len() < 3 {
            defects.push(CoverDefect::SmallDelta(seg.clone()));
            continue;
        }
        if ![&seg.u, &seg.v, &seg.w].iter().all(|x| entry.delta.contains(x)) {
            defects.push(CoverDefect::DeltaMissesSegment(seg.clone()));
            continue;
        }
        match g.induced_subgraph(&entry.delta) {
            Ok(sub) => {
                if !sub.verify_hamiltonian_cycle(&entry.cycle) {
                    defects.push(CoverDefect::BadCycle(seg.clone()));
                }
            }
            Err(_) => defects.push(CoverDefect::DeltaOutsideGraph(seg.clone())),
        }
    }
    defects
}

pub fn verify_cover(g: &SimplicialGraph, cover: &NonSplitCover) -> bool {
    cover_defects(g, cover).is_empty()
}
