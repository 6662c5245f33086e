//! Presentations of fundamental groups of graphs of groups, and independent
//! consistency checks on a decomposition: abelianization through an exact
//! Smith normal form, the Euler characteristic identity, and coverage of
//! the generators of A(Γ).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::blocks::decompose;
use crate::error::{Error, Result};
use crate::graph::{alternating_sum, SimplicialGraph, CLIQUE_CAPACITY};
use crate::jsj::{GraphOfGroups, GroupDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, exponent: 1 }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, exponent: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

pub type Word = Vec<Letter>;

/// `[a, b] = a b a⁻¹ b⁻¹`
pub fn commutator(a: usize, b: usize) -> Word {
    vec![Letter::pos(a), Letter::pos(b), Letter::neg(a), Letter::neg(b)]
}

pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: &[Letter]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

/// A finite presentation with named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are freely reduced on the way in; trivial ones are dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(bad) = r.iter().find(|l| l.generator >= n || l.exponent.abs() != 1) {
                return Err(Error::Precondition(format!(
                    "relator letter {bad:?} is invalid for {n} generators"
                )));
            }
            let r = free_reduce(&r);
            if !r.is_empty() {
                kept.push(r);
            }
        }
        Ok(Presentation { generators, relators: kept })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.exponent > 0 { g.clone() } else { format!("{g}^-1") }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Relators by generator name, each replaced by the least cyclic
    /// rotation of itself or its inverse.
    pub fn normalized_relators(&self) -> BTreeSet<Vec<(String, i8)>> {
        self.relators
            .iter()
            .map(|r| {
                let named = |w: &[Letter]| -> Vec<(String, i8)> {
                    w.iter().map(|l| (self.generators[l.generator].clone(), l.exponent)).collect()
                };
                let w = cyclic_reduce(r);
                let inv: Word = w.iter().rev().map(|l| l.inverse()).collect();
                let mut best: Option<Vec<(String, i8)>> = None;
                for base in [&w, &inv] {
                    for k in 0..base.len().max(1) {
                        let mut rot = base[k..].to_vec();
                        rot.extend_from_slice(&base[..k]);
                        let cand = named(&rot);
                        if best.as_ref().is_none_or(|b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                }
                best.unwrap_or_default()
            })
            .collect()
    }

    /// Same generator names and the same set of normalized relators.
    pub fn equivalent_up_to_relator_order(&self, other: &Presentation) -> bool {
        let names = |p: &Presentation| p.generators.iter().cloned().collect::<BTreeSet<_>>();
        names(self) == names(other)
            && self.generators.len() == other.generators.len()
            && self.normalized_relators() == other.normalized_relators()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `⟨ Γ⁰ | [v, w] for each edge vw ⟩`, generators in vertex order.
pub fn raag_presentation(g: &SimplicialGraph) -> Presentation {
    let generators = g.vertices().iter().map(|v| v.to_string()).collect();
    let relators = g.edge_indices().map(|(a, b)| commutator(a, b)).collect();
    Presentation::new(generators, relators).expect("edge indices are generator indices")
}

/// A rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("matrix rows have different lengths".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }
}

/// Nonzero elementary divisors `d₁ | d₂ | …`, all positive.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut a = m.to_nested();
    let (rows, cols) = (m.rows, m.cols);
    let mut divisors = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_abs_entry(&a, t, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let pivot = a[t].clone();
                    for (x, p) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x -= &q * p;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder is smaller than the pivot; move it into place
                let cross = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&a, t, cross).expect("pivot is nonzero");
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    let src = a[i].clone();
                    for (x, y) in a[t][t..].iter_mut().zip(&src[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].abs());
    }
    divisors
}

fn min_abs_entry<I>(a: &[Vec<BigInt>], _t: usize, cells: I) -> Option<(usize, usize)>
where
    I: Iterator<Item = (usize, usize)>,
{
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let v = &a[i][j];
        if v.is_zero() {
            continue;
        }
        let abs = v.abs();
        if best.as_ref().is_none_or(|(_, b)| abs < *b) {
            let done = abs.is_one();
            best = Some(((i, j), abs));
            if done {
                break;
            }
        }
    }
    best.map(|(p, _)| p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_free_of_rank(&self, n: usize) -> bool {
        self.free_rank == n && self.torsion.is_empty()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}])", self.free_rank, t.join(","))
    }
}

/// The relation matrix of exponent sums.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(p.relators.len(), p.generators.len());
    for (i, r) in p.relators.iter().enumerate() {
        let mut sums = vec![0i64; p.generators.len()];
        for l in r {
            sums[l.generator] += i64::from(l.exponent);
        }
        for (j, s) in sums.into_iter().enumerate() {
            if s != 0 {
                m.set(i, j, BigInt::from(s));
            }
        }
    }
    m
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let divisors = smith_normal_form(&relation_matrix(p));
    Abelianization {
        free_rank: p.generators.len() - divisors.len(),
        torsion: divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Presentation of the fundamental group of a graph of groups.
///
/// Every vertex group contributes its generators and commutators. The ends
/// of each edge of a breadth-first spanning tree (rooted at the least vertex
/// id) are identified, which merges generators naming the same vertex of Γ
/// into one symbol. Each remaining edge contributes a stable letter `t` and
/// the relator `t·i₁·t⁻¹·i₂⁻¹`, with `t` named by the edge's stable letter.
pub fn emit_presentation(gog: &GraphOfGroups) -> Result<Presentation> {
    if !gog.is_connected() {
        return Err(Error::Precondition("graph of groups has a disconnected base graph".into()));
    }
    let g = &gog.source;

    // one symbol per (vertex position, generator of its group)
    let mut symbol_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut symbol_name: Vec<usize> = Vec::new();
    let mut position: HashMap<usize, usize> = HashMap::new();
    for (p, x) in gog.vertices.iter().enumerate() {
        position.insert(x.id, p);
        for v in x.group.generators() {
            let vi = g.require(&v)?;
            symbol_of.insert((p, vi), symbol_name.len());
            symbol_name.push(vi);
        }
    }
    let lookup = |p: usize, name: &crate::graph::VertexId| -> Result<usize> {
        let vi = g.require(name)?;
        symbol_of.get(&(p, vi)).copied().ok_or_else(|| {
            Error::Precondition(format!("{name} is not a generator of vertex group {}", gog.vertices[p].group))
        })
    };

    // breadth-first spanning tree from the least id
    let root = (0..gog.vertices.len()).min_by_key(|&p| gog.vertices[p].id).expect("nonempty");
    let mut reached = vec![false; gog.vertices.len()];
    reached[root] = true;
    let mut in_tree = vec![false; gog.edges.len()];
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for (k, e) in gog.edges.iter().enumerate() {
            if e.is_loop() || in_tree[k] {
                continue;
            }
            let (a, b) = (position[&e.ends[0]], position[&e.ends[1]]);
            let y = if a == x { b } else if b == x { a } else { continue };
            if !reached[y] {
                reached[y] = true;
                in_tree[k] = true;
                queue.push_back(y);
            }
        }
    }

    let mut uf = UnionFind((0..symbol_name.len()).collect());
    let mut identifications = Vec::new();
    for (k, e) in gog.edges.iter().enumerate() {
        if in_tree[k] {
            let s0 = lookup(position[&e.ends[0]], &e.inclusion[0])?;
            let s1 = lookup(position[&e.ends[1]], &e.inclusion[1])?;
            uf.union(s0, s1);
            identifications.push((s0, s1));
        }
    }

    // name classes after the least Γ-vertex they carry
    let mut class_label: HashMap<usize, String> = HashMap::new();
    for (s, &v) in symbol_name.iter().enumerate() {
        let r = uf.find(s);
        let name = g.name(v).to_string();
        class_label
            .entry(r)
            .and_modify(|cur| {
                if name < *cur {
                    *cur = name.clone()
                }
            })
            .or_insert(name);
    }
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut roots: Vec<usize> = class_label.keys().copied().collect();
    roots.sort_unstable();
    let mut label_of_root: HashMap<usize, String> = HashMap::new();
    for r in roots {
        let label = fresh(&mut taken, &class_label[&r]);
        label_of_root.insert(r, label);
    }
    let mut stable: Vec<(usize, String)> = Vec::new();
    for (k, e) in gog.edges.iter().enumerate() {
        if !in_tree[k] {
            let base = e.stable_letter.as_ref().map_or_else(|| format!("t{}", e.id), ToString::to_string);
            stable.push((k, fresh(&mut taken, &base)));
        }
    }

    let generators: Vec<String> = taken.iter().cloned().collect();
    let index_of = |label: &str| generators.binary_search_by(|g| g.as_str().cmp(label)).expect("label was registered");
    let mut sym_index = |s: usize| index_of(&label_of_root[&uf.find(s)]);

    let mut relators = Vec::new();
    for (p, x) in gog.vertices.iter().enumerate() {
        if let GroupDescriptor::Raag(span) = &x.group {
            let idx = g.indices_of(span)?;
            for (k, &a) in idx.iter().enumerate() {
                for &b in &idx[k + 1..] {
                    if g.has_edge_indices(a, b) {
                        relators.push(commutator(sym_index(symbol_of[&(p, a)]), sym_index(symbol_of[&(p, b)])));
                    }
                }
            }
        }
    }
    for (s0, s1) in identifications {
        relators.push(vec![Letter::pos(sym_index(s0)), Letter::neg(sym_index(s1))]);
    }
    for (k, label) in &stable {
        let e = &gog.edges[*k];
        let t = index_of(label);
        let i0 = sym_index(lookup(position[&e.ends[0]], &e.inclusion[0])?);
        let i1 = sym_index(lookup(position[&e.ends[1]], &e.inclusion[1])?);
        relators.push(vec![Letter::pos(t), Letter::pos(i0), Letter::neg(t), Letter::neg(i1)]);
    }
    Presentation::new(generators, relators)
}

fn fresh(taken: &mut BTreeSet<String>, base: &str) -> String {
    let mut label = base.to_string();
    let mut k = 2;
    while taken.contains(&label) {
        label = format!("{base}#{k}");
        k += 1;
    }
    taken.insert(label.clone());
    label
}

fn group_euler(g: &SimplicialGraph, group: &GroupDescriptor) -> Result<i64> {
    match group {
        GroupDescriptor::Cyclic(_) => Ok(0),
        GroupDescriptor::Raag(span) => {
            let idx = g.indices_of(span)?;
            Ok(alternating_sum(&g.clique_counts_masked(g.mask_of(&idx))))
        }
    }
}

/// `χ(A(Γ))` equals the sum of the vertex-group characteristics; edge
/// groups are infinite cyclic and contribute zero.
pub fn check_euler(g: &SimplicialGraph, gog: &GraphOfGroups) -> Result<bool> {
    if g.vertex_count() > CLIQUE_CAPACITY {
        return Err(Error::Capacity { limit: CLIQUE_CAPACITY, actual: g.vertex_count() });
    }
    let total = g.euler_characteristic()?;
    let mut sum = 0;
    for x in &gog.vertices {
        sum += group_euler(g, &x.group)?;
    }
    Ok(total == sum)
}

/// Every vertex of Γ appears in a vertex group or as a stable letter, and
/// every edge group is generated by a cut vertex.
pub fn check_coverage(g: &SimplicialGraph, gog: &GraphOfGroups) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut mark = |v: &crate::graph::VertexId| match g.index_of(v) {
        Some(i) => {
            seen[i] = true;
            true
        }
        None => false,
    };
    for x in &gog.vertices {
        for v in x.group.generators() {
            if !mark(&v) {
                return false;
            }
        }
    }
    for v in gog.stable_letters() {
        if !mark(&v) {
            return false;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    let cut = decompose(g).cut;
    gog.edges
        .iter()
        .all(|e| g.index_of(&e.generator).is_some_and(|i| cut[i]))
}
