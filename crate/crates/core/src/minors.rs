//! Necklace and triangle-path minors: patterns, exhaustive model search,
//! packing and hitting numbers, and the conversion of a necklace model into
//! a triangle-path model of half the length.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dense::{bit, bits, BitGraph, Mask};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default vertex cap for the exhaustive minor searches.
pub const MINOR_CAP: usize = 10;

/// A loopless multigraph on vertices 0..vertices; parallel edges are
/// repeated entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultigraphPattern {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultigraphPattern {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(x, y) in &edges {
            if x == y {
                return Err(Error::InvalidInput(format!("pattern loop at {x}")));
            }
            if x >= vertices || y >= vertices {
                return Err(Error::InvalidInput(format!(
                    "pattern edge ({x},{y}) out of range"
                )));
            }
        }
        Ok(MultigraphPattern { vertices, edges })
    }

    /// Required edge count per unordered pattern pair.
    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &(x, y) in &self.edges {
            *m.entry((x.min(y), x.max(y))).or_insert(0) += 1;
        }
        m
    }
}

/// N_t: t+1 vertices with a doubled edge between consecutive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NecklacePattern {
    pub t: usize,
}

impl NecklacePattern {
    pub fn pattern(&self) -> MultigraphPattern {
        let edges = (0..self.t).flat_map(|i| [(i, i + 1), (i, i + 1)]).collect();
        MultigraphPattern {
            vertices: self.t + 1,
            edges,
        }
    }
}

pub fn make_necklace(t: usize) -> NecklacePattern {
    NecklacePattern { t }
}

/// The triangle-path of length t as a pattern; vertex 3i is a_{i+1},
/// 3i+1 is b_{i+1} and 3i+2 is c_{i+1}.
pub fn triangle_path_pattern(t: usize) -> MultigraphPattern {
    let mut edges = Vec::new();
    for i in 0..t {
        let (a, b, c) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges.extend([(a, b), (b, c), (a, c)]);
        if i + 1 < t {
            edges.push((b, 3 * (i + 1)));
        }
    }
    MultigraphPattern {
        vertices: 3 * t,
        edges,
    }
}

/// Branch sets indexed by pattern vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    pub fn vertex_set(&self) -> VertexSet {
        self.branch_sets.iter().flatten().copied().collect()
    }
}

/// Checks a model directly against the definition: nonempty pairwise
/// disjoint connected branch sets, with at least as many edges between
/// two branch sets as the pattern has between their vertices.
pub fn validate_model(g: &Graph, pattern: &MultigraphPattern, model: &MinorModel) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidInput(format!("invalid model: {msg}")));
    if model.branch_sets.len() != pattern.vertices {
        return bad(format!(
            "{} branch sets for {} pattern vertices",
            model.branch_sets.len(),
            pattern.vertices
        ));
    }
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, s) in model.branch_sets.iter().enumerate() {
        g.check_subset(s)?;
        if s.is_empty() {
            return bad(format!("branch set {i} is empty"));
        }
        for &v in s {
            if let Some(j) = owner.insert(v, i) {
                return bad(format!("vertex {v} in branch sets {j} and {i}"));
            }
        }
        if !g.induced(s)?.is_connected() {
            return bad(format!("branch set {i} is not connected"));
        }
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (u, v) in g.edges() {
        if let (Some(&i), Some(&j)) = (owner.get(&u), owner.get(&v)) {
            if i != j {
                *counts.entry((i.min(j), i.max(j))).or_insert(0) += 1;
            }
        }
    }
    for (pair, need) in pattern.multiplicities() {
        let have = counts.get(&pair).copied().unwrap_or(0);
        if have < need {
            return bad(format!(
                "{have} edges between branch sets {pair:?}, need {need}"
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorResult {
    pub value: usize,
    /// A model of the extremal pattern; empty when the value is zero.
    pub model: MinorModel,
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what,
            size: g.n(),
            cap,
        });
    }
    Ok(())
}

/// Submasks of `m` in increasing numeric order, excluding 0.
fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut s: Mask = 0;
    std::iter::from_fn(move || {
        s = (s | !m).wrapping_add(1) & m;
        (s != 0).then_some(s)
    })
}

/// Mask-level search context shared by the minor searches.
struct Dense {
    b: BitGraph,
    connected: Vec<bool>,
    chain_memo: HashMap<(Mask, Mask), u32>,
    tp_memo: HashMap<(Mask, Mask), u32>,
}

impl Dense {
    fn new(g: &Graph, cap: usize, what: &'static str) -> Result<Self> {
        check_cap(g, cap, what)?;
        let b = BitGraph::from_graph(g, what)?;
        let connected = (0..1u64 << b.n())
            .map(|m| m != 0 && b.is_connected(m))
            .collect();
        Ok(Dense {
            b,
            connected,
            chain_memo: HashMap::new(),
            tp_memo: HashMap::new(),
        })
    }

    fn between(&self, x: Mask, y: Mask) -> u32 {
        bits(x).map(|v| (self.b.adj[v] & y).count_ones()).sum()
    }

    fn neighbours(&self, x: Mask) -> Mask {
        bits(x).fold(0, |acc, v| acc | self.b.adj[v]) & !x
    }

    fn conn(&self, m: Mask) -> bool {
        self.connected[m as usize]
    }

    /// Longest extension of a necklace chain ending in `last` inside `avail`,
    /// counted in additional branch sets.
    fn chain(&mut self, last: Mask, avail: Mask) -> u32 {
        if let Some(&v) = self.chain_memo.get(&(last, avail)) {
            return v;
        }
        let mut best = 0;
        if self.neighbours(last) & avail != 0 {
            for s in submasks(avail) {
                if self.conn(s) && self.between(last, s) >= 2 {
                    best = best.max(1 + self.chain(s, avail & !s));
                }
            }
        }
        self.chain_memo.insert((last, avail), best);
        best
    }

    fn nm(&mut self) -> (u32, Vec<Mask>) {
        let full = self.b.full();
        let mut best: Option<(u32, Mask)> = None;
        for s in submasks(full) {
            if self.conn(s) {
                let len = self.chain(s, full & !s);
                if best.is_none_or(|(b, _)| len > b) {
                    best = Some((len, s));
                }
            }
        }
        let Some((len, first)) = best else {
            return (0, Vec::new());
        };
        if len == 0 {
            return (0, Vec::new());
        }
        let mut sets = vec![first];
        let mut avail = full & !first;
        let mut need = len;
        while need > 0 {
            let last = *sets.last().unwrap();
            let next = submasks(avail)
                .find(|&s| {
                    self.conn(s)
                        && self.between(last, s) >= 2
                        && 1 + self.chain(s, avail & !s) == need
                })
                .expect("chain values are consistent");
            sets.push(next);
            avail &= !next;
            need -= 1;
        }
        (len, sets)
    }

    /// Vertex sets of all N_t models (unions of their t+1 branch sets).
    fn necklace_supports(&mut self, t: usize) -> HashSet<Mask> {
        let full = self.b.full();
        let mut out = HashSet::new();
        let mut seen = HashSet::new();
        for s in submasks(full) {
            if self.conn(s) {
                self.collect(s, s, t as u32, &mut out, &mut seen);
            }
        }
        out
    }

    fn collect(
        &mut self,
        last: Mask,
        used: Mask,
        remaining: u32,
        out: &mut HashSet<Mask>,
        seen: &mut HashSet<(Mask, Mask, u32)>,
    ) {
        if remaining == 0 {
            out.insert(used);
            return;
        }
        if !seen.insert((last, used, remaining)) {
            return;
        }
        let avail = self.b.full() & !used;
        if self.chain(last, avail) < remaining {
            return;
        }
        for s in submasks(avail) {
            if self.conn(s) && self.between(last, s) >= 2 {
                self.collect(s, used | s, remaining - 1, out, seen);
            }
        }
    }

    fn acyclic(&self, m: Mask) -> bool {
        self.b.is_forest(m)
    }

    /// Most triangles that can follow a triangle whose b-set is `prev_b`
    /// (0 for the first triangle) inside `avail`.
    fn triangles(&mut self, avail: Mask, prev_b: Mask) -> u32 {
        if avail.count_ones() < 3 || self.acyclic(avail) {
            return 0;
        }
        if prev_b != 0 && self.neighbours(prev_b) & avail == 0 {
            return 0;
        }
        if let Some(&v) = self.tp_memo.get(&(avail, prev_b)) {
            return v;
        }
        let bound = avail.count_ones() / 3;
        let mut best = 0;
        'search: for a in submasks(avail) {
            if !self.conn(a) || (prev_b != 0 && self.between(prev_b, a) == 0) {
                continue;
            }
            let na = self.neighbours(a);
            for b in submasks(avail & !a) {
                if b & na == 0 || !self.conn(b) {
                    continue;
                }
                let nab = na & self.neighbours(b);
                for c in submasks(avail & !a & !b) {
                    if c & nab == 0
                        || self.between(a, c) == 0
                        || self.between(b, c) == 0
                        || !self.conn(c)
                    {
                        continue;
                    }
                    let v = 1 + self.triangles(avail & !(a | b | c), b);
                    if v > best {
                        best = v;
                        if best == bound {
                            break 'search;
                        }
                    }
                }
            }
        }
        self.tp_memo.insert((avail, prev_b), best);
        best
    }

    fn tpm(&mut self) -> (u32, Vec<Mask>) {
        let full = self.b.full();
        let len = self.triangles(full, 0);
        let mut sets = Vec::new();
        let (mut avail, mut prev_b, mut need) = (full, 0, len);
        while need > 0 {
            let mut found = None;
            'find: for a in submasks(avail) {
                if !self.conn(a) || (prev_b != 0 && self.between(prev_b, a) == 0) {
                    continue;
                }
                for b in submasks(avail & !a) {
                    if !self.conn(b) || self.between(a, b) == 0 {
                        continue;
                    }
                    for c in submasks(avail & !a & !b) {
                        if self.conn(c)
                            && self.between(a, c) > 0
                            && self.between(b, c) > 0
                            && 1 + self.triangles(avail & !(a | b | c), b) >= need
                        {
                            found = Some((a, b, c));
                            break 'find;
                        }
                    }
                }
            }
            let (a, b, c) = found.expect("triangle values are consistent");
            sets.extend([a, b, c]);
            avail &= !(a | b | c);
            prev_b = b;
            need -= 1;
        }
        (len, sets)
    }

    fn model(&self, sets: &[Mask]) -> MinorModel {
        MinorModel {
            branch_sets: sets.iter().map(|&m| self.b.to_set(m)).collect(),
        }
    }
}

/// nm(G): the longest necklace minor, with a model of it.
pub fn necklace_minor_length(g: &Graph) -> Result<MinorResult> {
    necklace_minor_length_with_cap(g, MINOR_CAP)
}

pub fn necklace_minor_length_with_cap(g: &Graph, cap: usize) -> Result<MinorResult> {
    let mut d = Dense::new(g, cap, "necklace minor search")?;
    let (len, sets) = d.nm();
    Ok(MinorResult {
        value: len as usize,
        model: d.model(&sets),
    })
}

/// tpm(G): the longest triangle-path minor, with a model of it.
pub fn triangle_path_minor_length(g: &Graph) -> Result<MinorResult> {
    triangle_path_minor_length_with_cap(g, MINOR_CAP)
}

pub fn triangle_path_minor_length_with_cap(g: &Graph, cap: usize) -> Result<MinorResult> {
    let mut d = Dense::new(g, cap, "triangle-path minor search")?;
    let (len, sets) = d.tpm();
    Ok(MinorResult {
        value: len as usize,
        model: d.model(&sets),
    })
}

/// Model vertex sets closed upwards: `has[U]` iff G[U] contains an N_t model.
fn containment(d: &mut Dense, t: usize) -> Vec<bool> {
    let supports = d.necklace_supports(t);
    let size = 1usize << d.b.n();
    let mut has = vec![false; size];
    for m in 0..size {
        let m = m as Mask;
        has[m as usize] = supports.contains(&m) || bits(m).any(|v| has[(m & !bit(v)) as usize]);
    }
    has
}

/// ν: the maximum number of vertex-disjoint N_t models.
pub fn necklace_packing(g: &Graph, t: usize) -> Result<usize> {
    let mut d = Dense::new(g, MINOR_CAP, "necklace packing")?;
    let supports: Vec<Mask> = {
        let mut s: Vec<Mask> = d.necklace_supports(t).into_iter().collect();
        s.sort_unstable();
        s
    };
    let mut memo = HashMap::new();
    Ok(pack(d.b.full(), &supports, &mut memo) as usize)
}

fn pack(avail: Mask, supports: &[Mask], memo: &mut HashMap<Mask, u32>) -> u32 {
    if avail == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let low = avail & avail.wrapping_neg();
    // either the lowest vertex is unused, or some model through it is taken
    let mut best = pack(avail & !low, supports, memo);
    for &s in supports {
        if s & low != 0 && s & !avail == 0 {
            best = best.max(1 + pack(avail & !s, supports, memo));
        }
    }
    memo.insert(avail, best);
    best
}

/// τ: the fewest vertices whose deletion leaves no N_t model.
pub fn necklace_hitting(g: &Graph, t: usize) -> Result<usize> {
    let mut d = Dense::new(g, MINOR_CAP, "necklace hitting")?;
    let has = containment(&mut d, t);
    let full = d.b.full();
    let best = (0..=full)
        .filter(|&x| x & !full == 0 && !has[(full & !x) as usize])
        .map(|x| x.count_ones() as usize)
        .min()
        .unwrap_or(0);
    Ok(best)
}

/// Splits the connected set `s` into two connected parts holding `x` and
/// `y` respectively, by cutting a BFS tree on its x–y path.
fn split(g: &Graph, s: &VertexSet, x: Vertex, y: Vertex) -> (VertexSet, VertexSet) {
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = VecDeque::from([x]);
    parent.insert(x, x);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if s.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    // the child of x on the tree path towards y roots the cut-off subtree
    let mut w = y;
    while parent[&w] != x {
        w = parent[&w];
    }
    let under_w = |mut v: Vertex| loop {
        if v == w {
            return true;
        }
        if v == x {
            return false;
        }
        v = parent[&v];
    };
    let (b, a): (VertexSet, VertexSet) = s.iter().partition(|&&v| under_w(v));
    (a, b)
}

fn edges_between(g: &Graph, s: &VertexSet, t: &VertexSet) -> Vec<(Vertex, Vertex)> {
    let mut out: Vec<(Vertex, Vertex)> = s
        .iter()
        .flat_map(|&u| {
            g.neighbors(u)
                .iter()
                .filter(|w| t.contains(w))
                .map(move |&w| (u, w))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Turns an N_t model into a model of the triangle-path of length
/// ⌊(t+1)/2⌋. Each consecutive pair (S_{2i−1}, S_{2i}) becomes one
/// triangle: with e1 = {u1,v1} and e2 = {u2,v2} the first two edges between
/// them, S_{2i−1} is split between u1 and u2 when these differ, and S_{2i}
/// between v1 and v2 otherwise.
pub fn necklace_model_to_triangle_path(g: &Graph, model: &MinorModel) -> Result<MinorModel> {
    if model.branch_sets.is_empty() {
        return Err(Error::InvalidInput(
            "a necklace model has at least one branch set".into(),
        ));
    }
    let t = model.branch_sets.len() - 1;
    validate_model(g, &make_necklace(t).pattern(), model)?;
    let sets = &model.branch_sets;
    let length = t.div_ceil(2);
    // (left parts, right parts) per triangle
    let mut blocks: Vec<(Vec<VertexSet>, Vec<VertexSet>)> = Vec::new();
    for i in 0..length {
        let (s, r) = (&sets[2 * i], &sets[2 * i + 1]);
        let e = edges_between(g, s, r);
        let ((u1, v1), (u2, v2)) = (e[0], e[1]);
        if u1 != u2 {
            let (a1, a2) = split(g, s, u1, u2);
            blocks.push((vec![a1, a2], vec![r.clone()]));
        } else {
            let (a1, a2) = split(g, r, v1, v2);
            blocks.push((vec![s.clone()], vec![a1, a2]));
        }
    }
    let part_with =
        |parts: &[VertexSet], v: Vertex| parts.iter().position(|p| p.contains(&v)).unwrap();
    let mut out = Vec::new();
    for i in 0..length {
        let (left, right) = &blocks[i];
        let a = if i == 0 {
            0
        } else {
            let (_, q) = edges_between(g, &sets[2 * i - 1], &sets[2 * i])[0];
            part_with(left, q)
        };
        let b = if i + 1 < length {
            let (p, _) = edges_between(g, &sets[2 * i + 1], &sets[2 * i + 2])[0];
            part_with(right, p)
        } else {
            0
        };
        let mut parts: Vec<(bool, usize)> = (0..left.len()).map(|j| (true, j)).collect();
        parts.extend((0..right.len()).map(|j| (false, j)));
        let c = parts
            .iter()
            .find(|&&p| p != (true, a) && p != (false, b))
            .copied()
            .unwrap();
        let get = |(is_left, j): (bool, usize)| {
            if is_left {
                left[j].clone()
            } else {
                right[j].clone()
            }
        };
        out.extend([get((true, a)), get((false, b)), get(c)]);
    }
    let converted = MinorModel { branch_sets: out };
    validate_model(g, &triangle_path_pattern(length), &converted)
        .map_err(|e| Error::Internal(format!("converted model fails validation: {e}")))?;
    Ok(converted)
}
