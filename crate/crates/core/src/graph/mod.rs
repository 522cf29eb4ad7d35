//! Simple undirected graphs with stable vertex ids and provenance.
//!
//! Ids are never reused: identifying two vertices mints a fresh id whose
//! provenance is the union of the merged ones. Every transforming operation
//! returns a new graph.

mod bridges;
pub mod io;
mod tree;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub(crate) use bridges::bridges_of as bridges_of_indexed;
pub use bridges::{contract_all_bridges, find_bridges, maximal_trees_of_bridges};
pub use tree::{tree_longest_path, BridgeTree};

pub type Vertex = u32;
pub type VertexSet = BTreeSet<Vertex>;
/// Unordered edge, stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);
pub type EdgeSet = BTreeSet<Edge>;

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
    provenance: BTreeMap<Vertex, VertexSet>,
    next_id: Vertex,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on the given ids.
    pub fn with_vertices(ids: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Self::new();
        for v in ids {
            g.add_vertex(v);
        }
        g
    }

    /// Graph on ids `0..n` with the given edges. Panics on self-loops or
    /// out-of-range endpoints; meant for literals in tests and generators.
    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::with_vertices(0..n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("valid edge literal");
        }
        g
    }

    /// Adds an isolated vertex with identity provenance. No-op if present.
    pub fn add_vertex(&mut self, v: Vertex) {
        if self.adj.contains_key(&v) {
            return;
        }
        self.adj.insert(v, VertexSet::new());
        self.provenance.insert(v, VertexSet::from([v]));
        self.next_id = self.next_id.max(v + 1);
    }

    /// Adds an edge between existing vertices; returns whether it was new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {u}")));
        }
        for w in [u, v] {
            if !self.adj.contains_key(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(fresh)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// |V| + |E|, the measure every reduction rule decreases.
    pub fn size(&self) -> usize {
        self.n() + self.m()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges in ascending order, smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Neighbors of `v`; empty for unknown ids.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        static EMPTY: VertexSet = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn provenance(&self, v: Vertex) -> Option<&VertexSet> {
        self.provenance.get(&v)
    }

    /// The id the next identification will mint.
    pub fn next_id(&self) -> Vertex {
        self.next_id
    }

    pub fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|v| !self.has_vertex(**v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// N(S): vertices outside `s` adjacent to some vertex of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .flat_map(|&v| self.neighbors(v).iter().copied())
            .filter(|w| !s.contains(w))
            .collect()
    }

    /// N[v].
    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut s = self.neighbors(v).clone();
        s.insert(v);
        s
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|&v| self.neighbors(v).is_disjoint(s))
    }

    /// G \ S.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| !s.contains(v))
            .map(|(&v, ns)| (v, ns.difference(s).copied().collect()))
            .collect();
        let provenance = self
            .provenance
            .iter()
            .filter(|(v, _)| !s.contains(v))
            .map(|(&v, p)| (v, p.clone()))
            .collect();
        Ok(Graph {
            adj,
            provenance,
            next_id: self.next_id,
        })
    }

    /// G[S].
    pub fn induced(&self, s: &VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let rest: VertexSet = self.vertices().filter(|v| !s.contains(v)).collect();
        self.delete_vertices(&rest)
    }

    pub fn delete_edges(&self, f: &EdgeSet) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in f {
            for w in [u, v] {
                if !g.has_vertex(w) {
                    return Err(Error::UnknownVertex(w));
                }
            }
            if !g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("no edge {{{u},{v}}}")));
            }
            g.adj.get_mut(&u).unwrap().remove(&v);
            g.adj.get_mut(&v).unwrap().remove(&u);
        }
        Ok(g)
    }

    /// Replaces `u` and `v` by a fresh vertex adjacent to N({u,v}).
    /// Returns the new graph and the minted id.
    pub fn identify_vertices(&self, u: Vertex, v: Vertex) -> Result<(Graph, Vertex)> {
        if u == v {
            return Err(Error::InvalidInput(format!(
                "cannot identify {u} with itself"
            )));
        }
        self.contract_set(&VertexSet::from([u, v]))
    }

    /// Merges a vertex set into one fresh vertex (a no-op relabel is not
    /// special-cased: singletons also get a fresh id).
    pub(crate) fn contract_set(&self, s: &VertexSet) -> Result<(Graph, Vertex)> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::InvalidInput("cannot contract an empty set".into()));
        }
        let nbrs = self.neighborhood(s);
        let prov: VertexSet = s
            .iter()
            .flat_map(|v| self.provenance[v].iter().copied())
            .collect();
        let mut g = self.delete_vertices(s)?;
        let w = g.next_id;
        g.next_id += 1;
        g.adj.insert(w, VertexSet::new());
        g.provenance.insert(w, prov);
        for x in nbrs {
            g.adj.get_mut(&x).unwrap().insert(w);
            g.adj.get_mut(&w).unwrap().insert(x);
        }
        Ok((g, w))
    }

    /// Components in ascending order of their smallest id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.component_of(v);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, v: Vertex) -> VertexSet {
        let mut comp = VertexSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.connected_components().len() == self.n()
    }

    /// Proper 2-colouring with the smallest id of each component on side A.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
        for s in self.vertices() {
            if side.contains_key(&s) {
                continue;
            }
            side.insert(s, true);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let sx = side[&x];
                for &y in self.neighbors(x) {
                    match side.get(&y) {
                        Some(&sy) if sy == sx => return None,
                        Some(_) => {}
                        None => {
                            side.insert(y, !sx);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        let a = side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect();
        let b = side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect();
        Some((a, b))
    }
}
