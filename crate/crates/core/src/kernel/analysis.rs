//! Conflict bookkeeping over a dense snapshot of an instance. All sets are
//! bit masks over the snapshot; α values are memoised per mask.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::dense::{bit, bits, BitGraph, Mask};
use crate::error::{Error, Result};
use crate::graph::{BridgeTree, Graph, VertexSet};
use crate::independence::mis_size;

use super::pending::{PendingDecomposition, VertexType};

/// Largest chunk size for a given c: 2^c, saturating.
pub(crate) fn chunk_size_limit(c: u32) -> usize {
    if c >= usize::BITS - 1 {
        usize::MAX
    } else {
        1usize << c
    }
}

pub(crate) struct Analysis {
    pub b: BitGraph,
    pub x: Mask,
    pub r: Mask,
    pub chunks: Vec<Mask>,
    pub components: Vec<Mask>,
    alpha: HashMap<Mask, u32>,
}

impl Analysis {
    pub fn new(g: &Graph, x: &VertexSet, c: u32) -> Result<Self> {
        g.check_subset(x)?;
        let b = BitGraph::from_graph(g, "kernel instance")?;
        let xm = b.mask_of(x);
        let r = b.full() & !xm;
        let chunks = independent_subsets(&b.adj, xm, chunk_size_limit(c));
        let components = b.components(r);
        Ok(Analysis {
            b,
            x: xm,
            r,
            chunks,
            components,
            alpha: HashMap::new(),
        })
    }

    pub fn alpha(&mut self, m: Mask) -> u32 {
        if let Some(&a) = self.alpha.get(&m) {
            return a;
        }
        let a = mis_size(&self.b.adj, m);
        self.alpha.insert(m, a);
        a
    }

    pub fn nbr(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, i| acc | self.b.adj[i]) & !m
    }

    pub fn conf(&mut self, rp: Mask, chunk: Mask) -> u32 {
        let blocked = self.nbr(chunk);
        if rp & blocked == 0 {
            return 0;
        }
        self.alpha(rp) - self.alpha(rp & !blocked)
    }

    pub fn degree(&mut self, chunk: Mask) -> usize {
        let comps = self.components.clone();
        comps
            .into_iter()
            .filter(|&c| self.conf(c, chunk) != 0)
            .count()
    }

    pub fn is_free(&mut self, z: Mask) -> bool {
        let chunks = self.chunks.clone();
        chunks.into_iter().all(|ch| self.conf(z, ch) == 0)
    }

    pub fn is_almost_free(&mut self, z: Mask, x: u32) -> bool {
        let (chunks, r) = (self.chunks.clone(), self.r);
        chunks
            .into_iter()
            .all(|ch| self.conf(z, ch) == 0 || self.conf(r, ch) >= x)
    }

    pub fn mask(&self, s: &VertexSet) -> Mask {
        self.b.mask_of(s)
    }

    pub fn set(&self, m: Mask) -> VertexSet {
        self.b.to_set(m)
    }

    pub fn index(&self, v: u32) -> usize {
        self.b.ids.binary_search(&v).expect("vertex in snapshot")
    }

    /// Pending components and types of the tree `t` inside component `comp`.
    pub fn pending(&mut self, comp: Mask, t: &BridgeTree) -> Result<PendingDecomposition> {
        let tm = self.mask(&t.vertices);
        if tm & !comp != 0 || t.vertices.len() != tm.count_ones() as usize {
            return Err(Error::NotATreeOfBridges("tree leaves the component".into()));
        }
        t.validate_in(&self.b.to_graph(comp))?;
        let mut cut = self.b.adj.clone();
        for &(u, v) in &t.edges {
            let (i, j) = (self.index(u), self.index(v));
            cut[i] &= !bit(j);
            cut[j] &= !bit(i);
        }
        let cut = BitGraph {
            adj: cut,
            ids: self.b.ids.clone(),
        };
        let mut pending = BTreeMap::new();
        let mut types = BTreeMap::new();
        for &v in &t.vertices {
            let i = self.index(v);
            let h = cut.component_of(i, comp);
            let t = match self.alpha(h) - self.alpha(h & !bit(i)) {
                0 => VertexType::A,
                1 => VertexType::B,
                d => return Err(Error::Internal(format!("type difference {d} at {v}"))),
            };
            pending.insert(v, self.set(h));
            types.insert(v, t);
        }
        Ok(PendingDecomposition {
            tree: t.clone(),
            pending,
            types,
        })
    }
}

/// Nonempty independent subsets of `x` with at most `limit` elements,
/// ascending by size then lexicographically by index.
pub(crate) fn independent_subsets(adj: &[Mask], x: Mask, limit: usize) -> Vec<Mask> {
    let idx: Vec<usize> = bits(x).collect();
    let mut out = Vec::new();
    for size in 1..=limit.min(idx.len()) {
        for combo in idx.iter().combinations(size) {
            let m = combo.iter().fold(0, |acc, &&i| acc | bit(i));
            if combo.iter().all(|&&i| adj[i] & m == 0) {
                out.push(m);
            }
        }
    }
    out
}
