//! Bitmask view of a graph with at most 64 vertices, used by the exact
//! exponential-time routines. Index `i` corresponds to the `i`-th smallest id.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub type Mask = u64;

pub const MAX_DENSE: usize = 64;

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

/// Indices of the set bits, ascending.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    pub adj: Vec<Mask>,
    pub ids: Vec<Vertex>,
}

impl BitGraph {
    pub fn from_graph(g: &Graph, what: &'static str) -> Result<Self> {
        Self::from_subset(g, &g.vertex_set(), what)
    }

    pub fn from_subset(g: &Graph, s: &VertexSet, what: &'static str) -> Result<Self> {
        if s.len() > MAX_DENSE {
            return Err(Error::CapExceeded {
                what,
                size: s.len(),
                cap: MAX_DENSE,
            });
        }
        g.check_subset(s)?;
        let ids: Vec<Vertex> = s.iter().copied().collect();
        let adj = ids
            .iter()
            .map(|&v| {
                ids.iter()
                    .enumerate()
                    .filter(|(_, w)| g.has_edge(v, **w))
                    .fold(0, |m, (j, _)| m | bit(j))
            })
            .collect();
        Ok(BitGraph { adj, ids })
    }

    /// Graph on indices `0..adj.len()` with ids equal to indices.
    pub fn from_adj(adj: Vec<Mask>) -> Self {
        let ids = (0..adj.len() as Vertex).collect();
        BitGraph { adj, ids }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn full(&self) -> Mask {
        full(self.n())
    }

    pub fn to_set(&self, m: Mask) -> VertexSet {
        bits(m).map(|i| self.ids[i]).collect()
    }

    /// Mask of the members of `s` that are vertices of this view.
    pub fn mask_of(&self, s: &VertexSet) -> Mask {
        self.ids
            .iter()
            .enumerate()
            .filter(|(_, v)| s.contains(v))
            .fold(0, |m, (i, _)| m | bit(i))
    }

    pub fn to_graph(&self, m: Mask) -> Graph {
        let mut g = Graph::with_vertices(bits(m).map(|i| self.ids[i]));
        for i in bits(m) {
            for j in bits(self.adj[i] & m) {
                if i < j {
                    g.add_edge(self.ids[i], self.ids[j]).unwrap();
                }
            }
        }
        g
    }

    pub fn edge_count(&self, m: Mask) -> usize {
        bits(m)
            .map(|i| (self.adj[i] & m).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn component_of(&self, v: usize, m: Mask) -> Mask {
        let mut comp = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0;
            for i in bits(frontier) {
                next |= self.adj[i];
            }
            next &= m & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Components of G[m], ordered by lowest index.
    pub fn components(&self, m: Mask) -> Vec<Mask> {
        let mut rest = m;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn is_connected(&self, m: Mask) -> bool {
        m == 0 || self.component_of(m.trailing_zeros() as usize, m) == m
    }

    pub fn is_forest(&self, m: Mask) -> bool {
        self.edge_count(m) + self.components(m).len() == m.count_ones() as usize
    }

    pub fn has_cycle(&self, m: Mask) -> bool {
        !self.is_forest(m)
    }

    /// Bridges of G[m] as index pairs.
    pub fn bridges(&self, m: Mask) -> Vec<(usize, usize)> {
        let idx: Vec<usize> = bits(m).collect();
        let mut pos = [usize::MAX; 64];
        for (p, &i) in idx.iter().enumerate() {
            pos[i] = p;
        }
        let adj: Vec<Vec<usize>> = idx
            .iter()
            .map(|&i| bits(self.adj[i] & m).map(|j| pos[j]).collect())
            .collect();
        crate::graph::bridges_of_indexed(&adj)
            .into_iter()
            .map(|(a, b)| (idx[a], idx[b]))
            .collect()
    }

    /// Maximal trees of bridges of G[m], ordered by lowest index.
    pub fn bridge_blocks(&self, m: Mask) -> Vec<Mask> {
        let mut forest = vec![0; self.n()];
        for (a, b) in self.bridges(m) {
            forest[a] |= bit(b);
            forest[b] |= bit(a);
        }
        let f = BitGraph {
            adj: forest,
            ids: Vec::new(),
        };
        f.components(m)
    }
}
