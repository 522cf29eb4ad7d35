use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{edge, find_bridges, EdgeSet, Graph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A subtree of a host graph all of whose edges are bridges of the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeTree {
    pub vertices: VertexSet,
    pub edges: EdgeSet,
}

impl BridgeTree {
    pub fn single(v: Vertex) -> Self {
        BridgeTree {
            vertices: VertexSet::from([v]),
            edges: EdgeSet::new(),
        }
    }

    /// The subtree of `g` induced by `vertices` (which must span a tree of
    /// bridges of `g`).
    pub fn induced_in(g: &Graph, vertices: &VertexSet) -> Result<Self> {
        let edges = vertices
            .iter()
            .flat_map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(move |&&w| v < w && vertices.contains(&w))
                    .map(move |&w| (v, w))
            })
            .collect();
        let t = BridgeTree {
            vertices: vertices.clone(),
            edges,
        };
        t.validate_in(g)?;
        Ok(t)
    }

    pub fn as_graph(&self) -> Graph {
        let mut g = Graph::with_vertices(self.vertices.iter().copied());
        for &(u, v) in &self.edges {
            g.add_edge(u, v).expect("tree edges join tree vertices");
        }
        g
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut d: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in &self.edges {
            *d.get_mut(&a).unwrap() += 1;
            *d.get_mut(&b).unwrap() += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    /// Vertices of degree exactly one.
    pub fn leaves(&self) -> VertexSet {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// The unique neighbour of a leaf.
    pub fn parent(&self, leaf: Vertex) -> Option<Vertex> {
        let ns = self.neighbors(leaf);
        (ns.len() == 1).then(|| *ns.first().unwrap())
    }

    /// Number of edges on a longest path.
    pub fn diameter(&self) -> usize {
        match self.vertices.first() {
            None => 0,
            Some(_) => tree_longest_path(&self.as_graph())
                .map(|p| p.len() - 1)
                .unwrap_or(0),
        }
    }

    /// Checks the tree shape and that every edge is a bridge of `g`.
    pub fn validate_in(&self, g: &Graph) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::NotATreeOfBridges("empty vertex set".into()));
        }
        g.check_subset(&self.vertices)?;
        let as_graph = self.as_graph();
        if !(as_graph.is_connected() && as_graph.is_forest()) {
            return Err(Error::NotATreeOfBridges("edges do not form a tree".into()));
        }
        let bridges = find_bridges(g);
        if let Some(e) = self.edges.iter().find(|e| !bridges.contains(e)) {
            return Err(Error::NotATreeOfBridges(format!("{e:?} is not a bridge")));
        }
        Ok(())
    }

    /// The subtree spanned by a vertex path of this tree.
    pub fn path_subtree(path: &[Vertex]) -> Self {
        BridgeTree {
            vertices: path.iter().copied().collect(),
            edges: path.windows(2).map(|w| edge(w[0], w[1])).collect(),
        }
    }
}

fn bfs_dist(t: &Graph, s: Vertex) -> BTreeMap<Vertex, usize> {
    let mut dist = BTreeMap::from([(s, 0)]);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for &y in t.neighbors(x) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// A longest path of a tree, as a vertex sequence starting at the smaller
/// endpoint. Among diameter paths the lexicographically smallest endpoint
/// pair wins (the path between two tree vertices is unique).
pub fn tree_longest_path(t: &Graph) -> Result<Vec<Vertex>> {
    if t.is_empty() || !t.is_connected() || !t.is_forest() {
        return Err(Error::InvalidInput("not a tree".into()));
    }
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    for a in t.vertices() {
        for (&b, &d) in bfs_dist(t, a).range(a..) {
            let better = match best {
                None => true,
                Some((bd, ..)) => d > bd,
            };
            if better {
                best = Some((d, a, b));
            }
        }
    }
    let (_, a, b) = best.unwrap();
    // walk back from b towards a
    let from_a = bfs_dist(t, a);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = *t
            .neighbors(cur)
            .iter()
            .find(|w| from_a[w] + 1 == from_a[&cur])
            .unwrap();
        path.push(cur);
    }
    path.reverse();
    Ok(path)
}
