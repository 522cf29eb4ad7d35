//! Bipartite maximum matching and alternating-path reachability.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, Graph, Vertex, VertexSet};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: EdgeSet,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn saturated(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Checks that (A, B) partitions V(G) and every edge crosses it.
pub fn check_bipartition(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    if !a.is_disjoint(b) {
        return Err(Error::InvalidBipartition("sides overlap".into()));
    }
    if a.len() + b.len() != g.n() || a.iter().chain(b).any(|v| !g.has_vertex(*v)) {
        return Err(Error::InvalidBipartition(
            "sides do not cover the vertex set".into(),
        ));
    }
    if let Some((u, v)) = g.edges().find(|(u, v)| a.contains(u) == a.contains(v)) {
        return Err(Error::InvalidBipartition(format!(
            "edge {{{u},{v}}} inside one side"
        )));
    }
    Ok(())
}

/// Maximum matching by augmenting paths, scanning A and neighbour lists in
/// ascending id order.
pub fn bipartite_maximum_matching(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Matching> {
    check_bipartition(g, a, b)?;
    let mut mate: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &s in a {
        let mut visited = VertexSet::new();
        augment(g, s, &mut mate, &mut visited);
    }
    let edges = mate
        .iter()
        .filter(|(x, _)| a.contains(x))
        .map(|(&x, &y)| edge(x, y))
        .collect();
    Ok(Matching { edges })
}

fn augment(
    g: &Graph,
    u: Vertex,
    mate: &mut BTreeMap<Vertex, Vertex>,
    visited: &mut VertexSet,
) -> bool {
    for &w in g.neighbors(u) {
        if !visited.insert(w) {
            continue;
        }
        let free = match mate.get(&w) {
            None => true,
            Some(&x) => augment(g, x, mate, visited),
        };
        if free {
            mate.insert(w, u);
            mate.insert(u, w);
            return true;
        }
    }
    false
}

/// Vertices reachable from `sources` by M-alternating walks. The first step
/// uses a matching edge when `start_with_matching` is set and a non-matching
/// edge otherwise; steps then alternate. Sources count as reached.
pub fn alternating_reachability(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    m: &Matching,
    sources: &VertexSet,
    start_with_matching: bool,
) -> Result<VertexSet> {
    check_bipartition(g, a, b)?;
    g.check_subset(sources)?;
    let mut seen: BTreeMap<(Vertex, bool), ()> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        seen.insert((s, start_with_matching), ());
        queue.push_back((s, start_with_matching));
    }
    while let Some((v, matching_next)) = queue.pop_front() {
        let next: Vec<Vertex> = if matching_next {
            m.mate(v).into_iter().collect()
        } else {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !m.contains(v, w))
                .collect()
        };
        for w in next {
            let state = (w, !matching_next);
            if seen.insert(state, ()).is_none() {
                queue.push_back(state);
            }
        }
    }
    Ok(seen.keys().map(|&(v, _)| v).collect())
}
