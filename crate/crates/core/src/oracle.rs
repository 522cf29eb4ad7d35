//! Naive reference implementations used to cross-check the real algorithms.
//! They share no code with the solvers beyond the graph type.

use crate::graph::{edge, EdgeSet, Graph, Vertex, VertexSet};

/// Largest graph the powerset oracles accept.
pub const ORACLE_CAP: usize = 20;

fn ids(g: &Graph) -> Vec<Vertex> {
    assert!(
        g.n() <= ORACLE_CAP,
        "oracle limited to {ORACLE_CAP} vertices"
    );
    g.vertices().collect()
}

fn subset(ids: &[Vertex], mask: u32) -> VertexSet {
    (0..ids.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| ids[i])
        .collect()
}

/// α by checking every vertex subset for independence.
pub fn naive_alpha(g: &Graph) -> usize {
    let ids = ids(g);
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| {
            (
                ids.binary_search(&u).unwrap(),
                ids.binary_search(&v).unwrap(),
            )
        })
        .collect();
    (0u32..1 << ids.len())
        .filter(|&m| {
            edges
                .iter()
                .all(|&(a, b)| m >> a & 1 == 0 || m >> b & 1 == 0)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn component_count(g: &Graph) -> usize {
    let mut seen = VertexSet::new();
    let mut count = 0;
    for v in g.vertices() {
        if seen.contains(&v) {
            continue;
        }
        count += 1;
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Bridges by definition: edges whose deletion adds a component.
pub fn naive_bridges(g: &Graph) -> EdgeSet {
    let base = component_count(g);
    g.edges()
        .filter(|&(u, v)| {
            let h = g.delete_edges(&EdgeSet::from([edge(u, v)])).unwrap();
            component_count(&h) > base
        })
        .collect()
}

pub fn naive_is_blocking(g: &Graph, y: &VertexSet) -> bool {
    naive_alpha(&g.delete_vertices(y).unwrap()) < naive_alpha(g)
}

/// conf_{R'}(X') from powerset α of the two induced subgraphs.
pub fn naive_conf(g: &Graph, rp: &VertexSet, xp: &VertexSet) -> usize {
    let hit: VertexSet = xp
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().copied())
        .collect();
    let avoided: VertexSet = rp.difference(&hit).copied().collect();
    let induced = |s: &VertexSet| {
        g.delete_vertices(&g.vertices().filter(|v| !s.contains(v)).collect())
            .unwrap()
    };
    naive_alpha(&induced(rp)) - naive_alpha(&induced(&avoided))
}

/// mbs by testing every subset for blocking and keeping the inclusion-
/// minimal ones.
pub fn naive_mbs(g: &Graph) -> usize {
    let ids = ids(g);
    let n = ids.len();
    let blocking: Vec<bool> = (0u32..1 << n)
        .map(|m| naive_is_blocking(g, &subset(&ids, m)))
        .collect();
    (0u32..1 << n)
        .filter(|&m| blocking[m as usize])
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || !blocking[(m & !(1 << i)) as usize]))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn oracle_sanity() {
        assert_eq!(naive_alpha(&generators::cycle(7)), 3);
        assert_eq!(naive_alpha(&Graph::new()), 0);
        assert_eq!(naive_bridges(&generators::path(3)).len(), 2);
        assert_eq!(naive_mbs(&generators::path(2)), 2);
        assert_eq!(naive_mbs(&Graph::new()), 0);
        // P4 = 1-2-3-4: picking 1 leaves α(G[{3,4}]) = 1 of α(G[{2,3,4}]) = 2
        let p4 = generators::path(4);
        let (r, x) = (VertexSet::from([2, 3, 4]), VertexSet::from([1]));
        assert_eq!(naive_conf(&p4, &r, &x), 1);
    }
}
