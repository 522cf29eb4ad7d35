use std::collections::BTreeMap;

use super::{edge, EdgeSet, Graph, Vertex, VertexSet};

/// Bridges via the iterative lowpoint DFS.
pub fn find_bridges(g: &Graph) -> EdgeSet {
    let ids: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|w| index[w]).collect())
        .collect();
    bridges_of(&adj)
        .into_iter()
        .map(|(a, b)| edge(ids[a], ids[b]))
        .collect()
}

/// Lowpoint bridge finding on an index adjacency list.
pub(crate) fn bridges_of(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent, next) = *top;
            if next < adj[v].len() {
                top.2 += 1;
                let w = adj[v][next];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Components of (V(G), bridges): the inclusion-maximal trees of bridges,
/// ordered by smallest id. Singletons are included.
pub fn maximal_trees_of_bridges(g: &Graph) -> Vec<VertexSet> {
    let bridges = find_bridges(g);
    let mut forest = Graph::with_vertices(g.vertices());
    for &(u, v) in &bridges {
        forest
            .add_edge(u, v)
            .expect("bridge endpoints are vertices");
    }
    forest.connected_components()
}

/// Ḡ: every maximal tree of bridges with more than one vertex becomes a
/// fresh vertex. Returns the contracted graph and the old-to-new id map.
pub fn contract_all_bridges(g: &Graph) -> (Graph, BTreeMap<Vertex, Vertex>) {
    let mut out = g.clone();
    let mut map = BTreeMap::new();
    for block in maximal_trees_of_bridges(g) {
        if block.len() == 1 {
            let v = *block.first().unwrap();
            map.insert(v, v);
            continue;
        }
        let (h, w) = out
            .contract_set(&block)
            .expect("blocks are live vertex sets");
        out = h;
        for v in block {
            map.insert(v, w);
        }
    }
    (out, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_with_bridge() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    }

    #[test]
    fn bridge_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(find_bridges(&p3), EdgeSet::from([(0, 1), (1, 2)]));
        let c3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(find_bridges(&c3).is_empty());
        assert_eq!(
            find_bridges(&two_triangles_with_bridge()),
            EdgeSet::from([(0, 3)])
        );
    }

    #[test]
    fn contraction_examples() {
        let (bowtie, map) = contract_all_bridges(&two_triangles_with_bridge());
        assert_eq!(bowtie.n(), 5);
        assert_eq!(bowtie.m(), 6);
        assert_eq!(map[&0], map[&3]);
        assert_eq!(bowtie.degree(map[&0]), 4);
        assert!(find_bridges(&bowtie).is_empty());

        let forest = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]);
        let (f, _) = contract_all_bridges(&forest);
        assert_eq!(f.n(), 2);
        assert_eq!(f.m(), 0);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(contract_all_bridges(&c4).0, c4);
    }

    #[test]
    fn block_examples() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            maximal_trees_of_bridges(&p4),
            vec![VertexSet::from([0, 1, 2, 3])]
        );
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(maximal_trees_of_bridges(&c5).len(), 5);
        // bowtie centred at 0 plus pendant edge 1-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5)]);
        let blocks = maximal_trees_of_bridges(&g);
        assert!(blocks.contains(&VertexSet::from([1, 5])));
        assert_eq!(blocks.len(), 5);
    }
}
