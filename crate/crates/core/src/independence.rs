//! Exact independence numbers by branch-and-reduce, conflicts, and
//! α-additivity checks.

use serde::Serialize;

use crate::dense::{bit, bits, BitGraph, Mask};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default vertex cap for a single α query.
pub const DEFAULT_ALPHA_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MisResult {
    pub alpha: usize,
    pub witness: VertexSet,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "alpha query",
            size: n,
            cap,
        });
    }
    Ok(())
}

/// α(G) with the lexicographically least maximum independent set.
pub fn alpha(g: &Graph) -> Result<MisResult> {
    alpha_with_cap(g, DEFAULT_ALPHA_CAP)
}

/// As [`alpha`], refusing graphs with more than `cap` vertices. Graphs above
/// 64 vertices are refused whatever the cap.
pub fn alpha_with_cap(g: &Graph, cap: usize) -> Result<MisResult> {
    check_cap(g.n(), cap)?;
    let b = BitGraph::from_graph(g, "alpha query")?;
    let w = mis_witness(&b.adj, b.full());
    Ok(MisResult {
        alpha: w.count_ones() as usize,
        witness: b.to_set(w),
    })
}

/// α(G) without a witness.
pub fn alpha_number(g: &Graph) -> Result<usize> {
    alpha_of(g, &g.vertex_set())
}

/// α(G[S]).
pub fn alpha_of(g: &Graph, s: &VertexSet) -> Result<usize> {
    check_cap(s.len(), DEFAULT_ALPHA_CAP)?;
    let b = BitGraph::from_subset(g, s, "alpha query")?;
    Ok(mis_size(&b.adj, b.full()) as usize)
}

/// conf_{R'}(X') = α(G[R']) − α(G[R' \ N(X')]).
pub fn conf(g: &Graph, rp: &VertexSet, xp: &VertexSet) -> Result<usize> {
    g.check_subset(rp)?;
    g.check_subset(xp)?;
    if !rp.is_disjoint(xp) {
        return Err(Error::InvalidInput("conflict sets overlap".into()));
    }
    let n = g.neighborhood(xp);
    let avoided: VertexSet = rp.difference(&n).copied().collect();
    Ok(alpha_of(g, rp)? - alpha_of(g, &avoided)?)
}

/// Whether α(G) equals the sum of α over the blocks of `partition`.
pub fn alpha_additive_check(g: &Graph, partition: &[VertexSet]) -> Result<bool> {
    let mut seen = VertexSet::new();
    for block in partition {
        g.check_subset(block)?;
        if block.iter().any(|v| !seen.insert(*v)) {
            return Err(Error::InvalidInput("blocks overlap".into()));
        }
    }
    if seen.len() != g.n() {
        return Err(Error::InvalidInput(
            "blocks do not cover the vertex set".into(),
        ));
    }
    let mut sum = 0;
    for block in partition {
        sum += alpha_of(g, block)?;
    }
    Ok(sum == alpha_number(g)?)
}

/// Size of a maximum independent set of G[mask].
pub(crate) fn mis_size(adj: &[Mask], mut mask: Mask) -> u32 {
    let mut acc = 0;
    'reduce: loop {
        if mask == 0 {
            return acc;
        }
        let (mut best, mut best_deg) = (0usize, 0u32);
        for v in bits(mask) {
            let nb = adj[v] & mask;
            let d = nb.count_ones();
            if d <= 1 {
                // a vertex of degree ≤ 1 is in some maximum independent set
                acc += 1;
                mask &= !(bit(v) | nb);
                continue 'reduce;
            }
            if d > best_deg {
                best = v;
                best_deg = d;
            }
        }
        let comp = component(adj, mask);
        if comp != mask {
            return acc + mis_size(adj, comp) + mis_size(adj, mask & !comp);
        }
        if best_deg == 2 {
            // connected, 2-regular: a cycle
            return acc + mask.count_ones() / 2;
        }
        let without = mis_size(adj, mask & !bit(best));
        let with = 1 + mis_size(adj, mask & !(bit(best) | adj[best]));
        return acc + without.max(with);
    }
}

fn component(adj: &[Mask], mask: Mask) -> Mask {
    let start = bit(mask.trailing_zeros() as usize);
    let (mut comp, mut frontier) = (start, start);
    while frontier != 0 {
        let mut next = 0;
        for i in bits(frontier) {
            next |= adj[i];
        }
        next &= mask & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// The lexicographically least maximum independent set of G[mask]: scan
/// vertices in index order and keep each one that still extends to an
/// optimum.
pub(crate) fn mis_witness(adj: &[Mask], mut mask: Mask) -> Mask {
    let mut need = mis_size(adj, mask);
    let mut chosen = 0;
    while need > 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(bit(v) | adj[v]);
        if 1 + mis_size(adj, rest) == need {
            chosen |= bit(v);
            need -= 1;
            mask = rest;
        } else {
            mask &= !bit(v);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&Graph::new()).unwrap().alpha, 0);
        assert_eq!(alpha(&generators::cycle(5)).unwrap().alpha, 2);
        // two triangles joined by one edge: each triangle holds one vertex
        let tp2 = alpha(&generators::triangle_path(2)).unwrap();
        assert_eq!(tp2.alpha, 2);
        assert_eq!(tp2.witness, VertexSet::from([1, 4]));
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // P4 1-2-3-4: optima {1,3},{1,4},{2,4}
        let p4 = generators::path(4);
        assert_eq!(alpha(&p4).unwrap().witness, VertexSet::from([1, 3]));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(alpha(&star).unwrap().witness, VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn conf_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(
            conf(&k2, &VertexSet::from([1]), &VertexSet::from([0])).unwrap(),
            1
        );
        let g = Graph::from_edges(3, &[(1, 2)]);
        assert_eq!(
            conf(&g, &VertexSet::from([1, 2]), &VertexSet::from([0])).unwrap(),
            0
        );
        // P3 x - r1 - r2
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            conf(&p3, &VertexSet::from([1, 2]), &VertexSet::from([0])).unwrap(),
            0
        );
        assert!(conf(&p3, &VertexSet::from([0, 1]), &VertexSet::from([0])).is_err());
    }

    #[test]
    fn additivity_examples() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]);
        assert!(alpha_additive_check(&g, &g.connected_components()).unwrap());
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        let split = [VertexSet::from([0]), VertexSet::from([1])];
        assert!(!alpha_additive_check(&k2, &split).unwrap());
        assert!(alpha_additive_check(&k2, &[VertexSet::from([0])]).is_err());
    }

    #[test]
    fn cap_exceeded_is_an_error() {
        let g = generators::path(10);
        assert!(matches!(
            alpha_with_cap(&g, 9),
            Err(Error::CapExceeded { .. })
        ));
        assert!(alpha_with_cap(&g, 10).is_ok());
    }
}
