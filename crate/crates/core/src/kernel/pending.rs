//! Pending components, vertex types, conflict structures and leaf classes
//! of a tree of bridges inside one remainder component.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BridgeTree, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexType {
    /// α(H_v) = α(H_v \ v)
    A,
    /// α(H_v) = α(H_v \ v) + 1
    B,
}

/// For each tree vertex v: H_v, the component of R' minus the tree edges
/// that contains v, and the type of v. Always relative to `tree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendingDecomposition {
    pub tree: BridgeTree,
    pub pending: BTreeMap<Vertex, VertexSet>,
    pub types: BTreeMap<Vertex, VertexType>,
}

impl PendingDecomposition {
    pub fn is_a(&self, v: Vertex) -> bool {
        self.types[&v] == VertexType::A
    }

    pub fn is_b(&self, v: Vertex) -> bool {
        self.types[&v] == VertexType::B
    }

    /// Union of the pending components of `roots`.
    pub fn union(&self, roots: &[Vertex]) -> VertexSet {
        roots
            .iter()
            .flat_map(|r| self.pending[r].iter().copied())
            .collect()
    }

    /// Leaf classes relative to this tree; the parent of a leaf is its
    /// unique tree neighbour. Classes may overlap.
    pub fn leaf_counts(&self) -> LeafCounts {
        let t = &self.tree;
        let leaves = t.leaves();
        let b_leaves_under = |p: Vertex| {
            t.neighbors(p)
                .into_iter()
                .filter(|u| leaves.contains(u) && self.is_b(*u))
                .count()
        };
        let mut out = LeafCounts {
            leaves: leaves.len(),
            ..LeafCounts::default()
        };
        for &l in &leaves {
            let p = t.parent(l).expect("leaf has a parent");
            if self.is_a(p) {
                out.star_a += 1;
            }
            if self.is_a(l) {
                if self.is_b(p) {
                    out.ab += 1;
                }
                continue;
            }
            if t.degree(p) == 2 {
                out.bb2 += 1;
            }
            let siblings = b_leaves_under(p);
            if siblings >= 2 {
                out.bbb += 1;
            }
            if t.degree(p) > 2 && siblings == 1 {
                out.bb_bad += 1;
            }
        }
        out
    }
}

/// Leaf counts: `star_a` leaves with an A-parent; `ab` A-leaves with a
/// B-parent; `bb2` B-leaves whose parent has tree degree 2; `bbb` B-leaves
/// sharing their parent with another B-leaf; `bb_bad` B-leaves that are the
/// only B-leaf of a parent of degree above 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LeafCounts {
    pub leaves: usize,
    pub star_a: usize,
    pub ab: usize,
    pub bb2: usize,
    pub bbb: usize,
    pub bb_bad: usize,
}

/// A T-conflict structure. `roots` by kind:
/// 1: [v1, v2], adjacent, at least one of type A;
/// 2: [u2, v1, v2, u1], a path with v1, v2 of type B and tree degree 2;
/// 3: [u, v], u a B-leaf and v its parent;
/// 4: [v1, v2, u], v1 a B-leaf, v2 its B-parent of degree 2, u the other
///    neighbour of v2.
/// `vertices` is C, the union of the pending components of the roots named
/// in the rule (v1 and v2 for kinds 1, 2 and 4; u alone for kind 3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictStructure {
    pub kind: u8,
    pub roots: Vec<Vertex>,
    pub vertices: VertexSet,
}

/// Every structure of `kind` in a deterministic order: by smallest root
/// pair for kinds 1 and 2, by leaf id for kinds 3 and 4.
pub fn conflict_structures(dec: &PendingDecomposition, kind: u8) -> Result<Vec<ConflictStructure>> {
    let t = &dec.tree;
    let mut out = Vec::new();
    let make = |roots: Vec<Vertex>, core: &[Vertex]| ConflictStructure {
        kind,
        vertices: dec.union(core),
        roots,
    };
    match kind {
        1 => {
            for &(v1, v2) in &t.edges {
                if dec.is_a(v1) || dec.is_a(v2) {
                    out.push(make(vec![v1, v2], &[v1, v2]));
                }
            }
        }
        2 => {
            for &(v1, v2) in &t.edges {
                if t.degree(v1) != 2 || t.degree(v2) != 2 || !dec.is_b(v1) || !dec.is_b(v2) {
                    continue;
                }
                let other = |v: Vertex, not: Vertex| {
                    t.neighbors(v).into_iter().find(|&w| w != not).unwrap()
                };
                let (u2, u1) = (other(v1, v2), other(v2, v1));
                out.push(make(vec![u2, v1, v2, u1], &[v1, v2]));
            }
        }
        3 => {
            for u in t.leaves() {
                if dec.is_b(u) {
                    let v = t.parent(u).unwrap();
                    out.push(make(vec![u, v], &[u]));
                }
            }
        }
        4 => {
            for v1 in t.leaves() {
                let v2 = t.parent(v1).unwrap();
                if !dec.is_b(v1) || !dec.is_b(v2) || t.degree(v2) != 2 {
                    continue;
                }
                let u = t.neighbors(v2).into_iter().find(|&w| w != v1).unwrap();
                out.push(make(vec![v1, v2, u], &[v1, v2]));
            }
        }
        k => {
            return Err(Error::InvalidInput(format!(
                "conflict structure kind {k} not in 1..=4"
            )))
        }
    }
    Ok(out)
}

/// The first structure of `kind`, ignoring any almost-free threshold.
pub fn find_conflict_structure(
    dec: &PendingDecomposition,
    kind: u8,
) -> Result<Option<ConflictStructure>> {
    Ok(conflict_structures(dec, kind)?.into_iter().next())
}

/// T1: the tree minus every A-leaf whose parent has type B.
pub fn absorbed_tree(dec: &PendingDecomposition) -> BridgeTree {
    let t = &dec.tree;
    let drop: VertexSet = t
        .leaves()
        .into_iter()
        .filter(|&l| dec.is_a(l) && dec.is_b(t.parent(l).unwrap()))
        .collect();
    BridgeTree {
        vertices: t.vertices.difference(&drop).copied().collect(),
        edges: t
            .edges
            .iter()
            .filter(|(u, v)| !drop.contains(u) && !drop.contains(v))
            .copied()
            .collect(),
    }
}
