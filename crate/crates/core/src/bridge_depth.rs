//! Bridge-depth, lowering trees, and the comparison parameters tree-depth,
//! treewidth and feedback vertex set number.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::dense::{bit, bits, BitGraph, Mask};
use crate::enumerate::{canonical_code, MAX_CANON};
use crate::error::{Error, Result};
use crate::graph::{contract_all_bridges, BridgeTree, Graph, VertexSet};

/// Vertex cap for the exponential comparison oracles (td, tw, fvs).
pub const COMPARISON_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoweringTree {
    pub tree: BridgeTree,
    pub bd_before: usize,
    pub bd_after: usize,
}

/// Exact bridge-depth on induced subgraphs of one host graph, memoised on
/// vertex masks. Minimises over maximal trees of bridges T of each
/// connected piece: bd = 1 + min_T bd(piece \ V(T)).
pub struct BdSolver {
    g: BitGraph,
    exact: HashMap<Mask, u32>,
    // strict lower bounds learned from failed threshold queries
    above: HashMap<Mask, u32>,
}

impl BdSolver {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Self::from_bits(BitGraph::from_graph(g, "bridge-depth")?))
    }

    pub fn from_bits(g: BitGraph) -> Self {
        BdSolver {
            g,
            exact: HashMap::new(),
            above: HashMap::new(),
        }
    }

    pub fn bits(&self) -> &BitGraph {
        &self.g
    }

    pub fn bd_of(&mut self, s: &VertexSet) -> u32 {
        let m = self.g.mask_of(s);
        self.bd(m)
    }

    pub fn at_most_of(&mut self, s: &VertexSet, c: u32) -> bool {
        let m = self.g.mask_of(s);
        self.at_most(m, c)
    }

    pub fn bd(&mut self, m: Mask) -> u32 {
        self.g
            .components(m)
            .into_iter()
            .map(|c| self.bd_connected(c))
            .max()
            .unwrap_or(0)
    }

    fn bd_connected(&mut self, m: Mask) -> u32 {
        if let Some(&d) = self.exact.get(&m) {
            return d;
        }
        let d = if self.g.is_forest(m) {
            1
        } else {
            let mut best = u32::MAX;
            for t in self.g.bridge_blocks(m) {
                // a connected graph with a cycle has bd ≥ 2
                if best == 2 {
                    break;
                }
                let rest = m & !t;
                if best != u32::MAX && !self.at_most(rest, best - 2) {
                    continue;
                }
                best = best.min(1 + self.bd(rest));
            }
            best
        };
        self.exact.insert(m, d);
        d
    }

    /// bd(G[m]) ≤ c with early cutoff.
    pub fn at_most(&mut self, m: Mask, c: u32) -> bool {
        if m.count_ones() <= c {
            return true;
        }
        self.g
            .components(m)
            .into_iter()
            .all(|comp| self.at_most_connected(comp, c))
    }

    fn at_most_connected(&mut self, m: Mask, c: u32) -> bool {
        if let Some(&d) = self.exact.get(&m) {
            return d <= c;
        }
        if self.above.get(&m).is_some_and(|&lb| lb >= c) {
            return false;
        }
        let ok = match c {
            0 => false,
            1 => self.g.is_forest(m),
            _ => {
                self.g.is_forest(m)
                    || self
                        .g
                        .bridge_blocks(m)
                        .into_iter()
                        .any(|t| self.at_most(m & !t, c - 1))
            }
        };
        if !ok {
            let e = self.above.entry(m).or_insert(0);
            *e = (*e).max(c);
        }
        ok
    }

    /// First maximal tree of bridges (ascending smallest index) whose
    /// removal lowers the bridge-depth of the connected G[m] by one.
    pub fn lowering_block(&mut self, m: Mask) -> Option<Mask> {
        let d = self.bd(m);
        self.g
            .bridge_blocks(m)
            .into_iter()
            .find(|&t| self.bd(m & !t) + 1 == d)
    }
}

pub fn bridge_depth(g: &Graph) -> Result<usize> {
    let mut s = BdSolver::new(g)?;
    let full = s.bits().full();
    Ok(s.bd(full) as usize)
}

pub fn is_bd_at_most(g: &Graph, c: usize) -> Result<bool> {
    if c >= g.n() {
        return Ok(true);
    }
    let mut s = BdSolver::new(g)?;
    let full = s.bits().full();
    Ok(s.at_most(full, c as u32))
}

/// Definition-following bridge-depth: contract all bridges, then
/// 1 + min over vertices v of the contracted graph of bd(Ḡ \ v). Slow; the
/// reference the optimised solver is tested against. Memoised on canonical
/// codes of connected pieces with at most 16 vertices.
pub fn bridge_depth_reference(g: &Graph) -> usize {
    let mut memo = HashMap::new();
    reference(g, &mut memo)
}

fn reference(g: &Graph, memo: &mut HashMap<u128, usize>) -> usize {
    let mut best = 0;
    for comp in g.connected_components() {
        let h = g.induced(&comp).unwrap();
        let key = (h.n() <= MAX_CANON).then(|| {
            let b = BitGraph::from_graph(&h, "reference").unwrap();
            canonical_code(&b.adj) ^ ((h.n() as u128) << 121)
        });
        let d = match key.and_then(|k| memo.get(&k).copied()) {
            Some(d) => d,
            None => {
                let (bar, _) = contract_all_bridges(&h);
                let d = 1 + bar
                    .vertices()
                    .map(|v| reference(&bar.delete_vertices(&VertexSet::from([v])).unwrap(), memo))
                    .min()
                    .unwrap();
                if let Some(k) = key {
                    memo.insert(k, d);
                }
                d
            }
        };
        best = best.max(d);
    }
    best
}

/// A maximal tree of bridges T of the connected graph G with
/// bd(G \ V(T)) = bd(G) − 1: the first such block by smallest id.
pub fn lowering_tree(g: &Graph) -> Result<LoweringTree> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::InvalidInput(
            "lowering tree needs a connected nonempty graph".into(),
        ));
    }
    let mut s = BdSolver::new(g)?;
    let full = s.bits().full();
    let bd_before = s.bd(full) as usize;
    let block = s.lowering_block(full).ok_or_else(|| {
        Error::Internal("no maximal tree of bridges lowers the bridge-depth".into())
    })?;
    let vertices = s.bits().to_set(block);
    let tree = BridgeTree::induced_in(g, &vertices)?;
    Ok(LoweringTree {
        tree,
        bd_before,
        bd_after: bd_before - 1,
    })
}

fn comparison_bits(g: &Graph) -> Result<BitGraph> {
    if g.n() > COMPARISON_CAP {
        return Err(Error::CapExceeded {
            what: "comparison oracle",
            size: g.n(),
            cap: COMPARISON_CAP,
        });
    }
    BitGraph::from_graph(g, "comparison oracle")
}

/// td: 0 for the empty graph, max over components, else 1 + min_v td(G \ v).
pub fn tree_depth(g: &Graph) -> Result<usize> {
    let b = comparison_bits(g)?;
    let mut memo = HashMap::new();
    Ok(td(&b, b.full(), &mut memo) as usize)
}

fn td(b: &BitGraph, m: Mask, memo: &mut HashMap<Mask, u32>) -> u32 {
    let mut best = 0;
    for comp in b.components(m) {
        let d = match memo.get(&comp) {
            Some(&d) => d,
            None => {
                let d = if comp.count_ones() == 1 {
                    1
                } else {
                    1 + bits(comp)
                        .map(|v| td(b, comp & !bit(v), memo))
                        .min()
                        .unwrap()
                };
                memo.insert(comp, d);
                d
            }
        };
        best = best.max(d);
    }
    best
}

/// Exact treewidth by the subset recurrence
/// TW(S) = min_{v∈S} max(TW(S \ v), |Q(S \ v, v)|), where Q(S, v) are the
/// vertices outside S ∪ {v} reachable from v through S.
pub fn treewidth(g: &Graph) -> Result<usize> {
    let b = comparison_bits(g)?;
    if b.n() == 0 {
        return Ok(0);
    }
    let n = b.n();
    let size = 1usize << n;
    let mut tw = vec![i32::MAX; size];
    tw[0] = -1;
    for s in 1..size as Mask {
        let mut best = i32::MAX;
        for v in bits(s) {
            let rest = s & !bit(v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let reach = b.component_of(v, rest | bit(v));
            let mut q = 0;
            for w in bits(reach) {
                q |= b.adj[w];
            }
            q &= !(rest | bit(v));
            best = best.min(prev.max(q.count_ones() as i32));
        }
        tw[s as usize] = best;
    }
    Ok(tw[size - 1].max(0) as usize)
}

/// Minimum number of vertices whose removal leaves a forest.
pub fn fvs_number(g: &Graph) -> Result<usize> {
    let b = comparison_bits(g)?;
    let n = b.n();
    for k in 0..=n {
        for del in (0..n).combinations(k) {
            let m = del.iter().fold(b.full(), |m, &i| m & !bit(i));
            if b.is_forest(m) {
                return Ok(k);
            }
        }
    }
    unreachable!("deleting every vertex leaves a forest")
}

/// Minimum X with bd(G \ X) ≤ c; lexicographically least among minimum ones.
pub fn min_bd_modulator(g: &Graph, c: usize) -> Result<VertexSet> {
    let mut s = BdSolver::new(g)?;
    let n = s.bits().n();
    for k in 0..=n {
        for del in (0..n).combinations(k) {
            let x = del.iter().fold(0, |m, &i| m | bit(i));
            let full = s.bits().full();
            if s.at_most(full & !x, c as u32) {
                return Ok(s.bits().to_set(x));
            }
        }
    }
    unreachable!("removing every vertex reaches bridge-depth 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    }

    #[test]
    fn bd_examples() {
        assert_eq!(bridge_depth(&Graph::new()).unwrap(), 0);
        assert_eq!(bridge_depth(&generators::path(6)).unwrap(), 1);
        assert_eq!(
            bridge_depth(&Graph::from_edges(5, &[(0, 1), (3, 4)])).unwrap(),
            1
        );
        assert_eq!(bridge_depth(&generators::cycle(3)).unwrap(), 2);
        assert_eq!(
            bridge_depth(&generators::truncated_triangle_path(8).unwrap()).unwrap(),
            3
        );
    }

    #[test]
    fn reference_agrees_on_named_graphs() {
        for g in [
            generators::cycle(5),
            generators::complete(5),
            generators::triangle_path(3),
            generators::grid(3),
            generators::truncated_triangle_path(4).unwrap(),
            two_triangles(),
        ] {
            assert_eq!(bridge_depth(&g).unwrap(), bridge_depth_reference(&g));
        }
    }

    #[test]
    fn threshold_examples() {
        assert!(is_bd_at_most(&generators::path(5), 1).unwrap());
        assert!(!is_bd_at_most(&generators::cycle(3), 1).unwrap());
        assert!(is_bd_at_most(&generators::complete(6), 6).unwrap());
        assert!(!is_bd_at_most(&generators::complete(6), 4).unwrap());
    }

    #[test]
    fn lowering_tree_examples() {
        let p5 = generators::path(5);
        let t = lowering_tree(&p5).unwrap();
        assert_eq!(t.tree.vertices, p5.vertex_set());
        assert_eq!((t.bd_before, t.bd_after), (1, 0));

        let c5 = generators::cycle(5);
        assert_eq!(lowering_tree(&c5).unwrap().tree, BridgeTree::single(1));

        // U_8: ids b_i = 3i−2, a_{i+1} = 3i for i < 8 after removing a_1
        let u8 = generators::truncated_triangle_path(8).unwrap();
        let labels = generators::TriangleLabels::new(8, true);
        let t = lowering_tree(&u8).unwrap();
        let (b4, a5) = (labels.b[3].unwrap(), labels.a[4].unwrap());
        assert!(t.tree.edges.contains(&(b4.min(a5), b4.max(a5))));
        assert_eq!((t.bd_before, t.bd_after), (3, 2));

        assert!(lowering_tree(&two_triangles()).is_err());
        assert!(lowering_tree(&Graph::new()).is_err());
    }

    #[test]
    fn comparison_examples() {
        let p4 = generators::path(4);
        assert_eq!(
            (
                tree_depth(&p4).unwrap(),
                treewidth(&p4).unwrap(),
                fvs_number(&p4).unwrap()
            ),
            (3, 1, 0)
        );
        let c3 = generators::cycle(3);
        assert_eq!(
            (
                tree_depth(&c3).unwrap(),
                treewidth(&c3).unwrap(),
                fvs_number(&c3).unwrap()
            ),
            (3, 2, 1)
        );
        let k1 = generators::path(1);
        assert_eq!(
            (
                tree_depth(&k1).unwrap(),
                treewidth(&k1).unwrap(),
                fvs_number(&k1).unwrap()
            ),
            (1, 0, 0)
        );
        assert_eq!(treewidth(&generators::grid(3)).unwrap(), 3);
        assert_eq!(treewidth(&generators::complete(5)).unwrap(), 4);
    }

    #[test]
    fn modulator_examples() {
        assert!(min_bd_modulator(&generators::path(4), 1)
            .unwrap()
            .is_empty());
        assert_eq!(
            min_bd_modulator(&two_triangles(), 1).unwrap(),
            VertexSet::from([0, 3])
        );
        assert_eq!(
            min_bd_modulator(&generators::complete(4), 1).unwrap(),
            VertexSet::from([1, 2])
        );
    }
}
