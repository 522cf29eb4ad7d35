//! Blocking sets: the predicate, the mbs parameter, and constructive
//! shrinking of blocking sets in bipartite and general graphs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bridge_depth::lowering_tree;
use crate::dense::{bit, bits, BitGraph, Mask};
use crate::error::{Error, Result};
use crate::graph::{BridgeTree, Graph, Vertex, VertexSet};
use crate::independence::{alpha_number, alpha_of, mis_size};
use crate::matching::{alternating_reachability, bipartite_maximum_matching, check_bipartition};

/// Default vertex cap for the mbs enumeration.
pub const MBS_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCertificate {
    pub set: VertexSet,
    pub alpha_before: usize,
    pub alpha_after: usize,
}

/// A certificate when α(G \ Y) < α(G), `None` otherwise.
pub fn is_blocking_set(g: &Graph, y: &VertexSet) -> Result<Option<BlockingCertificate>> {
    g.check_subset(y)?;
    let alpha_before = alpha_number(g)?;
    let rest: VertexSet = g.vertices().filter(|v| !y.contains(v)).collect();
    let alpha_after = alpha_of(g, &rest)?;
    Ok((alpha_after < alpha_before).then(|| BlockingCertificate {
        set: y.clone(),
        alpha_before,
        alpha_after,
    }))
}

fn require_blocking(g: &Graph, y: &VertexSet) -> Result<BlockingCertificate> {
    match is_blocking_set(g, y)? {
        Some(c) => Ok(c),
        None => Err(Error::NotBlocking {
            alpha: alpha_number(g)?,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MbsResult {
    pub value: usize,
    /// Lexicographically least inclusion-minimal blocking set of maximum size.
    pub witness: VertexSet,
}

pub fn mbs(g: &Graph) -> Result<MbsResult> {
    mbs_with_cap(g, MBS_CAP)
}

/// Enumerates vertex subsets by increasing size. A set with a blocking
/// immediate subset is blocking and not minimal; any other set is tested
/// with one α query and, if blocking, is minimal. Stops once some size has
/// no non-blocking set left.
pub fn mbs_with_cap(g: &Graph, cap: usize) -> Result<MbsResult> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "mbs enumeration",
            size: g.n(),
            cap,
        });
    }
    let b = BitGraph::from_graph(g, "mbs enumeration")?;
    let n = b.n();
    let full = b.full();
    let alpha0 = mis_size(&b.adj, full);
    let mut blocking = vec![false; 1usize << n];
    let mut best: Option<Mask> = None;
    for k in 1..=n {
        let mut any_free = false;
        for m in masks_of_size(n, k) {
            let inherited = bits(m).any(|i| blocking[(m & !bit(i)) as usize]);
            if inherited {
                blocking[m as usize] = true;
                continue;
            }
            if mis_size(&b.adj, full & !m) < alpha0 {
                blocking[m as usize] = true;
                let better = match best {
                    None => true,
                    Some(w) => k > w.count_ones() as usize || lex_less(m, w),
                };
                if better {
                    best = Some(m);
                }
            } else {
                any_free = true;
            }
        }
        if !any_free {
            break;
        }
    }
    let witness = best.map(|m| b.to_set(m)).unwrap_or_default();
    Ok(MbsResult {
        value: witness.len(),
        witness,
    })
}

/// All masks over n bits with k ones, in increasing numeric order.
fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    let first: Mask = if k == 0 { 0 } else { (1 << k) - 1 };
    let limit: u128 = 1u128 << n;
    let mut next = (k <= n).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let succ = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && (succ as u128) < limit).then_some(succ)
        };
        Some(cur)
    })
}

/// Lexicographic order on the sorted index lists of equal-size masks.
fn lex_less(a: Mask, b: Mask) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

/// Shrinking by alternating paths in a bipartite graph: returns Y' ⊆ Y that is
/// blocking with |Y'| = 1, or |Y'| = 2 with one vertex on each side.
pub fn shrink_blocking_set_bipartite(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    y: &VertexSet,
) -> Result<VertexSet> {
    check_bipartition(g, a, b)?;
    require_blocking(g, y)?;
    let m = bipartite_maximum_matching(g, a, b)?;
    let saturated = m.saturated();
    let unsaturated: VertexSet = g.vertices().filter(|v| !saturated.contains(v)).collect();
    let a_u: VertexSet = a.intersection(&unsaturated).copied().collect();
    let r_au = alternating_reachability(g, a, b, &m, &a_u, false)?;

    // Case 1: a ∈ A∩Y reachable from an unsaturated A-vertex
    if let Some(&x) = a.iter().find(|v| y.contains(v) && r_au.contains(v)) {
        return Ok(VertexSet::from([x]));
    }
    let b_y: Vec<Vertex> = b.intersection(y).copied().collect();
    let mut reach = BTreeMap::new();
    for &s in &b_y {
        reach.insert(
            s,
            alternating_reachability(g, a, b, &m, &VertexSet::from([s]), true)?,
        );
    }
    // Case 2: b ∈ B∩Y that reaches an unsaturated B-vertex
    for &s in &b_y {
        if reach[&s]
            .iter()
            .any(|v| b.contains(v) && unsaturated.contains(v))
        {
            return Ok(VertexSet::from([s]));
        }
    }
    // Case 3: b ∈ B∩Y that reaches some a ∈ A∩Y
    for &s in &b_y {
        if let Some(&x) = reach[&s].iter().find(|v| a.contains(v) && y.contains(v)) {
            return Ok(VertexSet::from([x, s]));
        }
    }
    // Case 4: S = (A∩R) ∪ (B\R) is a maximum independent set avoiding Y
    let r: VertexSet = r_au
        .iter()
        .chain(reach.values().flatten())
        .copied()
        .collect();
    let s: VertexSet = a
        .iter()
        .filter(|v| r.contains(v))
        .chain(b.iter().filter(|v| !r.contains(v)))
        .copied()
        .collect();
    Err(Error::Internal(format!(
        "no shrinking case applies; {:?} (size {}) would be a maximum independent set avoiding Y",
        s,
        s.len()
    )))
}

/// One component C_i of G \ E(T) with its root t_i and its blocks in H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxBlock {
    pub root: Vertex,
    pub component: VertexSet,
    pub z_plus: Vec<Vertex>,
    pub z_minus: Vec<Vertex>,
}

/// The bipartite graph H that mirrors α of G along a tree of bridges T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryBipartite {
    pub h: Graph,
    pub y_h: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub blocks: Vec<AuxBlock>,
    pub alpha_g: usize,
    pub alpha_g_minus_y: usize,
}

fn minus(s: &VertexSet, t: &VertexSet) -> VertexSet {
    s.difference(t).copied().collect()
}

/// α of a bipartite graph by König: |V| − |maximum matching|.
fn bipartite_alpha(h: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    Ok(h.n() - bipartite_maximum_matching(h, a, b)?.len())
}

/// Builds H: for each component C_i (root t_i) of G \ E(T), a block Z⁺_i of
/// α(C_i) vertices and a block Z⁻_i of α(C_i \ t_i) vertices, Z⁺_i joined to
/// Z⁻_i, and Z⁺_i joined to Z⁺_j for every tree edge {t_i, t_j}. Y_H takes
/// the lowest-indexed vertices of each block, as many as Y_G costs there.
/// Checks α(H) = α(G) and α(H \ Y_H) = α(G \ Y_G).
pub fn build_auxiliary_bipartite(
    g: &Graph,
    t: &BridgeTree,
    y_g: &VertexSet,
) -> Result<AuxiliaryBipartite> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::InvalidInput(
            "auxiliary graph needs a connected nonempty graph".into(),
        ));
    }
    g.check_subset(y_g)?;
    t.validate_in(g)?;
    let cut = g.delete_edges(&t.edges)?;
    let mut roots: Vec<Vertex> = t.vertices.iter().copied().collect();
    roots.sort_unstable();
    // 2-colour T from its smallest vertex
    let mut colour: BTreeMap<Vertex, bool> = BTreeMap::from([(roots[0], true)]);
    let mut stack = vec![roots[0]];
    while let Some(v) = stack.pop() {
        for w in t.neighbors(v) {
            if !colour.contains_key(&w) {
                colour.insert(w, !colour[&v]);
                stack.push(w);
            }
        }
    }

    let mut h = Graph::new();
    let (mut side_a, mut side_b, mut y_h) = (VertexSet::new(), VertexSet::new(), VertexSet::new());
    let mut blocks = Vec::new();
    let mut next: Vertex = 0;
    let mut fresh = |count: usize, h: &mut Graph| -> Vec<Vertex> {
        let ids: Vec<Vertex> = (next..next + count as Vertex).collect();
        next += count as Vertex;
        for &v in &ids {
            h.add_vertex(v);
        }
        ids
    };
    for &root in &roots {
        let component = cut.component_of(root);
        let without_root = minus(&component, &VertexSet::from([root]));
        let a_plus = alpha_of(g, &component)?;
        let a_minus = alpha_of(g, &without_root)?;
        let y_plus = a_plus - alpha_of(g, &minus(&component, y_g))?;
        let y_minus = a_minus - alpha_of(g, &minus(&without_root, y_g))?;
        let z_plus = fresh(a_plus, &mut h);
        let z_minus = fresh(a_minus, &mut h);
        y_h.extend(z_plus.iter().take(y_plus));
        y_h.extend(z_minus.iter().take(y_minus));
        let (plus_side, minus_side) = if colour[&root] {
            (&mut side_a, &mut side_b)
        } else {
            (&mut side_b, &mut side_a)
        };
        plus_side.extend(z_plus.iter().copied());
        minus_side.extend(z_minus.iter().copied());
        for &p in &z_plus {
            for &q in &z_minus {
                h.add_edge(p, q)?;
            }
        }
        blocks.push(AuxBlock {
            root,
            component,
            z_plus,
            z_minus,
        });
    }
    let index: BTreeMap<Vertex, usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.root, i))
        .collect();
    for &(u, v) in &t.edges {
        for &p in &blocks[index[&u]].z_plus {
            for &q in &blocks[index[&v]].z_plus {
                h.add_edge(p, q)?;
            }
        }
    }

    let alpha_g = alpha_number(g)?;
    let alpha_g_minus_y = alpha_of(g, &minus(&g.vertex_set(), y_g))?;
    let alpha_h = bipartite_alpha(&h, &side_a, &side_b)?;
    let h_rest = h.delete_vertices(&y_h)?;
    let alpha_h_minus_y = bipartite_alpha(&h_rest, &minus(&side_a, &y_h), &minus(&side_b, &y_h))?;
    if alpha_h != alpha_g || alpha_h_minus_y != alpha_g_minus_y {
        return Err(Error::Internal(format!(
            "auxiliary graph does not mirror alpha: α(G)={alpha_g}, α(H)={alpha_h}, \
             α(G∖Y)={alpha_g_minus_y}, α(H∖Y_H)={alpha_h_minus_y}"
        )));
    }
    Ok(AuxiliaryBipartite {
        h,
        y_h,
        side_a,
        side_b,
        blocks,
        alpha_g,
        alpha_g_minus_y,
    })
}

/// Counters from one run of [`shrink_blocking_set_with_stats`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShrinkStats {
    /// Auxiliary graphs built; each one passed both α-mirroring checks.
    pub auxiliary_builds: usize,
    pub bipartite_calls: usize,
    pub max_depth: usize,
}

/// Shrinks a blocking set Y to a blocking Y' ⊆ Y with |Y'| ≤ 2^bd(G).
pub fn shrink_blocking_set(g: &Graph, y: &VertexSet) -> Result<VertexSet> {
    shrink_blocking_set_with_stats(g, y).map(|(s, _)| s)
}

pub fn shrink_blocking_set_with_stats(
    g: &Graph,
    y: &VertexSet,
) -> Result<(VertexSet, ShrinkStats)> {
    g.check_subset(y)?;
    require_blocking(g, y)?;
    let mut stats = ShrinkStats::default();
    let out = shrink_rec(g, y, &mut stats, 0)?;
    Ok((out, stats))
}

fn shrink_rec(
    g: &Graph,
    y: &VertexSet,
    stats: &mut ShrinkStats,
    depth: usize,
) -> Result<VertexSet> {
    stats.max_depth = stats.max_depth.max(depth);
    let alpha_g = alpha_number(g)?;
    if alpha_of(g, &minus(&g.vertex_set(), y))? >= alpha_g {
        return Err(Error::Internal(
            "recursion reached a non-blocking set".into(),
        ));
    }
    if let Some((a, b)) = g.bipartition() {
        stats.bipartite_calls += 1;
        return shrink_blocking_set_bipartite(g, &a, &b, y);
    }
    let comps = g.connected_components();
    if comps.len() > 1 {
        for c in comps {
            let yc: VertexSet = y.intersection(&c).copied().collect();
            if alpha_of(g, &minus(&c, &yc))? < alpha_of(g, &c)? {
                return shrink_rec(&g.induced(&c)?, &yc, stats, depth + 1);
            }
        }
        return Err(Error::Internal(
            "no component is blocked although Y blocks G".into(),
        ));
    }
    // drop vertices that lie in no maximum independent set
    let mut strip = VertexSet::new();
    for v in g.vertices() {
        let rest = minus(&g.vertex_set(), &g.closed_neighborhood(v));
        if alpha_of(g, &rest)? + 1 < alpha_g {
            strip.insert(v);
        }
    }
    if !strip.is_empty() {
        return shrink_rec(
            &g.delete_vertices(&strip)?,
            &minus(y, &strip),
            stats,
            depth + 1,
        );
    }

    let lt = lowering_tree(g)?;
    let aux = build_auxiliary_bipartite(g, &lt.tree, y)?;
    stats.auxiliary_builds += 1;
    for blk in &aux.blocks {
        let rest = minus(&blk.component, &g.closed_neighborhood(blk.root));
        if alpha_of(g, &blk.component)? != alpha_of(g, &rest)? + 1 {
            return Err(Error::Internal(format!(
                "root {} is not forced into every maximum independent set of its component",
                blk.root
            )));
        }
    }
    stats.bipartite_calls += 1;
    let y_h = shrink_blocking_set_bipartite(&aux.h, &aux.side_a, &aux.side_b, &aux.y_h)?;
    let mut out = VertexSet::new();
    for z in y_h {
        let blk = aux
            .blocks
            .iter()
            .find(|b| b.z_plus.contains(&z) || b.z_minus.contains(&z))
            .expect("every vertex of H lies in a block");
        if blk.z_plus.contains(&z) {
            if y.contains(&blk.root) {
                out.insert(blk.root);
            } else {
                let part = minus(&blk.component, &g.closed_neighborhood(blk.root));
                out.extend(shrink_rec(
                    &g.induced(&part)?,
                    &y.intersection(&part).copied().collect(),
                    stats,
                    depth + 1,
                )?);
            }
        } else {
            let part = minus(&blk.component, &VertexSet::from([blk.root]));
            out.extend(shrink_rec(
                &g.induced(&part)?,
                &y.intersection(&part).copied().collect(),
                stats,
                depth + 1,
            )?);
        }
    }
    Ok(out)
}
