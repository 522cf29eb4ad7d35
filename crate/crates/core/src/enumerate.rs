//! Canonical labelling of small graphs and exhaustive generation of graphs
//! up to isomorphism.

use std::collections::HashSet;

use crate::dense::{bit, bits, BitGraph, Mask};

/// Largest vertex count [`canonical_code`] accepts (the code is one bit per
/// vertex pair in a `u128`).
pub const MAX_CANON: usize = 16;

/// An isomorphism-invariant code: equal codes iff isomorphic graphs.
///
/// Degree partition, colour refinement, then individualisation of each
/// vertex of the first non-singleton cell; the code is the maximum
/// adjacency string over all leaves of that search.
pub fn canonical_code(adj: &[Mask]) -> u128 {
    let n = adj.len();
    assert!(
        n <= MAX_CANON,
        "canonical form limited to {MAX_CANON} vertices"
    );
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (adj[v].count_ones(), v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if adj[c[0]].count_ones() == adj[v].count_ones() => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(adj, cells, &mut best);
    best.unwrap_or(0)
}

fn refine(adj: &[Mask], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<Mask> = cells
            .iter()
            .map(|c| c.iter().fold(0, |m, &v| m | bit(v)))
            .collect();
        let mut out = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                out.push(cell.clone());
                continue;
            }
            let sig = |v: usize| -> Vec<u32> {
                masks.iter().map(|m| (adj[v] & m).count_ones()).collect()
            };
            let mut keyed: Vec<(Vec<u32>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            out.push(vec![keyed[0].1]);
            for w in keyed.windows(2) {
                if w[0].0 != w[1].0 {
                    out.push(Vec::new());
                    changed = true;
                }
                let last = out.len() - 1;
                out[last].push(w[1].1);
            }
        }
        cells = out;
        if !changed {
            return cells;
        }
    }
}

fn search(adj: &[Mask], cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    let cells = refine(adj, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let mut code = 0u128;
            for i in 0..order.len() {
                for j in i + 1..order.len() {
                    code = (code << 1) | ((adj[order[i]] >> order[j]) & 1) as u128;
                }
            }
            if best.is_none_or(|b| code > b) {
                *best = Some(code);
            }
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut next = cells[..target].to_vec();
                next.push(vec![v]);
                next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
                next.extend_from_slice(&cells[target + 1..]);
                search(adj, next, best);
            }
        }
    }
}

/// All graphs on exactly `n` vertices up to isomorphism, built by adding a
/// vertex with every possible neighbourhood to each graph on n−1 vertices.
pub fn graphs_on(n: usize) -> Vec<BitGraph> {
    let mut level: Vec<Vec<Mask>> = vec![Vec::new()];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nb in 0..(1u64 << k) {
                let mut adj = g.clone();
                for i in bits(nb) {
                    adj[i] |= bit(k);
                }
                adj.push(nb);
                if seen.insert(canonical_code(&adj)) {
                    next.push(adj);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(BitGraph::from_adj).collect()
}

/// All graphs on 0..=n vertices up to isomorphism, smallest first.
pub fn graphs_up_to(n: usize) -> Vec<BitGraph> {
    (0..=n).flat_map(graphs_on).collect()
}

/// Connected graphs on 1..=n vertices up to isomorphism.
pub fn connected_graphs_up_to(n: usize) -> Vec<BitGraph> {
    (1..=n)
        .flat_map(graphs_on)
        .filter(|g| g.is_connected(g.full()))
        .collect()
}
