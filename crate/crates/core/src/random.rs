//! Seeded random graphs and kernelization instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocking::is_blocking_set;
use crate::bridge_depth::is_bd_at_most;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::kernel::Instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) on ids 0..n.
pub fn gnp(rng: &mut impl Rng, n: u32, p: f64) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A forest on ids 0..n where each vertex joins a random earlier vertex
/// with probability `attach`, plus `extra` random non-edges turned on.
pub fn sparse_graph(rng: &mut impl Rng, n: u32, attach: f64, extra: usize) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for v in 1..n {
        if rng.gen_bool(attach) {
            g.add_edge(rng.gen_range(0..v), v).unwrap();
        }
    }
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random bipartite graph with sides A = 0..a and B = a..a+b.
pub fn random_bipartite(
    rng: &mut impl Rng,
    a: u32,
    b: u32,
    p: f64,
) -> (Graph, VertexSet, VertexSet) {
    let mut g = Graph::with_vertices(0..a + b);
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    (g, (0..a).collect(), (a..a + b).collect())
}

/// A blocking set drawn by keeping each vertex with probability `p`,
/// redrawn until blocking. Falls back to V(G) after `tries` draws; `None`
/// for the empty graph.
pub fn random_blocking_set(
    rng: &mut impl Rng,
    g: &Graph,
    p: f64,
    tries: usize,
) -> Result<Option<VertexSet>> {
    if g.is_empty() {
        return Ok(None);
    }
    for _ in 0..tries {
        let y: VertexSet = g.vertices().filter(|_| rng.gen_bool(p)).collect();
        if !y.is_empty() && is_blocking_set(g, &y)?.is_some() {
            return Ok(Some(y));
        }
    }
    Ok(Some(g.vertex_set()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceParams {
    pub max_vertices: u32,
    pub max_modulator: u32,
    pub c: u32,
    /// Probability of each modulator-remainder edge.
    pub cross_prob: f64,
    /// Probability of each edge inside the modulator.
    pub inner_prob: f64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            max_vertices: 18,
            max_modulator: 4,
            c: 1,
            cross_prob: 0.25,
            inner_prob: 0.3,
        }
    }
}

/// A remainder with bridge-depth at most c (sparse graphs, rejected until
/// they qualify) plus a planted modulator. k is drawn from 0..=|V|.
pub fn random_instance(rng: &mut impl Rng, p: &InstanceParams) -> Result<Instance> {
    let nx = rng.gen_range(1..=p.max_modulator.min(p.max_vertices - 1));
    let nr = rng.gen_range(1..=p.max_vertices - nx);
    let mut g = loop {
        let extra = rng.gen_range(0..=nr as usize / 3);
        let attach = *[0.7, 0.85, 1.0].choose(rng).unwrap();
        let r = sparse_graph(rng, nr, attach, extra);
        if is_bd_at_most(&r, p.c as usize)? {
            break r;
        }
    };
    let xs: VertexSet = (nr..nr + nx).collect();
    for &x in &xs {
        g.add_vertex(x);
        for v in 0..nr {
            if rng.gen_bool(p.cross_prob) {
                g.add_edge(x, v)?;
            }
        }
    }
    for &x in &xs {
        for &y in xs.range(x + 1..) {
            if rng.gen_bool(p.inner_prob) {
                g.add_edge(x, y)?;
            }
        }
    }
    let k = rng.gen_range(0..=g.n() as i64);
    Instance::new(g, xs, k, p.c)
}
