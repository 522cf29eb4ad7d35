//! Deterministic graph families. Vertex ids start at 1 so that generated
//! graphs dump to files without relabelling.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub fn path(n: u32) -> Graph {
    let mut g = Graph::with_vertices(1..=n);
    for v in 1..n {
        g.add_edge(v, v + 1).unwrap();
    }
    g
}

pub fn cycle(n: u32) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    let mut g = path(n);
    g.add_edge(n, 1).unwrap();
    g
}

pub fn complete(n: u32) -> Graph {
    let mut g = Graph::with_vertices(1..=n);
    for u in 1..=n {
        for v in u + 1..=n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// The t×t grid, row-major ids.
pub fn grid(t: u32) -> Graph {
    let id = |r: u32, c: u32| r * t + c + 1;
    let mut g = Graph::with_vertices(1..=t * t);
    for r in 0..t {
        for c in 0..t {
            if c + 1 < t {
                g.add_edge(id(r, c), id(r, c + 1)).unwrap();
            }
            if r + 1 < t {
                g.add_edge(id(r, c), id(r + 1, c)).unwrap();
            }
        }
    }
    g
}

/// Ids of (a_i, b_i, c_i) for i = 1..=t; `None` marks a removed vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleLabels {
    pub a: Vec<Option<Vertex>>,
    pub b: Vec<Option<Vertex>>,
    pub c: Vec<Option<Vertex>>,
}

impl TriangleLabels {
    /// Ids assigned in the order a_1, b_1, c_1, a_2, ..., skipping removed
    /// vertices.
    pub fn new(t: usize, truncated: bool) -> Self {
        let mut next = 1;
        let mut take = |present: bool| {
            present.then(|| {
                next += 1;
                next - 1
            })
        };
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..t {
            a.push(take(!(truncated && i == 0)));
            b.push(take(!(truncated && i + 1 == t)));
            c.push(take(true));
        }
        TriangleLabels { a, b, c }
    }
}

fn build_triangle_path(t: usize, truncated: bool) -> Graph {
    let l = TriangleLabels::new(t, truncated);
    let all = l.a.iter().chain(&l.b).chain(&l.c).flatten().copied();
    let mut g = Graph::with_vertices(all);
    let mut join = |x: Option<Vertex>, y: Option<Vertex>| {
        if let (Some(x), Some(y)) = (x, y) {
            g.add_edge(x, y).unwrap();
        }
    };
    for i in 0..t {
        join(l.a[i], l.b[i]);
        join(l.b[i], l.c[i]);
        join(l.a[i], l.c[i]);
        if i + 1 < t {
            join(l.b[i], l.a[i + 1]);
        }
    }
    g
}

/// t triangles {a_i, b_i, c_i} chained by the edges {b_i, a_{i+1}}.
pub fn triangle_path(t: usize) -> Graph {
    build_triangle_path(t, false)
}

/// The triangle-path of length t without a_1 and b_t.
pub fn truncated_triangle_path(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidInput(
            "truncated triangle-path needs t >= 2".into(),
        ));
    }
    Ok(build_triangle_path(t, true))
}

/// {a_1, c_1, b_t, c_t} ∪ {c_i : 2 ≤ i ≤ t−1}, a minimal blocking set of
/// the triangle-path of length t ≥ 2.
pub fn triangle_path_blocking_set(t: usize) -> Result<VertexSet> {
    if t < 2 {
        return Err(Error::InvalidInput("needs t >= 2".into()));
    }
    let l = TriangleLabels::new(t, false);
    let mut y: VertexSet = l.c.iter().flatten().copied().collect();
    y.insert(l.a[0].unwrap());
    y.insert(l.b[t - 1].unwrap());
    Ok(y)
}

/// {c_1, ..., c_t} in the truncated triangle-path of length t.
pub fn truncated_blocking_set(t: usize) -> Result<VertexSet> {
    if t < 2 {
        return Err(Error::InvalidInput("needs t >= 2".into()));
    }
    Ok(TriangleLabels::new(t, true)
        .c
        .iter()
        .flatten()
        .copied()
        .collect())
}

/// Two triangles sharing one vertex.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
}
