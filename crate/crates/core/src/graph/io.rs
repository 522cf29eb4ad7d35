//! Text formats.
//!
//! Graph file: `p <n> <m>` header, optional `v <id>` lines, `e <u> <v>` edge
//! lines with 1-based ids, `#` comments. Instance files additionally allow
//! `x <id>` (modulator vertex), `k <int>` and `c <int>`. Loaded vertices keep
//! their file ids, so traces refer to the same numbers as the input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Graph, Vertex, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k: Option<i64>,
    pub c: Option<u32>,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    match tok.map(str::parse::<T>) {
        Some(Ok(x)) => Ok(x),
        Some(Err(_)) => err(line, format!("malformed {what}")),
        None => err(line, format!("missing {what}")),
    }
}

fn parse(text: &str, instance: bool) -> Result<InstanceFile> {
    let mut header: Option<(usize, u32, usize)> = None;
    let mut graph = Graph::new();
    let mut modulator = VertexSet::new();
    let mut k = None;
    let mut c = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut toks = body.split_whitespace();
        let kind = toks.next().unwrap();
        if kind != "p" && header.is_none() {
            return err(line, "record before `p` header");
        }
        let n = header.map(|h| h.1).unwrap_or(0);
        let vertex = |tok: Option<&str>| -> Result<Vertex> {
            let v: Vertex = parse_num(tok, line, "vertex id")?;
            if v == 0 || v > n {
                return err(line, format!("vertex id {v} out of range 1..={n}"));
            }
            Ok(v)
        };
        match kind {
            "p" => {
                if header.is_some() {
                    return err(line, "duplicate `p` header");
                }
                let n: u32 = parse_num(toks.next(), line, "vertex count")?;
                let m: usize = parse_num(toks.next(), line, "edge count")?;
                header = Some((line, n, m));
                graph = Graph::with_vertices(1..=n);
            }
            "v" => {
                vertex(toks.next())?;
            }
            "e" => {
                let u = vertex(toks.next())?;
                let v = vertex(toks.next())?;
                if u == v {
                    return err(line, format!("self-loop at {u}"));
                }
                if !graph.add_edge(u, v)? {
                    return err(line, format!("duplicate edge {u} {v}"));
                }
            }
            "x" if instance => {
                let v = vertex(toks.next())?;
                if !modulator.insert(v) {
                    return err(line, format!("duplicate modulator vertex {v}"));
                }
            }
            "k" if instance => {
                if k.is_some() {
                    return err(line, "duplicate `k` record");
                }
                k = Some(parse_num(toks.next(), line, "k")?);
            }
            "c" if instance => {
                if c.is_some() {
                    return err(line, "duplicate `c` record");
                }
                c = Some(parse_num(toks.next(), line, "c")?);
            }
            other => return err(line, format!("unknown record type `{other}`")),
        }
        if toks.next().is_some() {
            return err(line, "trailing tokens");
        }
    }
    let Some((hline, _, m)) = header else {
        return err(text.lines().count().max(1), "missing `p` header");
    };
    if graph.m() != m {
        return err(
            hline,
            format!("header declares {m} edges, found {}", graph.m()),
        );
    }
    Ok(InstanceFile {
        graph,
        modulator,
        k,
        c,
    })
}

pub fn load_graph(text: &str) -> Result<Graph> {
    parse(text, false).map(|f| f.graph)
}

pub fn load_instance(text: &str) -> Result<InstanceFile> {
    parse(text, true)
}

/// Rank-based relabelling to 1..=n in ascending id order. Identity for
/// graphs loaded from a file.
pub fn relabeling(g: &Graph) -> BTreeMap<Vertex, Vertex> {
    g.vertices().zip(1..).collect()
}

/// Canonical text: header then edges in ascending order.
pub fn dump_graph(g: &Graph) -> String {
    let ids = relabeling(g);
    let mut out = format!("p {} {}\n", g.n(), g.m());
    write_edges(&mut out, g, &ids);
    out
}

pub fn dump_instance(g: &Graph, modulator: &VertexSet, k: i64, c: u32) -> String {
    let ids = relabeling(g);
    let mut out = format!("p {} {}\nk {k}\nc {c}\n", g.n(), g.m());
    let mut xs: Vec<Vertex> = modulator.iter().map(|v| ids[v]).collect();
    xs.sort_unstable();
    for x in xs {
        writeln!(out, "x {x}").unwrap();
    }
    write_edges(&mut out, g, &ids);
    out
}

fn write_edges(out: &mut String, g: &Graph, ids: &BTreeMap<Vertex, Vertex>) {
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (ids[&u], ids[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    for (u, v) in edges {
        writeln!(out, "e {u} {v}").unwrap();
    }
}
