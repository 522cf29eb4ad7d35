//! Reduction traces: one event per graph or parameter change, serialised
//! as JSON lines and replayable against the input instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};

use super::Instance;

/// Value of the `schema` field on every serialised event.
pub const TRACE_SCHEMA: &str = "bridgedepth.trace/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    Rule1,
    Rule2,
    Mr1,
    Mr2,
    Mr3,
    Mr4,
    Mr5,
    Recurse,
    ShortCircuit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Op {
    DeleteVertices {
        vertices: Vec<Vertex>,
    },
    DeleteEdges {
        edges: Vec<Edge>,
    },
    /// Replace u and v by the fresh vertex `into`.
    Identify {
        u: Vertex,
        v: Vertex,
        into: Vertex,
    },
    AddVertex {
        vertex: Vertex,
    },
    AddToModulator {
        vertices: Vec<Vertex>,
    },
    SetC {
        c: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Size {
    pub n: usize,
    pub m: usize,
}

impl Size {
    pub fn of(g: &Graph) -> Self {
        Size { n: g.n(), m: g.m() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub schema: String,
    pub step: usize,
    pub rule: RuleId,
    /// Smallest id of the remainder component the rule acted on.
    pub location: Option<Vertex>,
    pub op: Op,
    pub dk: i64,
    pub before: Size,
    pub after: Size,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub events: Vec<TraceEvent>,
}

/// Applies one operation to graph, modulator and c.
pub(crate) fn apply_op(g: &mut Graph, x: &mut VertexSet, c: &mut u32, op: &Op) -> Result<()> {
    match op {
        Op::DeleteVertices { vertices } => {
            let s: VertexSet = vertices.iter().copied().collect();
            *g = g.delete_vertices(&s)?;
            x.retain(|v| !s.contains(v));
        }
        Op::DeleteEdges { edges } => {
            *g = g.delete_edges(&edges.iter().copied().collect::<EdgeSet>())?;
        }
        Op::Identify { u, v, into } => {
            let (h, w) = g.identify_vertices(*u, *v)?;
            if w != *into {
                return Err(Error::InvalidInput(format!(
                    "identification minted {w}, trace says {into}"
                )));
            }
            let in_x = x.remove(u) | x.remove(v);
            if in_x {
                x.insert(w);
            }
            *g = h;
        }
        Op::AddVertex { vertex } => {
            if g.has_vertex(*vertex) || *vertex < g.next_id() {
                return Err(Error::InvalidInput(format!(
                    "vertex id {vertex} is not fresh"
                )));
            }
            g.add_vertex(*vertex);
        }
        Op::AddToModulator { vertices } => {
            let s: VertexSet = vertices.iter().copied().collect();
            g.check_subset(&s)?;
            x.extend(s);
        }
        Op::SetC { c: new } => *c = *new,
    }
    Ok(())
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Total change of k over the trace.
    pub fn total_dk(&self) -> i64 {
        self.events.iter().map(|e| e.dk).sum()
    }

    pub fn to_json_lines(&self) -> String {
        self.events
            .iter()
            .map(|e| serde_json::to_string(e).expect("trace events serialise") + "\n")
            .collect()
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut events = Vec::new();
        for (i, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let e: TraceEvent = serde_json::from_str(line).map_err(|err| Error::Parse {
                line: i + 1,
                message: err.to_string(),
            })?;
            if e.schema != TRACE_SCHEMA {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("unknown schema {}", e.schema),
                });
            }
            events.push(e);
        }
        Ok(ReductionTrace { events })
    }

    /// Re-applies every event to `input`, checking recorded sizes.
    pub fn replay(&self, input: &Instance) -> Result<Instance> {
        let (mut g, mut x, mut k, mut c) = (
            input.graph.clone(),
            input.modulator.clone(),
            input.k,
            input.c,
        );
        for e in &self.events {
            if Size::of(&g) != e.before {
                return Err(Error::InvalidInput(format!(
                    "step {}: size before does not match",
                    e.step
                )));
            }
            apply_op(&mut g, &mut x, &mut c, &e.op)?;
            k += e.dk;
            if Size::of(&g) != e.after {
                return Err(Error::InvalidInput(format!(
                    "step {}: size after does not match",
                    e.step
                )));
            }
        }
        Instance::new(g, x, k, c)
    }
}
