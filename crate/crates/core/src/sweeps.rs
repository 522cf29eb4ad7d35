//! Exhaustive and randomized verification sweeps behind `selftest` and the
//! acceptance suite. Each sweep takes the implementation under test as a
//! closure, so deliberately broken variants can be shown to be caught.
//! Cases run in parallel and are merged in input order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blocking::{
    is_blocking_set, mbs, shrink_blocking_set_bipartite, shrink_blocking_set_with_stats,
    ShrinkStats,
};
use crate::bridge_depth::{
    bridge_depth, bridge_depth_reference, fvs_number, is_bd_at_most, tree_depth, treewidth,
};
use crate::enumerate::{connected_graphs_up_to, graphs_up_to};
use crate::error::{Error, Result};
use crate::generators::{truncated_blocking_set, truncated_triangle_path};
use crate::graph::{
    contract_all_bridges, edge, find_bridges, Edge, EdgeSet, Graph, Vertex, VertexSet,
};
use crate::independence::{alpha_number, conf};
use crate::kernel::{kernelize, Check, Instance, KernelOptions, KernelOutput};
use crate::minors::{
    necklace_minor_length, necklace_model_to_triangle_path, necklace_packing,
    triangle_path_minor_length, triangle_path_pattern, validate_model,
};
use crate::oracle::{
    naive_alpha, naive_bridges, naive_conf, naive_is_blocking, naive_mbs, ORACLE_CAP,
};
use crate::random::{
    gnp, random_bipartite, random_blocking_set, random_instance, rng, InstanceParams,
};

pub const SELFTEST_SCHEMA: &str = "bridgedepth.selftest/1";

/// Counterexamples kept per report.
pub const MAX_CERTIFICATES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Smoke,
    Small,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "smoke" => Ok(Level::Smoke),
            "1" | "small" => Ok(Level::Small),
            "2" | "full" => Ok(Level::Full),
            _ => Err(Error::InvalidInput(format!(
                "unknown level `{s}` (smoke, small, full or 0-2)"
            ))),
        }
    }
}

impl Level {
    fn pick<T>(self, smoke: T, small: T, full: T) -> T {
        match self {
            Level::Smoke => smoke,
            Level::Small => small,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepId {
    /// mbs(G) ≤ 2^bd(G) on all small connected graphs.
    MbsBound,
    /// bd and mbs of the truncated triangle-paths U_{2^c}.
    Tightness,
    /// Structural properties of bridge-depth on random graphs.
    BridgeDepthProperties,
    /// Blocking-set shrinking in bipartite graphs.
    BipartiteShrink,
    /// Blocking-set shrinking in general graphs.
    GeneralShrink,
    /// Kernelization equivalence and checked-mode assertions.
    Kernel,
    /// Necklace packing number on bridgeless graphs.
    Packing,
    /// Triangle-path versus necklace minors and the model converter.
    TrianglePath,
    /// α and bridges against the powerset and deletion oracles.
    Oracles,
    /// conf against the powerset oracle.
    Conflicts,
}

impl SweepId {
    pub const ALL: [SweepId; 10] = [
        SweepId::MbsBound,
        SweepId::Tightness,
        SweepId::BridgeDepthProperties,
        SweepId::BipartiteShrink,
        SweepId::GeneralShrink,
        SweepId::Kernel,
        SweepId::Packing,
        SweepId::TrianglePath,
        SweepId::Oracles,
        SweepId::Conflicts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepId::MbsBound => "mbs_bound",
            SweepId::Tightness => "tightness",
            SweepId::BridgeDepthProperties => "bridge_depth_properties",
            SweepId::BipartiteShrink => "bipartite_shrink",
            SweepId::GeneralShrink => "general_shrink",
            SweepId::Kernel => "kernel",
            SweepId::Packing => "packing",
            SweepId::TrianglePath => "triangle_path",
            SweepId::Oracles => "oracles",
            SweepId::Conflicts => "conflicts",
        }
    }
}

impl fmt::Display for SweepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A graph spelled out by its ids and edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphCert {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl GraphCert {
    pub fn of(g: &Graph) -> Self {
        GraphCert {
            vertices: g.vertices().collect(),
            edges: g.edges().collect(),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        let mut g = Graph::with_vertices(self.vertices.iter().copied());
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub sweep: SweepId,
    pub case: usize,
    pub graph: GraphCert,
    /// Inputs beyond the graph and the values the implementation claimed.
    pub data: Value,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub sweep: SweepId,
    pub level: Level,
    pub cases: usize,
    pub checks: usize,
    pub violations: usize,
    /// Named tallies, e.g. coverage or violations per kind.
    pub counts: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Default)]
struct Outcome {
    cases: usize,
    checks: usize,
    counts: BTreeMap<String, usize>,
    failures: Vec<Counterexample>,
}

impl Outcome {
    fn count(&mut self, key: impl Into<String>, by: usize) {
        *self.counts.entry(key.into()).or_default() += by;
    }
}

/// Collects the failures of one case.
struct Case {
    sweep: SweepId,
    index: usize,
    out: Outcome,
}

impl Case {
    fn new(sweep: SweepId, index: usize) -> Self {
        Case {
            sweep,
            index,
            out: Outcome {
                cases: 1,
                ..Outcome::default()
            },
        }
    }

    /// Records one check; a failure when `ok` is false.
    fn check(
        &mut self,
        ok: bool,
        g: &Graph,
        data: impl FnOnce() -> Value,
        detail: impl FnOnce() -> String,
    ) -> bool {
        self.out.checks += 1;
        if !ok {
            self.fail(g, data(), detail());
        }
        ok
    }

    fn fail(&mut self, g: &Graph, data: Value, detail: String) {
        self.out.failures.push(Counterexample {
            sweep: self.sweep,
            case: self.index,
            graph: GraphCert::of(g),
            data,
            detail,
        });
    }

    /// Unwraps a library result, turning an error into a failure.
    fn ok<T>(&mut self, r: Result<T>, g: &Graph, data: impl FnOnce() -> Value) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.out.checks += 1;
                self.fail(g, data(), format!("error: {e}"));
                None
            }
        }
    }
}

fn run<T: Sync>(
    sweep: SweepId,
    level: Level,
    cases: &[T],
    f: impl Fn(&mut Case, &T) + Sync,
) -> SweepReport {
    let parts: Vec<Outcome> = cases
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut case = Case::new(sweep, i);
            f(&mut case, t);
            case.out
        })
        .collect();
    let mut total = Outcome::default();
    for p in parts {
        total.cases += p.cases;
        total.checks += p.checks;
        for (k, v) in p.counts {
            *total.counts.entry(k).or_default() += v;
        }
        total.failures.extend(p.failures);
    }
    let violations = total.failures.len();
    total.failures.truncate(MAX_CERTIFICATES);
    SweepReport {
        schema: SELFTEST_SCHEMA,
        sweep,
        level,
        cases: total.cases,
        checks: total.checks,
        violations,
        counts: total.counts,
        counterexamples: total.failures,
    }
}

/// Per-case generator, independent of the thread schedule.
fn case_rng(seed: u64, sweep: SweepId, index: usize) -> rand_chacha::ChaCha8Rng {
    rng(seed ^ ((sweep as u64 + 1) << 48) ^ index as u64)
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn set_from(v: &Value) -> VertexSet {
    v.as_array()
        .map(|a| {
            a.iter()
                .filter_map(|x| x.as_u64())
                .map(|x| x as Vertex)
                .collect()
        })
        .unwrap_or_default()
}

fn dense_graphs(n: usize, connected: bool) -> Vec<Graph> {
    let bits = if connected {
        connected_graphs_up_to(n)
    } else {
        graphs_up_to(n)
    };
    bits.iter().map(|b| b.to_graph(b.full())).collect()
}

pub type GraphFn<'a, T> = &'a (dyn Fn(&Graph) -> Result<T> + Sync);
pub type ConfFn<'a> = &'a (dyn Fn(&Graph, &VertexSet, &VertexSet) -> Result<usize> + Sync);
pub type BipartiteShrinkFn<'a> =
    &'a (dyn Fn(&Graph, &VertexSet, &VertexSet, &VertexSet) -> Result<VertexSet> + Sync);
pub type ShrinkFn<'a> = &'a (dyn Fn(&Graph, &VertexSet) -> Result<(VertexSet, ShrinkStats)> + Sync);
pub type KernelFn<'a> = &'a (dyn Fn(&Instance, &KernelOptions) -> Result<KernelOutput> + Sync);

fn lib_mbs(g: &Graph) -> Result<usize> {
    mbs(g).map(|r| r.value)
}

/// mbs(G) ≤ 2^bd(G) for every connected graph on at most 4/6/7 vertices.
pub fn sweep_mbs_bound(
    level: Level,
    mbs_impl: GraphFn<usize>,
    bd_impl: GraphFn<usize>,
) -> SweepReport {
    let graphs = dense_graphs(level.pick(4, 6, 7), true);
    run(SweepId::MbsBound, level, &graphs, |case, g| {
        let none = || json!({});
        let (Some(m), Some(d)) = (case.ok(mbs_impl(g), g, none), case.ok(bd_impl(g), g, none))
        else {
            return;
        };
        case.out.count(format!("bd={d}"), 1);
        case.check(
            m <= 1 << d,
            g,
            || json!({ "mbs": m, "bd": d }),
            || format!("mbs = {m} exceeds 2^bd = {}", 1 << d),
        );
    })
}

/// bd(U_{2^c}) = c, mbs(U_{2^c}) = 2^c and the canonical witness is a
/// minimal blocking set, for c in {1}, {1,2} or {1,2,3}.
pub fn sweep_tightness(level: Level) -> SweepReport {
    let cs: Vec<u32> = (1..=level.pick(1, 2, 3)).collect();
    run(SweepId::Tightness, level, &cs, |case, &c| {
        let t = 1usize << c;
        let empty = Graph::new();
        let data = || json!({ "c": c });
        let Some(g) = case.ok(truncated_triangle_path(t), &empty, data) else {
            return;
        };
        let Some(y) = case.ok(truncated_blocking_set(t), &g, data) else {
            return;
        };
        if let Some(d) = case.ok(bridge_depth(&g), &g, data) {
            case.check(
                d == c as usize,
                &g,
                || json!({ "c": c, "bd": d }),
                || format!("bd = {d}, expected {c}"),
            );
        }
        if let Some(m) = case.ok(mbs(&g), &g, data) {
            let v = m.value;
            case.check(
                v == t,
                &g,
                || json!({ "c": c, "mbs": v }),
                || format!("mbs = {v}, expected {t}"),
            );
        }
        case.check(
            y.len() == t,
            &g,
            || json!({ "c": c, "witness": set_json(&y) }),
            || "witness size".into(),
        );
        if let Some(cert) = case.ok(is_blocking_set(&g, &y), &g, data) {
            case.check(
                cert.is_some(),
                &g,
                || json!({ "c": c, "witness": set_json(&y) }),
                || "witness not blocking".into(),
            );
        }
        for &v in &y {
            let mut smaller = y.clone();
            smaller.remove(&v);
            if let Some(cert) = case.ok(is_blocking_set(&g, &smaller), &g, data) {
                case.check(
                    cert.is_none(),
                    &g,
                    || json!({ "c": c, "witness": set_json(&y), "dropped": v }),
                    || format!("witness without {v} still blocks"),
                );
            }
        }
    })
}

/// Bridge-depth properties on 20/200/1000 random graphs: invariance under
/// bridge contraction, agreement with the definition-following reference,
/// tw ≤ bd ≤ td, bd ≤ fvs + 1, bd ≤ |X| + bd(G \ X), and monotonicity
/// under deleting or contracting one random edge.
pub fn sweep_bd_properties(level: Level, seed: u64, bd_impl: GraphFn<usize>) -> SweepReport {
    let (count, max_n) = level.pick((20, 8), (200, 10), (1000, 10));
    let idx: Vec<usize> = (0..count).collect();
    run(SweepId::BridgeDepthProperties, level, &idx, |case, &i| {
        let mut r = case_rng(seed, SweepId::BridgeDepthProperties, i);
        let n = r.gen_range(1..=max_n);
        let p = r.gen_range(0.1..0.7);
        let g = gnp(&mut r, n, p);
        let x: VertexSet = g.vertices().filter(|_| r.gen_bool(0.25)).collect();
        let edges: Vec<Edge> = g.edges().collect();
        let e = (!edges.is_empty()).then(|| edges[r.gen_range(0..edges.len())]);
        let data = || json!({ "x": set_json(&x), "edge": e });
        let Some(d) = case.ok(bd_impl(&g), &g, data) else {
            return;
        };
        let prop = |case: &mut Case, name: &str, ok: bool, values: Value| {
            case.out.count(format!("checked.{name}"), 1);
            case.check(
                ok,
                &g,
                || json!({ "property": name, "bd": d, "x": set_json(&x), "edge": e, "values": values }),
                || format!("{name} fails with bd = {d}"),
            );
        };
        let reference = bridge_depth_reference(&g);
        prop(
            case,
            "reference",
            reference == d,
            json!({ "reference": reference }),
        );
        let (contracted, _) = contract_all_bridges(&g);
        if let Some(dc) = case.ok(bd_impl(&contracted), &g, data) {
            prop(
                case,
                "bridge_contraction",
                dc == d,
                json!({ "contracted": dc }),
            );
        }
        if let (Some(tw), Some(td)) = (
            case.ok(treewidth(&g), &g, data),
            case.ok(tree_depth(&g), &g, data),
        ) {
            prop(
                case,
                "tw_bd_td",
                tw <= d && d <= td,
                json!({ "tw": tw, "td": td }),
            );
        }
        if let Some(f) = case.ok(fvs_number(&g), &g, data) {
            prop(case, "fvs", d <= f + 1, json!({ "fvs": f }));
        }
        let rest = g.delete_vertices(&x).expect("subset");
        if let Some(dr) = case.ok(bd_impl(&rest), &g, data) {
            prop(case, "modulator", d <= x.len() + dr, json!({ "rest": dr }));
        }
        if let Some((u, v)) = e {
            let deleted = g.delete_edges(&EdgeSet::from([edge(u, v)])).expect("edge");
            if let Some(dd) = case.ok(bd_impl(&deleted), &g, data) {
                prop(case, "edge_deletion", dd <= d, json!({ "deleted": dd }));
            }
            let (contracted, _) = g.identify_vertices(u, v).expect("edge");
            if let Some(dc) = case.ok(bd_impl(&contracted), &g, data) {
                prop(
                    case,
                    "edge_contraction",
                    dc <= d,
                    json!({ "contracted": dc }),
                );
            }
        }
    })
}

fn shrink_data(y: &VertexSet, out: &VertexSet) -> Value {
    json!({ "y": set_json(y), "output": set_json(out) })
}

/// Shrinking in 20/200/1000 random bipartite graphs on at most 8/12/12
/// vertices: the output is a blocking subset of Y of size at most 2, and a
/// pair has one vertex on each side.
pub fn sweep_bipartite_shrink(
    level: Level,
    seed: u64,
    shrink_impl: BipartiteShrinkFn,
) -> SweepReport {
    let (count, max_n) = level.pick((20, 8), (200, 12), (1000, 12));
    let idx: Vec<usize> = (0..count).collect();
    run(SweepId::BipartiteShrink, level, &idx, |case, &i| {
        let mut r = case_rng(seed, SweepId::BipartiteShrink, i);
        let total = r.gen_range(2..=max_n);
        let a = r.gen_range(1..total);
        let p = r.gen_range(0.1..0.8);
        let (g, sa, sb) = random_bipartite(&mut r, a, total - a, p);
        let q = r.gen_range(0.2..0.8);
        let Some(Some(y)) = case.ok(random_blocking_set(&mut r, &g, q, 30), &g, || json!({}))
        else {
            return;
        };
        let data = || json!({ "a": set_json(&sa), "y": set_json(&y) });
        let Some(out) = case.ok(shrink_impl(&g, &sa, &sb, &y), &g, data) else {
            return;
        };
        case.out.count(format!("output_size={}", out.len()), 1);
        let d = || shrink_data(&y, &out);
        case.check(out.is_subset(&y), &g, d, || {
            "output is not a subset of Y".into()
        });
        case.check(out.len() <= 2, &g, d, || {
            format!("output has {} vertices", out.len())
        });
        if out.len() == 2 {
            let in_a = out.iter().filter(|v| sa.contains(v)).count();
            case.check(in_a == 1, &g, d, || "pair lies on one side".into());
        }
        if let Some(cert) = case.ok(is_blocking_set(&g, &out), &g, d) {
            case.check(cert.is_some(), &g, d, || "output is not blocking".into());
        }
    })
}

/// Shrinking in 10/100/500 random graphs on at most 10 vertices with
/// bd ≤ 3: a blocking subset of Y with at most 2^bd vertices. Every
/// auxiliary bipartite graph built on the way passes its α checks, or the
/// call fails and is reported.
pub fn sweep_general_shrink(level: Level, seed: u64, shrink_impl: ShrinkFn) -> SweepReport {
    let count = level.pick(10, 100, 500);
    let idx: Vec<usize> = (0..count).collect();
    run(SweepId::GeneralShrink, level, &idx, |case, &i| {
        let mut r = case_rng(seed, SweepId::GeneralShrink, i);
        let g = loop {
            let n = r.gen_range(3..=10);
            let p = r.gen_range(0.25..0.6);
            let g = gnp(&mut r, n, p);
            if is_bd_at_most(&g, 3).unwrap_or(false) {
                break g;
            }
        };
        let q = r.gen_range(0.2..0.8);
        let Some(Some(y)) = case.ok(random_blocking_set(&mut r, &g, q, 30), &g, || json!({}))
        else {
            return;
        };
        let data = || json!({ "y": set_json(&y) });
        let Some(d) = case.ok(bridge_depth(&g), &g, data) else {
            return;
        };
        let Some((out, stats)) = case.ok(shrink_impl(&g, &y), &g, data) else {
            return;
        };
        case.out.count("auxiliary_builds", stats.auxiliary_builds);
        case.out.count("bipartite_calls", stats.bipartite_calls);
        case.out.count(format!("bd={d}"), 1);
        let dj = || json!({ "y": set_json(&y), "output": set_json(&out), "bd": d });
        case.check(out.is_subset(&y), &g, dj, || {
            "output is not a subset of Y".into()
        });
        case.check(out.len() <= 1 << d, &g, dj, || {
            format!("|Y'| = {} exceeds 2^bd = {}", out.len(), 1 << d)
        });
        if let Some(cert) = case.ok(is_blocking_set(&g, &out), &g, dj) {
            case.check(cert.is_some(), &g, dj, || "output is not blocking".into());
        }
    })
}

fn kernel_json(i: &Instance) -> Value {
    json!({ "graph": GraphCert::of(&i.graph), "modulator": set_json(&i.modulator), "k": i.k, "c": i.c })
}

fn kernel_from_json(v: &Value) -> Result<(Graph, VertexSet, i64)> {
    let cert = GraphCert {
        vertices: serde_json::from_value(v["graph"]["vertices"].clone()).unwrap_or_default(),
        edges: serde_json::from_value(v["graph"]["edges"].clone()).unwrap_or_default(),
    };
    Ok((
        cert.graph()?,
        set_from(&v["modulator"]),
        v["k"].as_i64().unwrap_or(0),
    ))
}

fn instance_data(inst: &Instance) -> Value {
    json!({ "modulator": set_json(&inst.modulator), "k": inst.k, "c": inst.c })
}

/// Kernelization on 10/100/500 random instances (|X| ≤ 4, |V| ≤ 12/18/18,
/// c alternating between 1 and 2 above smoke level), each with k swept over
/// 0..=|V|, in checked mode collecting every failed assertion. Each run must
/// be equivalent, no larger, replayable from its trace, and free of
/// assertion failures.
pub fn sweep_kernel(level: Level, seed: u64, kernel_impl: KernelFn) -> SweepReport {
    let (count, max_n) = level.pick((10, 12), (100, 18), (500, 18));
    let idx: Vec<usize> = (0..count).collect();
    let opts = KernelOptions::collecting();
    run(SweepId::Kernel, level, &idx, |case, &i| {
        let mut r = case_rng(seed, SweepId::Kernel, i);
        let c = if level == Level::Smoke {
            1
        } else {
            1 + (i % 2) as u32
        };
        let params = InstanceParams {
            max_vertices: max_n,
            c,
            ..InstanceParams::default()
        };
        let Some(base) = case.ok(
            random_instance(&mut r, &params),
            &Graph::new(),
            || json!({ "c": c }),
        ) else {
            return;
        };
        let g = base.graph.clone();
        let Some(alpha) = case.ok(alpha_number(&g), &g, || instance_data(&base)) else {
            return;
        };
        case.out.count(format!("c={c}"), 1);
        for k in 0..=g.n() as i64 {
            let inst = Instance { k, ..base.clone() };
            let data = || instance_data(&inst);
            case.out.count("runs", 1);
            let Some(out) = case.ok(kernel_impl(&inst, &opts), &g, data) else {
                continue;
            };
            for e in &out.trace.events {
                case.out.count(
                    format!(
                        "events.{}",
                        serde_json::to_value(e.rule).unwrap().as_str().unwrap()
                    ),
                    1,
                );
            }
            let kernel = &out.instance;
            let claim = || {
                let mut d = instance_data(&inst);
                d["output"] = kernel_json(kernel);
                d
            };
            if let Some(a2) = case.ok(alpha_number(&kernel.graph), &g, claim) {
                let (yes, yes2) = (alpha as i64 >= k, a2 as i64 >= kernel.k);
                case.check(yes == yes2, &g, claim, || {
                    format!("α = {alpha} vs k = {k} but α' = {a2} vs k' = {}", kernel.k)
                });
            }
            case.check(kernel.size() <= inst.size(), &g, claim, || {
                format!(
                    "output size {} exceeds input size {}",
                    kernel.size(),
                    inst.size()
                )
            });
            if let Some(replayed) = case.ok(out.trace.replay(&inst), &g, claim) {
                let d = || {
                    let mut d = claim();
                    d["replayed"] = kernel_json(&replayed);
                    d
                };
                case.check(replayed == *kernel, &g, d, || {
                    "trace replay differs from the output".into()
                });
            }
            let mut seen = Vec::<Check>::new();
            for v in &out.violations {
                case.out.count(
                    format!(
                        "violations.{}",
                        serde_json::to_value(v.check).unwrap().as_str().unwrap()
                    ),
                    1,
                );
                if !seen.contains(&v.check) {
                    seen.push(v.check);
                    let mut d = instance_data(&inst);
                    d["check"] = serde_json::to_value(v.check).unwrap();
                    d["step"] = json!(v.step);
                    case.out.checks += 1;
                    case.fail(&g, d, v.detail.clone());
                }
            }
            case.out.checks += 1;
        }
    })
}

/// For every connected bridgeless graph on at most 5/7/8 vertices with
/// nm(G) = t ≥ 1, no two vertex-disjoint N_t models exist.
pub fn sweep_packing(
    level: Level,
    packing_impl: &(dyn Fn(&Graph, usize) -> Result<usize> + Sync),
) -> SweepReport {
    let graphs: Vec<Graph> = dense_graphs(level.pick(5, 7, 8), true)
        .into_iter()
        .filter(|g| find_bridges(g).is_empty())
        .collect();
    run(SweepId::Packing, level, &graphs, |case, g| {
        let Some(nm) = case.ok(necklace_minor_length(g), g, || json!({})) else {
            return;
        };
        let t = nm.value;
        case.out.count(format!("nm={t}"), 1);
        if t == 0 {
            return;
        }
        let Some(nu) = case.ok(packing_impl(g, t), g, || json!({ "t": t })) else {
            return;
        };
        case.check(
            nu == 1,
            g,
            || json!({ "t": t, "packing": nu }),
            || format!("N_{t} packing number is {nu}"),
        );
    })
}

/// On every graph with at most 5/7/8 vertices, tpm(G) ≥ ⌊(nm(G)+1)/2⌋,
/// and when nm ≥ 1 the converted necklace model passes the validator.
pub fn sweep_triangle_path(level: Level) -> SweepReport {
    let graphs = dense_graphs(level.pick(5, 7, 8), false);
    run(SweepId::TrianglePath, level, &graphs, |case, g| {
        let (Some(nm), Some(tpm)) = (
            case.ok(necklace_minor_length(g), g, || json!({})),
            case.ok(triangle_path_minor_length(g), g, || json!({})),
        ) else {
            return;
        };
        let (t, p) = (nm.value, tpm.value);
        case.out.count(format!("nm={t}"), 1);
        case.check(
            p >= t.div_ceil(2),
            g,
            || json!({ "nm": t, "tpm": p }),
            || format!("tpm = {p} < ⌊(nm+1)/2⌋"),
        );
        if t >= 1 {
            let data = || json!({ "nm": t, "necklace_model": nm.model });
            if let Some(model) = case.ok(necklace_model_to_triangle_path(g, &nm.model), g, data) {
                let valid = validate_model(g, &triangle_path_pattern(t.div_ceil(2)), &model);
                case.check(valid.is_ok(), g, data, || {
                    format!("converted model rejected: {valid:?}")
                });
            }
        }
    })
}

/// α and the bridge set against the powerset and deletion oracles on every
/// graph with at most 5/7/8 vertices.
pub fn sweep_oracles(
    level: Level,
    alpha_impl: GraphFn<usize>,
    bridges_impl: &(dyn Fn(&Graph) -> EdgeSet + Sync),
) -> SweepReport {
    let graphs = dense_graphs(level.pick(5, 7, 8), false);
    run(SweepId::Oracles, level, &graphs, |case, g| {
        if let Some(a) = case.ok(alpha_impl(g), g, || json!({})) {
            let expected = naive_alpha(g);
            case.check(
                a == expected,
                g,
                || json!({ "alpha": a }),
                || format!("α = {a}, oracle says {expected}"),
            );
        }
        let b = bridges_impl(g);
        let expected = naive_bridges(g);
        case.check(
            b == expected,
            g,
            || json!({ "bridges": b }),
            || format!("bridges {b:?}, oracle says {expected:?}"),
        );
    })
}

/// conf_{R'}(X') against the oracle on every graph with at most 4/5/6
/// vertices, for all disjoint nonempty R' and independent nonempty X'.
pub fn sweep_conflicts(level: Level, conf_impl: ConfFn) -> SweepReport {
    let graphs = dense_graphs(level.pick(4, 5, 6), false);
    run(SweepId::Conflicts, level, &graphs, |case, g| {
        let ids: Vec<Vertex> = g.vertices().collect();
        // each vertex goes to R', X' or neither
        for code in 0..3usize.pow(ids.len() as u32) {
            let (mut rp, mut xp, mut c) = (VertexSet::new(), VertexSet::new(), code);
            for &v in &ids {
                match c % 3 {
                    1 => rp.insert(v),
                    2 => xp.insert(v),
                    _ => false,
                };
                c /= 3;
            }
            if rp.is_empty() || xp.is_empty() || !g.is_independent(&xp) {
                continue;
            }
            let data = || json!({ "r": set_json(&rp), "x": set_json(&xp) });
            let Some(got) = case.ok(conf_impl(g, &rp, &xp), g, data) else {
                continue;
            };
            let expected = naive_conf(g, &rp, &xp);
            case.check(
                got == expected,
                g,
                || json!({ "r": set_json(&rp), "x": set_json(&xp), "conf": got }),
                || format!("conf = {got}, oracle says {expected}"),
            );
        }
    })
}

/// Every sweep at `level` with the library implementations.
pub fn selftest(level: Level, seed: u64) -> Vec<SweepReport> {
    SweepId::ALL
        .iter()
        .map(|&s| run_sweep(s, level, seed))
        .collect()
}

pub fn run_sweep(sweep: SweepId, level: Level, seed: u64) -> SweepReport {
    match sweep {
        SweepId::MbsBound => sweep_mbs_bound(level, &lib_mbs, &bridge_depth),
        SweepId::Tightness => sweep_tightness(level),
        SweepId::BridgeDepthProperties => sweep_bd_properties(level, seed, &bridge_depth),
        SweepId::BipartiteShrink => {
            sweep_bipartite_shrink(level, seed, &shrink_blocking_set_bipartite)
        }
        SweepId::GeneralShrink => {
            sweep_general_shrink(level, seed, &shrink_blocking_set_with_stats)
        }
        SweepId::Kernel => sweep_kernel(level, seed, &kernelize),
        SweepId::Packing => sweep_packing(level, &necklace_packing),
        SweepId::TrianglePath => sweep_triangle_path(level),
        SweepId::Oracles => sweep_oracles(level, &alpha_number, &find_bridges),
        SweepId::Conflicts => sweep_conflicts(level, &conf),
    }
}

impl Counterexample {
    /// Re-checks the certificate against the independent oracles where they
    /// apply (at most [`ORACLE_CAP`] vertices), otherwise against the
    /// library. True when the certificate shows a real defect: either the
    /// property fails on the oracle values, or the recorded implementation
    /// values disagree with them.
    pub fn revalidate(&self) -> Result<bool> {
        let g = self.graph.graph()?;
        let d = &self.data;
        let small = g.n() <= ORACLE_CAP;
        let num = |key: &str| d.get(key).and_then(Value::as_u64).map(|v| v as usize);
        let alpha = |h: &Graph| -> Result<usize> {
            if h.n() <= ORACLE_CAP {
                Ok(naive_alpha(h))
            } else {
                alpha_number(h)
            }
        };
        let blocking = |y: &VertexSet| -> Result<bool> {
            if small {
                Ok(naive_is_blocking(&g, y))
            } else {
                Ok(is_blocking_set(&g, y)?.is_some())
            }
        };
        if self.detail.starts_with("error: ") {
            // a failing call is a defect whenever the inputs were valid
            return Ok(true);
        }
        Ok(match self.sweep {
            SweepId::MbsBound => {
                let (m, b) = (naive_mbs(&g), bridge_depth_reference(&g));
                m > 1 << b || num("mbs") != Some(m) || num("bd") != Some(b)
            }
            SweepId::Tightness => {
                let c = num("c").unwrap_or(0);
                let witness = set_from(&d["witness"]);
                let bd_off = num("bd").is_some() && bridge_depth_reference(&g) != c;
                let mbs_off = num("mbs").is_some()
                    && num("mbs") != Some(if small { naive_mbs(&g) } else { 1 << c });
                let witness_off = match num("dropped") {
                    Some(v) => {
                        let mut w = witness.clone();
                        w.remove(&(v as Vertex));
                        blocking(&w)?
                    }
                    None => {
                        !witness.is_empty() && (!blocking(&witness)? || witness.len() != 1 << c)
                    }
                };
                bd_off || mbs_off || witness_off
            }
            SweepId::BridgeDepthProperties => {
                let b = bridge_depth_reference(&g);
                if num("bd") != Some(b) {
                    return Ok(true);
                }
                let x = set_from(&d["x"]);
                let e = d["edge"].as_array().map(|a| {
                    (
                        a[0].as_u64().unwrap() as Vertex,
                        a[1].as_u64().unwrap() as Vertex,
                    )
                });
                match d["property"].as_str().unwrap_or("") {
                    "reference" => num("bd") != Some(b),
                    "bridge_contraction" => {
                        bridge_depth_reference(&contract_all_bridges(&g).0) != b
                    }
                    "tw_bd_td" => !(treewidth(&g)? <= b && b <= tree_depth(&g)?),
                    "fvs" => b > fvs_number(&g)? + 1,
                    "modulator" => b > x.len() + bridge_depth_reference(&g.delete_vertices(&x)?),
                    "edge_deletion" => {
                        let (u, v) = e.unwrap();
                        bridge_depth_reference(&g.delete_edges(&EdgeSet::from([edge(u, v)]))?) > b
                    }
                    "edge_contraction" => {
                        let (u, v) = e.unwrap();
                        bridge_depth_reference(&g.identify_vertices(u, v)?.0) > b
                    }
                    _ => false,
                }
            }
            SweepId::BipartiteShrink | SweepId::GeneralShrink => {
                let (y, out) = (set_from(&d["y"]), set_from(&d["output"]));
                let limit = match self.sweep {
                    SweepId::BipartiteShrink => 2,
                    _ => 1 << bridge_depth_reference(&g),
                };
                let split = self.sweep != SweepId::BipartiteShrink
                    || out.len() != 2
                    || g.bipartition()
                        .is_some_and(|(a, _)| out.iter().filter(|v| a.contains(v)).count() == 1);
                !out.is_subset(&y) || out.len() > limit || !blocking(&out)? || !split
            }
            SweepId::Kernel => {
                let modulator = set_from(&d["modulator"]);
                let k = d["k"].as_i64().unwrap_or(0);
                let c = num("c").unwrap_or(0) as u32;
                let inst = Instance::new(g.clone(), modulator, k, c)?;
                if let Some(replayed) = d.get("replayed") {
                    kernel_from_json(replayed)? != kernel_from_json(&d["output"])?
                } else if let Some(out) = d.get("output") {
                    let (kg, _, k2) = kernel_from_json(out)?;
                    let equivalent = (alpha(&g)? as i64 >= k) == (alpha(&kg)? as i64 >= k2);
                    !equivalent || kg.size() > g.size()
                } else {
                    let check = d["check"].clone();
                    let again = kernelize(&inst, &KernelOptions::collecting())?;
                    again
                        .violations
                        .iter()
                        .any(|v| serde_json::to_value(v.check).unwrap() == check)
                }
            }
            SweepId::Packing => {
                let t = num("t").unwrap_or(0);
                let nm = necklace_minor_length(&g)?.value;
                nm != t || necklace_packing(&g, t)? != 1
            }
            SweepId::TrianglePath => {
                let (nm, tpm) = (
                    necklace_minor_length(&g)?.value,
                    triangle_path_minor_length(&g)?.value,
                );
                if tpm < nm.div_ceil(2) {
                    true
                } else {
                    let model = serde_json::from_value(d["necklace_model"].clone());
                    match model {
                        Ok(m) => necklace_model_to_triangle_path(&g, &m)
                            .and_then(|tp| {
                                validate_model(&g, &triangle_path_pattern(nm.div_ceil(2)), &tp)
                            })
                            .is_err(),
                        Err(_) => false,
                    }
                }
            }
            SweepId::Oracles => match (num("alpha"), d.get("bridges")) {
                (Some(a), _) => a != naive_alpha(&g),
                (None, Some(b)) => {
                    let claimed: EdgeSet = serde_json::from_value(b.clone()).unwrap_or_default();
                    claimed != naive_bridges(&g)
                }
                _ => false,
            },
            SweepId::Conflicts => {
                let (rp, xp) = (set_from(&d["r"]), set_from(&d["x"]));
                num("conf") != Some(naive_conf(&g, &rp, &xp))
            }
        })
    }
}

/// One line per sweep plus any counterexamples.
pub fn format_text(reports: &[SweepReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let head = [
            format!("{status} {}", r.sweep),
            format!("cases={}", r.cases),
            format!("checks={}", r.checks),
        ];
        let line = head
            .into_iter()
            .chain([format!("violations={}", r.violations)])
            .chain(r.counts.iter().map(|(k, v)| format!("{k}={v}")))
            .join(" ");
        out.push_str(&line);
        out.push('\n');
        for c in &r.counterexamples {
            out.push_str(&format!(
                "  counterexample case={} detail={} graph={} data={}\n",
                c.case,
                c.detail,
                serde_json::to_string(&c.graph).unwrap(),
                c.data
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn smoke_level_passes() {
        for r in selftest(Level::Smoke, 1) {
            assert!(r.passed(), "{}", format_text(&[r]));
            assert!(r.cases > 0 && r.checks > 0);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_sweep(SweepId::Kernel, Level::Smoke, 5);
        let b = run_sweep(SweepId::Kernel, Level::Smoke, 5);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn broken_conflicts_are_caught() {
        // only the first modulator vertex's neighbourhood is removed
        let broken = |g: &Graph, rp: &VertexSet, xp: &VertexSet| -> Result<usize> {
            let first: VertexSet = xp.iter().take(1).copied().collect();
            conf(g, rp, &first)
        };
        let r = sweep_conflicts(Level::Smoke, &broken);
        assert!(r.violations > 0);
        assert!(!r.counterexamples.is_empty());
        for c in &r.counterexamples {
            assert!(c.revalidate().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn off_by_one_kernel_is_caught() {
        let broken = |inst: &Instance, opts: &KernelOptions| -> Result<KernelOutput> {
            let mut out = kernelize(inst, opts)?;
            out.instance.k += 1;
            Ok(out)
        };
        let r = sweep_kernel(Level::Smoke, 1, &broken);
        assert!(r.violations > 0);
        for c in &r.counterexamples {
            assert!(c.revalidate().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn broken_alpha_and_bridges_are_caught() {
        let alpha = |g: &Graph| -> Result<usize> { Ok(alpha_number(g)?.min(3)) };
        let bridges = |g: &Graph| -> EdgeSet { find_bridges(g).into_iter().skip(1).collect() };
        let r = sweep_oracles(Level::Smoke, &alpha, &bridges);
        assert!(r.violations > 0);
        for c in &r.counterexamples {
            assert!(c.revalidate().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn inflated_mbs_is_caught() {
        let m = |g: &Graph| -> Result<usize> { Ok(lib_mbs(g)? * 3) };
        let r = sweep_mbs_bound(Level::Smoke, &m, &bridge_depth);
        assert!(r.violations > 0);
        for c in &r.counterexamples {
            assert!(c.revalidate().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn greedy_shrink_is_caught() {
        // keeps only the first vertex of Y
        let broken = |g: &Graph, y: &VertexSet| -> Result<(VertexSet, ShrinkStats)> {
            let _ = g;
            Ok((y.iter().take(1).copied().collect(), ShrinkStats::default()))
        };
        let r = sweep_general_shrink(Level::Smoke, 2, &broken);
        assert!(r.violations > 0);
        for c in &r.counterexamples {
            assert!(c.revalidate().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn honest_certificates_do_not_revalidate() {
        let g = generators::path(4);
        let c = Counterexample {
            sweep: SweepId::Oracles,
            case: 0,
            graph: GraphCert::of(&g),
            data: json!({ "alpha": 2 }),
            detail: "made up".into(),
        };
        assert!(!c.revalidate().unwrap());
        assert_eq!(c.graph.graph().unwrap(), g);
    }

    #[test]
    fn level_names() {
        assert_eq!("0".parse::<Level>().unwrap(), Level::Smoke);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("huge".parse::<Level>().is_err());
    }
}
