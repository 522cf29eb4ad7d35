//! Rules 1 and 2 and Meta-Rules 1 to 5 acting on a mutable reduction state.

use crate::bridge_depth::is_bd_at_most;
use crate::dense::Mask;
use crate::error::{Error, Result};
use crate::graph::{edge, BridgeTree, Graph, Vertex, VertexSet};

use super::analysis::Analysis;
use super::checks::{Check, Violation};
use super::pending::conflict_structures;
use super::trace::{apply_op, Op, RuleId, Size, TraceEvent, TRACE_SCHEMA};
use super::Instance;

/// The instance being reduced plus the events applied so far.
#[derive(Clone, Debug)]
pub(crate) struct State {
    pub g: Graph,
    pub x: VertexSet,
    pub k: i64,
    pub c: u32,
    pub trace: Vec<TraceEvent>,
    pub checked: bool,
    pub fail_fast: bool,
    pub violations: Vec<Violation>,
}

impl State {
    pub fn new(inst: &Instance, checked: bool, fail_fast: bool) -> Self {
        State {
            g: inst.graph.clone(),
            x: inst.modulator.clone(),
            k: inst.k,
            c: inst.c,
            trace: Vec::new(),
            checked,
            fail_fast,
            violations: Vec::new(),
        }
    }

    /// Records a failed checked-mode assertion; fatal under fail-fast.
    pub fn violate(&mut self, check: Check, detail: String) -> Result<()> {
        if self.fail_fast {
            return Err(Error::Assertion(format!("{check:?}: {detail}")));
        }
        self.violations.push(Violation {
            check,
            step: self.trace.len(),
            detail,
        });
        Ok(())
    }

    pub fn analysis(&self) -> Result<Analysis> {
        Analysis::new(&self.g, &self.x, self.c)
    }

    pub fn record(
        &mut self,
        rule: RuleId,
        location: Option<Vertex>,
        op: Op,
        dk: i64,
    ) -> Result<()> {
        let before = Size::of(&self.g);
        apply_op(&mut self.g, &mut self.x, &mut self.c, &op)?;
        self.k += dk;
        self.trace.push(TraceEvent {
            schema: TRACE_SCHEMA.to_string(),
            step: self.trace.len(),
            rule,
            location,
            op,
            dk,
            before,
            after: Size::of(&self.g),
        });
        Ok(())
    }

    pub fn into_instance(self) -> Result<Instance> {
        Instance::new(self.g, self.x, self.k, self.c)
    }
}

fn location(an: &Analysis, comp: Mask) -> Option<Vertex> {
    an.set(comp).first().copied()
}

fn vertices(an: &Analysis, m: Mask) -> Vec<Vertex> {
    an.set(m).into_iter().collect()
}

/// Rule 1: delete the first free component, k −= its α.
pub(crate) fn rule_free(st: &mut State, an: &mut Analysis, rule: RuleId) -> Result<bool> {
    for comp in an.components.clone() {
        if an.is_free(comp) {
            let a = an.alpha(comp) as i64;
            let op = Op::DeleteVertices {
                vertices: vertices(an, comp),
            };
            st.record(rule, location(an, comp), op, -a)?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rule 2: cut X from the first component all of whose conflicting chunks
/// have degree at least |X|+1.
pub(crate) fn rule_chunk_degree(st: &mut State, an: &mut Analysis, rule: RuleId) -> Result<bool> {
    let threshold = an.x.count_ones() as usize + 1;
    for comp in an.components.clone() {
        if an.nbr(comp) & an.x == 0 {
            continue;
        }
        let applies = an
            .chunks
            .clone()
            .into_iter()
            .all(|ch| an.conf(comp, ch) == 0 || an.degree(ch) >= threshold);
        if applies {
            let edges: Vec<_> =
                st.g.edges()
                    .filter(|&(u, v)| {
                        let (iu, iv) = (an.index(u), an.index(v));
                        (an.x >> iu & 1 == 1 && comp >> iv & 1 == 1)
                            || (an.x >> iv & 1 == 1 && comp >> iu & 1 == 1)
                    })
                    .collect();
            st.record(rule, location(an, comp), Op::DeleteEdges { edges }, 0)?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rules 1 and 2 until neither applies.
pub(crate) fn rules_exhaustive(st: &mut State, free: RuleId, degree: RuleId) -> Result<()> {
    loop {
        let mut an = st.analysis()?;
        if !rule_free(st, &mut an, free)? && !rule_chunk_degree(st, &mut an, degree)? {
            return Ok(());
        }
    }
}

/// The shift relation between the graphs before and after a meta-rule:
/// α(R') ≥ α(R) − d1, and α(R \ N(X')) ≥ α(R' \ N'(X')) − d2 for every chunk,
/// hence conf' ≥ conf − d1 − d2 on the whole remainder.
fn check_shift(
    before: &Graph,
    after: &Graph,
    x: &VertexSet,
    c: u32,
    d1: u32,
    d2: u32,
) -> Result<Option<String>> {
    let mut a = Analysis::new(before, x, c)?;
    let mut b = Analysis::new(after, x, c)?;
    let fail = |m: String| Ok(Some(m));
    let (ra, rb) = (a.alpha(a.r), b.alpha(b.r));
    if rb + d1 < ra {
        return fail(format!("remainder alpha fell from {ra} to {rb}"));
    }
    for ch in a.chunks.clone() {
        let chb = b.mask(&a.set(ch));
        let (fa, fb) = (a.alpha(a.r & !a.nbr(ch)), b.alpha(b.r & !b.nbr(chb)));
        if fa + d2 < fb {
            return fail(format!(
                "chunk {:?} avoided alpha rose from {fa} to {fb}",
                a.set(ch)
            ));
        }
        let (ca, cb) = (a.conf(a.r, ch), b.conf(b.r, chb));
        if cb + d1 + d2 < ca {
            return fail(format!(
                "chunk {:?} conflict fell from {ca} to {cb}",
                a.set(ch)
            ));
        }
    }
    Ok(None)
}

fn apply_checked(
    st: &mut State,
    rule: RuleId,
    loc: Option<Vertex>,
    ops: Vec<Op>,
    dk: i64,
    shift: (u32, u32),
) -> Result<()> {
    let before = st.checked.then(|| st.g.clone());
    for (i, op) in ops.into_iter().enumerate() {
        st.record(rule, loc, op, if i == 0 { dk } else { 0 })?;
    }
    if let Some(before) = before {
        if let Some(msg) = check_shift(&before, &st.g, &st.x, st.c, shift.0, shift.1)? {
            st.violate(Check::Shift, format!("{rule:?}: {msg}"))?;
        }
    }
    Ok(())
}

fn component_of_tree(an: &Analysis, t: &BridgeTree) -> Result<Mask> {
    let tm = an.mask(&t.vertices);
    an.components
        .iter()
        .copied()
        .find(|&c| c & tm != 0)
        .ok_or_else(|| Error::NotATreeOfBridges("tree is not inside the remainder".into()))
}

/// Meta-Rule 1: remove a tree edge {v1, v2} whose structure of kind 1 is
/// (|X|+2)-almost-free.
pub(crate) fn meta_rule_1(st: &mut State, an: &mut Analysis, t: &BridgeTree) -> Result<bool> {
    let comp = component_of_tree(an, t)?;
    let dec = an.pending(comp, t)?;
    let threshold = an.x.count_ones() + 2;
    for s in conflict_structures(&dec, 1)? {
        if an.is_almost_free(an.mask(&s.vertices), threshold) {
            let op = Op::DeleteEdges {
                edges: vec![edge(s.roots[0], s.roots[1])],
            };
            apply_checked(st, RuleId::Mr1, location(an, comp), vec![op], 0, (0, 1))?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Meta-Rule 2: on a path (u2, v1, v2, u1) with an (|X|+1)-almost-free
/// kind-2 structure, identify u1 with v1 and u2 with v2; k −= 1.
pub(crate) fn meta_rule_2(st: &mut State, an: &mut Analysis, t: &BridgeTree) -> Result<bool> {
    let comp = component_of_tree(an, t)?;
    let dec = an.pending(comp, t)?;
    let threshold = an.x.count_ones() + 1;
    for s in conflict_structures(&dec, 2)? {
        if an.is_almost_free(an.mask(&s.vertices), threshold) {
            let [u2, v1, v2, u1] = s.roots[..] else {
                unreachable!()
            };
            let first = st.g.next_id();
            let ops = vec![
                Op::Identify {
                    u: u1,
                    v: v1,
                    into: first,
                },
                Op::Identify {
                    u: u2,
                    v: v2,
                    into: first + 1,
                },
            ];
            apply_checked(st, RuleId::Mr2, location(an, comp), ops, -1, (1, 0))?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Meta-Rule 3: for the first tree vertex v with d_T(v) > 2|𝒳||X|, run
/// Rules 1 and 2 exhaustively with modulator X ∪ {v}. Applies only if that
/// run changes the graph.
pub(crate) fn meta_rule_3(st: &mut State, an: &mut Analysis, t: &BridgeTree) -> Result<bool> {
    let comp = component_of_tree(an, t)?;
    let bound = 2 * an.chunks.len() * an.x.count_ones() as usize;
    for &v in &t.vertices {
        if t.degree(v) <= bound {
            continue;
        }
        let mut inner = st.clone();
        inner.trace.clear();
        inner.x.insert(v);
        rules_exhaustive(&mut inner, RuleId::Mr3, RuleId::Mr3)?;
        if inner.trace.is_empty() {
            continue;
        }
        for e in inner.trace {
            st.record(RuleId::Mr3, location(an, comp), e.op, e.dk)?;
        }
        return Ok(true);
    }
    Ok(false)
}

/// Meta-Rule 4: remove a B-leaf u with an (|X|+2)-almost-free H_u together
/// with its parent; k −= 1.
pub(crate) fn meta_rule_4(st: &mut State, an: &mut Analysis, t: &BridgeTree) -> Result<bool> {
    let comp = component_of_tree(an, t)?;
    let dec = an.pending(comp, t)?;
    let threshold = an.x.count_ones() + 2;
    for s in conflict_structures(&dec, 3)? {
        if an.is_almost_free(an.mask(&s.vertices), threshold) {
            let op = Op::DeleteVertices {
                vertices: s.roots.clone(),
            };
            apply_checked(st, RuleId::Mr4, location(an, comp), vec![op], -1, (1, 0))?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Meta-Rule 5: on a path (v1, v2, u) with v1 a leaf and an
/// (|X|+1)-almost-free kind-4 structure, identify v1 with u and remove v2;
/// k −= 1.
pub(crate) fn meta_rule_5(st: &mut State, an: &mut Analysis, t: &BridgeTree) -> Result<bool> {
    let comp = component_of_tree(an, t)?;
    let dec = an.pending(comp, t)?;
    let threshold = an.x.count_ones() + 1;
    for s in conflict_structures(&dec, 4)? {
        if an.is_almost_free(an.mask(&s.vertices), threshold) {
            let [v1, v2, u] = s.roots[..] else {
                unreachable!()
            };
            let ops = vec![
                Op::Identify {
                    u: v1,
                    v: u,
                    into: st.g.next_id(),
                },
                Op::DeleteVertices { vertices: vec![v2] },
            ];
            apply_checked(st, RuleId::Mr5, location(an, comp), ops, -1, (1, 0))?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// bd(G \ X) ≤ c for the current state.
pub(crate) fn modulator_holds(st: &State) -> Result<bool> {
    is_bd_at_most(&st.g.delete_vertices(&st.x)?, st.c as usize)
}
