//! Kernelization of Independent Set parameterized by a modulator X to
//! bridge-depth at most c.

mod algorithm;
mod analysis;
mod checks;
mod pending;
mod rules;
mod trace;

use crate::bridge_depth::is_bd_at_most;
use crate::error::{Error, Result};
use crate::graph::{BridgeTree, Graph, VertexSet};
use crate::independence::alpha_number;

pub use algorithm::{kernelize, KernelOptions, KernelOutput, LevelReport, TreeReport};
pub use checks::{Check, Violation};
pub use pending::{
    absorbed_tree, conflict_structures, find_conflict_structure, ConflictStructure, LeafCounts,
    PendingDecomposition, VertexType,
};
pub use trace::{Op, ReductionTrace, RuleId, Size, TraceEvent, TRACE_SCHEMA};

use analysis::Analysis;
use rules::State;

/// Does G have an independent set of size k, given bd(G \ X) ≤ c?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k: i64,
    pub c: u32,
}

impl Instance {
    /// Checks X ⊆ V(G) and bd(G \ X) ≤ c.
    pub fn new(graph: Graph, modulator: VertexSet, k: i64, c: u32) -> Result<Self> {
        graph.check_subset(&modulator)?;
        let rest = graph.delete_vertices(&modulator)?;
        if !is_bd_at_most(&rest, c as usize)? {
            return Err(Error::InvalidInstance(format!(
                "bridge-depth of G \\ X exceeds c = {c}"
            )));
        }
        Ok(Instance {
            graph,
            modulator,
            k,
            c,
        })
    }

    /// R = V(G) \ X.
    pub fn remainder(&self) -> VertexSet {
        self.graph
            .vertices()
            .filter(|v| !self.modulator.contains(v))
            .collect()
    }

    /// Components of G[R] by smallest id.
    pub fn remainder_components(&self) -> Vec<VertexSet> {
        self.graph
            .induced(&self.remainder())
            .expect("remainder is a subset")
            .connected_components()
    }

    /// |V| + |E|.
    pub fn size(&self) -> usize {
        self.graph.size()
    }

    fn analysis(&self) -> Result<Analysis> {
        Analysis::new(&self.graph, &self.modulator, self.c)
    }

    fn check_remainder(&self, z: &VertexSet) -> Result<()> {
        self.graph.check_subset(z)?;
        if !z.is_disjoint(&self.modulator) {
            return Err(Error::InvalidInput("set meets the modulator".into()));
        }
        Ok(())
    }
}

/// Nonempty independent subsets of X with at most 2^c elements, by size
/// then lexicographically.
pub fn enumerate_chunks(inst: &Instance) -> Result<Vec<VertexSet>> {
    let an = inst.analysis()?;
    Ok(an.chunks.iter().map(|&m| an.set(m)).collect())
}

/// Number of remainder components on which `chunk` conflicts.
pub fn chunk_degree(inst: &Instance, chunk: &VertexSet) -> Result<usize> {
    if !chunk.is_subset(&inst.modulator) || !inst.graph.is_independent(chunk) {
        return Err(Error::InvalidInput(
            "chunk must be an independent subset of X".into(),
        ));
    }
    let mut an = inst.analysis()?;
    let m = an.mask(chunk);
    Ok(an.degree(m))
}

/// No chunk conflicts on Z.
pub fn is_free(inst: &Instance, z: &VertexSet) -> Result<bool> {
    inst.check_remainder(z)?;
    let mut an = inst.analysis()?;
    let m = an.mask(z);
    Ok(an.is_free(m))
}

/// Every chunk conflicting on Z conflicts at least `x` on the whole remainder.
pub fn is_almost_free(inst: &Instance, z: &VertexSet, x: u32) -> Result<bool> {
    inst.check_remainder(z)?;
    let mut an = inst.analysis()?;
    let m = an.mask(z);
    Ok(an.is_almost_free(m, x))
}

/// Pending components and types of `tree` inside the remainder component
/// `component`.
pub fn pending_decomposition(
    inst: &Instance,
    component: &VertexSet,
    tree: &BridgeTree,
) -> Result<PendingDecomposition> {
    inst.check_remainder(component)?;
    let mut an = inst.analysis()?;
    let m = an.mask(component);
    if !an.components.contains(&m) {
        return Err(Error::InvalidInput("not a remainder component".into()));
    }
    an.pending(m, tree)
}

/// The reduced instance and its trace, or None when the rule does not apply.
pub type Applied = Option<(Instance, ReductionTrace)>;

fn run_once(
    inst: &Instance,
    f: impl FnOnce(&mut State, &mut Analysis) -> Result<bool>,
) -> Result<Applied> {
    let mut st = State::new(inst, false, true);
    let mut an = st.analysis()?;
    if !f(&mut st, &mut an)? {
        return Ok(None);
    }
    let trace = ReductionTrace {
        events: std::mem::take(&mut st.trace),
    };
    Ok(Some((st.into_instance()?, trace)))
}

/// Rule 1 once: delete the first free component; k −= its α.
pub fn rule_free(inst: &Instance) -> Result<Applied> {
    run_once(inst, |st, an| rules::rule_free(st, an, RuleId::Rule1))
}

/// Rule 2 once: cut X from the first component whose conflicting chunks all
/// have degree ≥ |X|+1.
pub fn rule_chunk_degree(inst: &Instance) -> Result<Applied> {
    run_once(inst, |st, an| {
        rules::rule_chunk_degree(st, an, RuleId::Rule2)
    })
}

pub fn meta_rule_1(inst: &Instance, tree: &BridgeTree) -> Result<Applied> {
    run_once(inst, |st, an| rules::meta_rule_1(st, an, tree))
}

pub fn meta_rule_2(inst: &Instance, tree: &BridgeTree) -> Result<Applied> {
    run_once(inst, |st, an| rules::meta_rule_2(st, an, tree))
}

pub fn meta_rule_3(inst: &Instance, tree: &BridgeTree) -> Result<Applied> {
    run_once(inst, |st, an| rules::meta_rule_3(st, an, tree))
}

pub fn meta_rule_4(inst: &Instance, tree: &BridgeTree) -> Result<Applied> {
    run_once(inst, |st, an| rules::meta_rule_4(st, an, tree))
}

pub fn meta_rule_5(inst: &Instance, tree: &BridgeTree) -> Result<Applied> {
    run_once(inst, |st, an| rules::meta_rule_5(st, an, tree))
}

/// (α(G) ≥ k) = (α(G') ≥ k').
pub fn verify_equivalence(a: &Instance, b: &Instance) -> Result<bool> {
    let yes = |i: &Instance| -> Result<bool> { Ok(alpha_number(&i.graph)? as i64 >= i.k) };
    Ok(yes(a)? == yes(b)?)
}

#[cfg(test)]
mod tests;
