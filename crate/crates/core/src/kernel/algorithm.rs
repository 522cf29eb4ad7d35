//! The kernelization loop: Rules 1 and 2 to a fixpoint, then per remainder
//! component the meta-rules on the lowering tree, its longest path and its
//! absorbed subtree, restarting after every change; then the lowering trees
//! join the modulator and c drops by one.

use serde::Serialize;

use crate::bridge_depth::lowering_tree;
use crate::dense::bits;
use crate::error::{Error, Result};
use crate::graph::{tree_longest_path, BridgeTree, VertexSet};
use crate::independence::conf;

use super::analysis::Analysis;
use super::checks::{Check, Violation};
use super::pending::{absorbed_tree, LeafCounts};
use super::rules::{
    meta_rule_1, meta_rule_2, meta_rule_3, meta_rule_4, meta_rule_5, modulator_holds,
    rule_chunk_degree, rule_free, State,
};
use super::trace::{Op, ReductionTrace, RuleId};
use super::Instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOptions {
    /// Run every lemma assertion.
    pub checked: bool,
    /// Abort on the first failed assertion with `Error::Assertion`;
    /// otherwise collect failures in [`KernelOutput::violations`].
    pub fail_fast: bool,
    /// Largest modulator for which every independent subset is enumerated
    /// when checking that small conflicts are witnessed by chunks.
    pub smallkiller_limit: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            checked: false,
            fail_fast: true,
            smallkiller_limit: 10,
        }
    }
}

impl KernelOptions {
    pub fn checked() -> Self {
        KernelOptions {
            checked: true,
            ..Self::default()
        }
    }

    /// Checked mode that records every failed assertion and carries on.
    pub fn collecting() -> Self {
        KernelOptions {
            checked: true,
            fail_fast: false,
            ..Self::default()
        }
    }
}

/// Shape of one surviving lowering tree at the end of a level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub location: u32,
    pub tree_size: usize,
    pub tree_diameter: usize,
    pub tree_max_degree: usize,
    pub absorbed_size: usize,
    pub absorbed_diameter: usize,
    pub absorbed_max_degree: usize,
    pub leaves: LeafCounts,
}

/// One pass of the recursion over c, as it stood when no rule applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub c: u32,
    pub modulator_size: usize,
    pub chunks: usize,
    pub components: usize,
    pub remainder_size: usize,
    pub trees: Vec<TreeReport>,
    /// f(c) = 5 + 6 + ... + (c+4); the asymptotic kernel bound is
    /// |X|^(2^f(c)). Logged only.
    pub bound_exponent_log2: u64,
}

#[derive(Clone, Debug)]
pub struct KernelOutput {
    pub instance: Instance,
    pub trace: ReductionTrace,
    pub levels: Vec<LevelReport>,
    pub violations: Vec<Violation>,
}

fn bound_exponent(c: u32) -> u64 {
    (5..=c as u64 + 4).sum()
}

/// An equivalent instance with modulator V(G') and c = 0, plus the trace.
pub fn kernelize(inst: &Instance, opts: &KernelOptions) -> Result<KernelOutput> {
    let mut st = State::new(inst, opts.checked, opts.fail_fast);
    let mut levels = Vec::new();
    while st.c > 0 && st.k >= 0 {
        if let Some(report) = run_level(&mut st, opts)? {
            levels.push(report);
        }
    }
    if st.k < 0 {
        short_circuit(&mut st)?;
    }
    let trace = ReductionTrace {
        events: std::mem::take(&mut st.trace),
    };
    let violations = std::mem::take(&mut st.violations);
    Ok(KernelOutput {
        instance: st.into_instance()?,
        trace,
        levels,
        violations,
    })
}

/// α ≥ k holds for negative k: replace by one vertex and k = 0.
fn short_circuit(st: &mut State) -> Result<()> {
    let dk = -st.k;
    let rule = RuleId::ShortCircuit;
    let first = st.g.vertices().next();
    let keep = match first {
        Some(v) => {
            let rest: Vec<_> = st.g.vertices().filter(|&w| w != v).collect();
            if !rest.is_empty() {
                st.record(rule, None, Op::DeleteVertices { vertices: rest }, 0)?;
            }
            v
        }
        None => {
            let v = st.g.next_id();
            st.record(rule, None, Op::AddVertex { vertex: v }, 0)?;
            v
        }
    };
    if !st.x.contains(&keep) {
        st.record(
            rule,
            None,
            Op::AddToModulator {
                vertices: vec![keep],
            },
            0,
        )?;
    }
    st.record(rule, None, Op::SetC { c: 0 }, dk)
}

/// Returns None when k turned negative mid-level.
fn run_level(st: &mut State, opts: &KernelOptions) -> Result<Option<LevelReport>> {
    'restart: loop {
        if st.k < 0 {
            return Ok(None);
        }
        let mut an = st.analysis()?;
        if rule_free(st, &mut an, RuleId::Rule1)? || rule_chunk_degree(st, &mut an, RuleId::Rule2)?
        {
            continue;
        }
        let nx = st.x.len();
        let nch = an.chunks.len();
        if opts.checked {
            if let Some(msg) = check_rules_fixpoint(st, &an)? {
                st.violate(Check::RulesFixpoint, msg)?;
            }
            if an.components.len() > nch * nx {
                let msg = format!(
                    "{} components exceed |chunks|·|X| = {}",
                    an.components.len(),
                    nch * nx
                );
                st.violate(Check::ComponentCount, msg)?;
            }
            if nx <= opts.smallkiller_limit {
                if let Some(msg) = check_small_conflicts(&mut an) {
                    st.violate(Check::SmallConflicts, msg)?;
                }
            }
        }
        let mut report = LevelReport {
            c: st.c,
            modulator_size: nx,
            chunks: nch,
            components: an.components.len(),
            remainder_size: an.r.count_ones() as usize,
            trees: Vec::new(),
            bound_exponent_log2: bound_exponent(st.c),
        };
        let mut lowered = VertexSet::new();
        for comp in an.components.clone() {
            let t = lowering_tree(&an.b.to_graph(comp))?.tree;
            let path = BridgeTree::path_subtree(&tree_longest_path(&t.as_graph())?);
            if meta_rule_1(st, &mut an, &path)?
                || meta_rule_2(st, &mut an, &path)?
                || meta_rule_3(st, &mut an, &t)?
            {
                continue 'restart;
            }
            if opts.checked && t.max_degree() > 2 * nch * nx {
                st.violate(
                    Check::TreeDegree,
                    format!(
                        "tree degree {} exceeds 2·|chunks|·|X| = {}",
                        t.max_degree(),
                        2 * nch * nx
                    ),
                )?;
            }
            let t1 = absorbed_tree(&an.pending(comp, &t)?);
            let dec1 = an.pending(comp, &t1)?;
            let leaves = dec1.leaf_counts();
            if leaves.ab != 0 {
                return Err(Error::Internal(
                    "absorbed tree still has an A-leaf under a B-parent".into(),
                ));
            }
            let d1 = t1.max_degree();
            if meta_rule_1(st, &mut an, &t1)? {
                continue 'restart;
            }
            if opts.checked && leaves.star_a > d1 * nch * (nx + 2) {
                st.violate(
                    Check::StarALeaves,
                    format!(
                        "{} leaves with an A-parent exceed {}",
                        leaves.star_a,
                        d1 * nch * (nx + 2)
                    ),
                )?;
            }
            if meta_rule_4(st, &mut an, &t1)? {
                continue 'restart;
            }
            if opts.checked && leaves.bbb > d1 * nch * (nx + 2) {
                st.violate(
                    Check::BbbLeaves,
                    format!(
                        "{} B-leaves with a B-sibling exceed {}",
                        leaves.bbb,
                        d1 * nch * (nx + 2)
                    ),
                )?;
            }
            if meta_rule_5(st, &mut an, &t1)? {
                continue 'restart;
            }
            if opts.checked && leaves.bb2 > d1 * nch * (nx + 1) {
                st.violate(
                    Check::Bb2Leaves,
                    format!(
                        "{} B-leaves under degree-2 parents exceed {}",
                        leaves.bb2,
                        d1 * nch * (nx + 1)
                    ),
                )?;
            }
            let diam = t1.diameter();
            if opts.checked && t1.vertices.len() >= 3 {
                let bound = 2 * (leaves.star_a + leaves.bbb + leaves.bb2) * diam * diam;
                if t1.vertices.len() > bound {
                    st.violate(
                        Check::TreeSize,
                        format!(
                            "absorbed tree has {} vertices, bound {bound}",
                            t1.vertices.len()
                        ),
                    )?;
                }
            }
            report.trees.push(TreeReport {
                location: *t.vertices.first().unwrap(),
                tree_size: t.vertices.len(),
                tree_diameter: t.diameter(),
                tree_max_degree: t.max_degree(),
                absorbed_size: t1.vertices.len(),
                absorbed_diameter: diam,
                absorbed_max_degree: d1,
                leaves,
            });
            lowered.extend(t.vertices.iter().copied());
        }
        if !lowered.is_empty() {
            let vertices = lowered.into_iter().collect();
            st.record(RuleId::Recurse, None, Op::AddToModulator { vertices }, 0)?;
        }
        st.record(RuleId::Recurse, None, Op::SetC { c: st.c - 1 }, 0)?;
        if !modulator_holds(st)? {
            return Err(Error::Internal(format!(
                "bridge-depth outside the modulator exceeds {}",
                st.c
            )));
        }
        return Ok(Some(report));
    }
}

/// Recomputes Rules 1 and 2 through the set-based conflict function and
/// checks that neither applies.
fn check_rules_fixpoint(st: &State, an: &Analysis) -> Result<Option<String>> {
    let chunks: Vec<VertexSet> = an.chunks.iter().map(|&c| an.set(c)).collect();
    let comps: Vec<VertexSet> = an.components.iter().map(|&c| an.set(c)).collect();
    let mut table = vec![vec![0; chunks.len()]; comps.len()];
    for (i, comp) in comps.iter().enumerate() {
        for (j, ch) in chunks.iter().enumerate() {
            table[i][j] = conf(&st.g, comp, ch)?;
        }
    }
    let degree = |j: usize| table.iter().filter(|row| row[j] != 0).count();
    for (i, comp) in comps.iter().enumerate() {
        if table[i].iter().all(|&c| c == 0) {
            return Ok(Some(format!(
                "component at {:?} is free after Rule 1",
                comp.first()
            )));
        }
        let touches_x = st.g.neighborhood(comp).iter().any(|v| st.x.contains(v));
        if touches_x && (0..chunks.len()).all(|j| table[i][j] == 0 || degree(j) > st.x.len()) {
            return Ok(Some(format!("Rule 2 still applies at {:?}", comp.first())));
        }
    }
    Ok(None)
}

/// Every independent S ⊆ X that conflicts on a component contains a chunk
/// that conflicts there.
fn check_small_conflicts(an: &mut Analysis) -> Option<String> {
    let xs: Vec<usize> = bits(an.x).collect();
    for sub in 1u64..1 << xs.len() {
        let s = bits(sub).fold(0, |acc, i| acc | 1 << xs[i]);
        if bits(s).any(|i| an.b.adj[i] & s != 0) {
            continue;
        }
        for comp in an.components.clone() {
            if an.conf(comp, s) == 0 {
                continue;
            }
            let witnessed = an
                .chunks
                .clone()
                .into_iter()
                .any(|ch| ch & !s == 0 && an.conf(comp, ch) != 0);
            if !witnessed {
                return Some(format!("{:?} conflicts without a chunk witness", an.set(s)));
            }
        }
    }
    None
}
