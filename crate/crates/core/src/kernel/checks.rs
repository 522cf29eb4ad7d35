//! Names of the checked-mode assertions and the record of a failed one.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Rules 1 and 2 recomputed with set-based conflicts do not apply.
    RulesFixpoint,
    /// #cc(G[R]) ≤ |chunks|·|X| once Rules 1 and 2 are exhausted.
    ComponentCount,
    /// An independent S ⊆ X conflicting on a component contains a chunk
    /// conflicting there.
    SmallConflicts,
    /// Δ(T) ≤ 2|chunks|·|X| once Meta-Rule 3 does not apply.
    TreeDegree,
    /// Leaves with an A-parent ≤ Δ(T1)·|chunks|·(|X|+2).
    StarALeaves,
    /// B-leaves with a B-sibling ≤ Δ(T1)·|chunks|·(|X|+2).
    BbbLeaves,
    /// B-leaves under degree-2 parents ≤ Δ(T1)·|chunks|·(|X|+1).
    Bb2Leaves,
    /// |V(T1)| ≤ 2(n*A + nBBB + nBB2)·diam(T1)², for |V(T1)| ≥ 3.
    TreeSize,
    /// The α relations before and after a meta-rule.
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    /// Number of trace events applied when the check failed.
    pub step: usize,
    pub detail: String,
}
