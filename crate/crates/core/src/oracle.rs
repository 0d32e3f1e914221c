//! Exhaustive reference solvers for small instances.
//!
//! These make no structural assumption on the dynamics and are exponential in
//! the number of candidate links; they exist to certify the polynomial solver
//! and to show how quickly the general problem blows up.

use std::time::{Duration, Instant};

use crate::analysis::check_selection;
use crate::assignment::{AssignmentResult, LabeledCostMatrix};
use crate::codesign::{Branch, SolveReport};
use crate::error::{Error, Result};
use crate::model::{selection_cost, Cost, Instance, Selection};

/// Size caps for [`brute_force_codesign`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Upper bound on `p * m`.
    pub max_pairs: usize,
    /// Upper bound on `p + m`.
    pub max_io: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_pairs: 12,
            max_io: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub report: SolveReport,
    /// Candidates that reached the fixed-mode test (after cost pruning).
    pub candidates_evaluated: u64,
    pub elapsed: Duration,
}

/// Minimum-cost selection by enumerating every set of finite-cost links.
///
/// Inputs and outputs are taken as the projections of the link set: an input
/// or output that carries no link has no incoming edge (respectively no
/// outgoing edge) in the closed loop, so it lies on no cycle and no
/// nontrivial component, and dropping it never hurts feasibility nor raises
/// the cost. Candidates whose cost already reaches the best found so far are
/// skipped. Ties go to the first link set in enumeration order (bitmask over
/// row-major finite pairs).
pub fn brute_force_codesign(inst: &Instance, limits: OracleLimits) -> Result<OracleReport> {
    let (p, m) = (inst.p(), inst.m());
    if p * m > limits.max_pairs || p + m > limits.max_io {
        return Err(Error::TooLarge(format!(
            "p*m = {} (cap {}), p+m = {} (cap {})",
            p * m,
            limits.max_pairs,
            p + m,
            limits.max_io
        )));
    }
    let started = Instant::now();
    let pairs = inst.finite_pairs();
    let mut best: Option<(Selection, Cost)> = None;
    let mut evaluated = 0u64;

    for mask in 1u64..(1u64 << pairs.len()) {
        let sel = Selection::induced_by(
            pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &pair)| pair),
        );
        let cost = selection_cost(inst, &sel);
        if best.as_ref().is_some_and(|(_, b)| cost >= *b) {
            continue;
        }
        evaluated += 1;
        if check_selection(inst, &sel)?.has_no_sfms() {
            best = Some((sel, cost));
        }
    }

    let (selection, total_cost) =
        best.ok_or_else(|| Error::Infeasible("no set of finite-cost links passes the fixed-mode test".into()))?;
    Ok(OracleReport {
        report: SolveReport {
            selection,
            total_cost,
            branch: Branch::Exhaustive,
            assignment: None,
            verified: true,
        },
        candidates_evaluated: evaluated,
        elapsed: started.elapsed(),
    })
}

/// Largest matrix [`brute_force_assignment`] accepts.
pub const MAX_BRUTE_FORCE_ASSIGNMENT: usize = 8;

/// Minimum-cost bijection by enumerating all `k!` permutations in
/// lexicographic order; the first strict minimum wins, matching the tie rule
/// of [`crate::assignment::solve_assignment`]. Returns the identity when every
/// permutation is infinite.
pub fn brute_force_assignment<L: Clone>(matrix: &LabeledCostMatrix<L>) -> Result<AssignmentResult<L>> {
    let k = matrix.size();
    if k > MAX_BRUTE_FORCE_ASSIGNMENT {
        return Err(Error::TooLarge(format!("{k}x{k} assignment (cap {MAX_BRUTE_FORCE_ASSIGNMENT})")));
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let total = |perm: &[usize]| -> Cost { perm.iter().enumerate().map(|(r, &c)| matrix.get(r, c)).sum() };
    let mut best = perm.clone();
    let mut best_cost = total(&perm);
    while next_permutation(&mut perm) {
        let cost = total(&perm);
        if cost < best_cost {
            best_cost = cost;
            best.clone_from(&perm);
        }
    }
    Ok(matrix.assignment_from_permutation(best))
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(pivot) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let swap = perm.iter().rposition(|&x| x > perm[pivot]).expect("a larger element exists");
    perm.swap(pivot, swap);
    perm[pivot + 1..].reverse();
    true
}
