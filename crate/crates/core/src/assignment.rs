//! Minimum-cost assignment over square cost matrices with infinite entries.
//!
//! [`solve_assignment`] runs the Hungarian method in `O(k^3)`. Infinite entries
//! are never traversed. If the finite entries admit no perfect matching the
//! result is reported with infinite cost instead of a big-M sentinel.
//!
//! Among all minimum-cost assignments the returned one is lexicographically
//! smallest: row 0 gets the smallest feasible column, then row 1, and so on.
//! Rows and columns follow label order, so this is label-lexicographic too.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{max_bipartite_matching, BipartiteGraph};
use crate::model::Cost;

/// Square cost matrix whose rows and columns share one ordered label list.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledCostMatrix<L> {
    labels: Vec<L>,
    entries: Vec<Vec<Cost>>,
}

impl<L: Clone + Ord> LabeledCostMatrix<L> {
    pub fn new(labels: Vec<L>, entries: Vec<Vec<Cost>>) -> Result<Self> {
        let k = entries.len();
        if let Some(row) = entries.iter().find(|row| row.len() != k) {
            return Err(Error::NotSquare {
                rows: k,
                cols: row.len(),
            });
        }
        if labels.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a {k}x{k} matrix",
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DimensionMismatch("labels must be distinct".into()));
        }
        Ok(LabeledCostMatrix { labels, entries })
    }
}

impl LabeledCostMatrix<usize> {
    /// Labels rows and columns `0..k`.
    pub fn unlabeled(entries: Vec<Vec<Cost>>) -> Result<Self> {
        LabeledCostMatrix::new((0..entries.len()).collect(), entries)
    }
}

impl<L: Clone> LabeledCostMatrix<L> {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<Cost>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Cost {
        self.entries[row][col]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        LabeledCostMatrix {
            labels: self.labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|&c| c * factor).collect())
                .collect(),
        }
    }

    /// Builds the result for a row-to-column permutation, summing in row order.
    pub fn assignment_from_permutation(&self, permutation: Vec<usize>) -> AssignmentResult<L> {
        let total_cost = permutation
            .iter()
            .enumerate()
            .map(|(r, &c)| self.entries[r][c])
            .sum();
        AssignmentResult {
            pairs: permutation
                .iter()
                .enumerate()
                .map(|(r, &c)| (self.labels[r].clone(), self.labels[c].clone()))
                .collect(),
            permutation,
            total_cost,
        }
    }
}

/// A bijection between rows and columns with its total cost.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentResult<L> {
    /// `(row label, column label)` in row order.
    pub pairs: Vec<(L, L)>,
    /// `permutation[row] = column`, as matrix indices.
    pub permutation: Vec<usize>,
    pub total_cost: Cost,
}

/// Minimum-cost bijection. See the module docs for tie-breaking.
pub fn solve_assignment<L: Clone>(matrix: &LabeledCostMatrix<L>) -> AssignmentResult<L> {
    let k = matrix.size();
    let finite = BipartiteGraph::from_edges(
        k,
        k,
        (0..k).flat_map(|r| (0..k).map(move |c| (r, c))).filter(|&(r, c)| matrix.get(r, c).is_finite()),
    )
    .expect("indices in range");
    let matching = max_bipartite_matching(&finite);
    if !matching.is_perfect() {
        return matrix.assignment_from_permutation(complete(&matching.mate_left, &matching.mate_right));
    }

    let (row_potential, col_potential, permutation) = hungarian(matrix.entries());
    let permutation = lexicographic_optimum(matrix.entries(), &row_potential, &col_potential, permutation);
    matrix.assignment_from_permutation(permutation)
}

/// Fills a partial matching into some permutation.
fn complete(mate_left: &[Option<usize>], mate_right: &[Option<usize>]) -> Vec<usize> {
    let mut free_cols = (0..mate_right.len()).filter(|&c| mate_right[c].is_none());
    mate_left
        .iter()
        .map(|m| m.unwrap_or_else(|| free_cols.next().expect("as many free columns as rows")))
        .collect()
}

/// Shortest-augmenting-path Hungarian method. Requires that the finite entries
/// admit a perfect matching. Returns row potentials, column potentials and an
/// optimal row-to-column permutation.
fn hungarian(cost: &[Vec<Cost>]) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let k = cost.len();
    let inf = f64::INFINITY;
    // 1-based with a virtual column 0, as in the classic formulation.
    let mut u = vec![0.0f64; k + 1];
    let mut v = vec![0.0f64; k + 1];
    let mut owner = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    let mut minv = vec![inf; k + 1];
    let mut used = vec![false; k + 1];

    for i in 1..=k {
        owner[0] = i;
        let mut j0 = 0usize;
        minv.iter_mut().for_each(|m| *m = inf);
        used.iter_mut().for_each(|b| *b = false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let row = &cost[i0 - 1];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let c = row[j - 1].value();
                if c.is_finite() {
                    let reduced = c - u[i0] - v[j];
                    if reduced < minv[j] {
                        minv[j] = reduced;
                        way[j] = j0;
                    }
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert!(j1 != 0, "no augmenting path although a perfect matching exists");
            for j in 0..=k {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut permutation = vec![0usize; k];
    for j in 1..=k {
        permutation[owner[j] - 1] = j - 1;
    }
    (u[1..].to_vec(), v[1..].to_vec(), permutation)
}

/// Rewrites an optimal permutation into the lexicographically smallest optimal
/// one. Optimal assignments are exactly the perfect matchings on edges with
/// zero reduced cost, so each row in turn takes the smallest tight column that
/// still extends to a perfect matching of the rows that remain.
fn lexicographic_optimum(
    cost: &[Vec<Cost>],
    row_potential: &[f64],
    col_potential: &[f64],
    mut mate: Vec<usize>,
) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let k = cost.len();
    let scale = cost
        .iter()
        .flatten()
        .filter(|c| c.is_finite())
        .map(|c| c.value())
        .fold(1.0f64, f64::max);
    let eps = 1e-9 * scale;

    let mut tight_by_row = vec![Vec::new(); k];
    let mut tight_by_col = vec![Vec::new(); k];
    for r in 0..k {
        for c in 0..k {
            let entry = cost[r][c].value();
            if entry.is_finite() && entry - row_potential[r] - col_potential[c] <= eps {
                tight_by_row[r].push(c);
                tight_by_col[c].push(r);
            }
        }
    }
    let mut owner = vec![0usize; k];
    for (r, &c) in mate.iter().enumerate() {
        owner[c] = r;
        debug_assert!(tight_by_row[r].contains(&c));
    }

    let mut fixed_row = vec![false; k];
    let mut fixed_col = vec![false; k];
    let mut next = vec![NONE; k];
    let mut reaches = vec![false; k];
    let mut queue = VecDeque::new();

    for r in 0..k {
        // Rows that can hand their column down a chain of tight edges ending at r.
        reaches.iter_mut().for_each(|b| *b = false);
        reaches[r] = true;
        queue.push_back(r);
        while let Some(b) = queue.pop_front() {
            for &a in &tight_by_col[mate[b]] {
                if !fixed_row[a] && !reaches[a] {
                    reaches[a] = true;
                    next[a] = b;
                    queue.push_back(a);
                }
            }
        }
        let col = *tight_by_row[r]
            .iter()
            .find(|&&c| !fixed_col[c] && reaches[owner[c]])
            .expect("the current column of r always qualifies");

        // Rotate along the alternating cycle r -> col -> owner(col) -> ... -> r.
        let mut a = owner[col];
        while a != r {
            let b = next[a];
            let taken = mate[b];
            mate[a] = taken;
            owner[taken] = a;
            a = b;
        }
        mate[r] = col;
        owner[col] = r;
        fixed_row[r] = true;
        fixed_col[col] = true;
    }
    mate
}

/// Splits an assignment into its disjoint cycles. Each cycle starts at its
/// smallest label and cycles are ordered by that label.
pub fn extract_cycles<L: Clone + Ord>(result: &AssignmentResult<L>) -> Vec<Vec<L>> {
    let perm = &result.permutation;
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cycle.push(result.pairs[cur].0.clone());
            cur = perm[cur];
        }
        let pivot = (0..cycle.len()).min_by(|&a, &b| cycle[a].cmp(&cycle[b])).unwrap_or(0);
        cycle.rotate_left(pivot);
        cycles.push(cycle);
    }
    cycles.sort_by(|a, b| a[0].cmp(&b[0]));
    cycles
}
