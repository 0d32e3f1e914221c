//! The polynomial co-design solver for irreducible dynamics, plus the two
//! single-objective variants built on top of it.
//!
//! If the dynamics alone admit a spanning cycle family, the cheapest single
//! input/output/link triple closes the loop. Otherwise the solver builds the
//! block cost matrix over `x, u, y` labels whose finite entries are the edges
//! of the candidate closed loop (plus free `u_i -> u_i` and `y_j -> y_j`
//! self-pairs) and reads the selection off a minimum-cost assignment.

use std::collections::BTreeSet;

use crate::analysis::check_selection;
use crate::assignment::{solve_assignment, AssignmentResult, LabeledCostMatrix};
use crate::error::{Error, Result};
use crate::graph::{is_irreducible, Vertex};
use crate::model::{selection_cost, Cost, Instance, Selection, SparsityPattern};

/// Which path the solver took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Dynamics already have a spanning cycle family; one triple suffices.
    SingleTriple,
    /// Selection read from the assignment on the full block matrix.
    FullAssignment,
    /// Found by exhaustive enumeration.
    Exhaustive,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::SingleTriple => "SingleTriple",
            Branch::FullAssignment => "FullAssignment",
            Branch::Exhaustive => "Exhaustive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub selection: Selection,
    pub total_cost: Cost,
    pub branch: Branch,
    /// The assignment on the block matrix; absent for [`Branch::SingleTriple`].
    pub assignment: Option<AssignmentResult<Vertex>>,
    /// Whether the returned selection passed the fixed-mode check.
    pub verified: bool,
}

fn state_labels(n: usize) -> Vec<Vertex> {
    (0..n).map(Vertex::State).collect()
}

/// Cost matrix of the dynamics over `x` labels: entry `(x_i, x_j)` is zero iff
/// the digraph has the edge `x_i -> x_j` (that is, `A[j][i]` is set), infinite
/// otherwise. This is the transpose of the pattern read row-by-row, so an
/// assignment pair reads directly as a digraph edge.
pub fn build_cost_ca(a: &SparsityPattern) -> Result<LabeledCostMatrix<Vertex>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut entries = vec![vec![Cost::INFINITY; n]; n];
    for (j, i) in a.iter() {
        entries[i][j] = Cost::ZERO;
    }
    LabeledCostMatrix::new(state_labels(n), entries)
}

/// Block cost matrix over labels `x_1..x_n, u_1..u_p, y_1..y_m`.
///
/// Finite entries: `(x_i, x_j) = 0` for dynamics edges, `(u_i, x_j) = c_u(i)`
/// when `B[j][i]`, `(x_i, y_j) = c_y(j)` when `C[j][i]`, `(y_j, u_i) = c_f(i, j)`,
/// and zero on the `u` and `y` diagonals. Everything else is infinite.
pub fn build_cost_cstar(inst: &Instance) -> LabeledCostMatrix<Vertex> {
    let (n, p, m) = (inst.n(), inst.p(), inst.m());
    let (u0, y0) = (n, n + p);
    let k = n + p + m;
    let mut entries = vec![vec![Cost::INFINITY; k]; k];
    for (j, i) in inst.a().iter() {
        entries[i][j] = Cost::ZERO;
    }
    for (j, i) in inst.b().iter() {
        entries[u0 + i][j] = inst.cost_u()[i];
    }
    for (j, i) in inst.c().iter() {
        entries[i][y0 + j] = inst.cost_y()[j];
    }
    for i in 0..p {
        for j in 0..m {
            entries[y0 + j][u0 + i] = inst.feedback_cost(i, j);
        }
        entries[u0 + i][u0 + i] = Cost::ZERO;
    }
    for j in 0..m {
        entries[y0 + j][y0 + j] = Cost::ZERO;
    }
    let labels = state_labels(n)
        .into_iter()
        .chain((0..p).map(Vertex::Input))
        .chain((0..m).map(Vertex::Output))
        .collect();
    LabeledCostMatrix::new(labels, entries).expect("square by construction")
}

/// Cheapest input/output/link selection with no structurally fixed modes.
///
/// Requires irreducible dynamics. Every returned selection is re-checked
/// against the fixed-mode conditions.
pub fn solve_codesign(inst: &Instance) -> Result<SolveReport> {
    if !is_irreducible(inst.a())? {
        return Err(Error::NotIrreducible);
    }

    let dynamics = solve_assignment(&build_cost_ca(inst.a())?);
    let (selection, branch, assignment) = if dynamics.total_cost.is_finite() {
        let (i, j) = cheapest_triple(inst).ok_or_else(|| {
            Error::Infeasible("no input/output pair with a finite link cost touches the dynamics".into())
        })?;
        (Selection::induced_by([(i, j)]), Branch::SingleTriple, None)
    } else {
        let result = solve_assignment(&build_cost_cstar(inst));
        if result.total_cost.is_infinite() {
            return Err(Error::Infeasible(
                "no finite-cost cycle family covers the states".into(),
            ));
        }
        (selection_from_assignment(&result), Branch::FullAssignment, Some(result))
    };

    let certificate = check_selection(inst, &selection)?;
    if let Some(reason) = certificate.failure() {
        return Err(Error::Unverified(reason));
    }
    let total_cost = selection_cost(inst, &selection);
    if let Some(a) = &assignment {
        debug_assert_eq!(a.total_cost, total_cost);
    }
    Ok(SolveReport {
        selection,
        total_cost,
        branch,
        assignment,
        verified: true,
    })
}

/// `argmin c_u(i) + c_y(j) + c_f(i, j)` over pairs with a finite link whose
/// input drives some state and whose output reads some state. The first pair
/// in row-major order wins ties.
fn cheapest_triple(inst: &Instance) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Cost)> = None;
    for (i, j) in inst.finite_pairs() {
        if !inst.b().col_is_nonzero(i) || !inst.c().row_is_nonzero(j) {
            continue;
        }
        let cost = inst.cost_u()[i] + inst.cost_y()[j] + inst.feedback_cost(i, j);
        if best.is_none_or(|(_, b)| cost < b) {
            best = Some(((i, j), cost));
        }
    }
    best.map(|(pair, _)| pair)
}

/// Reads `(I, J, F)` off the pairs `(u_i, x)`, `(x, y_j)` and `(y_j, u_i)`.
/// Diagonal `u`/`y` pairs mean "not selected".
pub fn selection_from_assignment(result: &AssignmentResult<Vertex>) -> Selection {
    let mut sel = Selection::default();
    for &(row, col) in &result.pairs {
        match (row, col) {
            (Vertex::Input(i), Vertex::State(_)) => {
                sel.inputs.insert(i);
            }
            (Vertex::State(_), Vertex::Output(j)) => {
                sel.outputs.insert(j);
            }
            (Vertex::Output(j), Vertex::Input(i)) => {
                sel.feedback.insert((i, j));
            }
            _ => {}
        }
    }
    sel
}

/// Cheapest input set making `(A, B(I))` structurally controllable.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSelection {
    pub inputs: BTreeSet<usize>,
    pub cost: Cost,
}

/// Minimum-cost constrained input selection, solved by embedding: every state
/// is measured by a free output and every link is free.
pub fn solve_io(a: &SparsityPattern, b: &SparsityPattern, cost_u: &[Cost]) -> Result<InputSelection> {
    let n = a.rows();
    let p = b.cols();
    let inst = Instance::new(
        a.clone(),
        b.clone(),
        SparsityPattern::identity(n),
        cost_u.iter().map(|c| c.value()).collect(),
        vec![0.0; n],
        vec![vec![0.0; n]; p],
    )?;
    let report = solve_codesign(&inst)?;
    let cost = report.selection.inputs.iter().map(|&i| cost_u[i]).sum();
    Ok(InputSelection {
        inputs: report.selection.inputs,
        cost,
    })
}

/// Cheapest information pattern for fixed actuators and sensors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkSelection {
    pub feedback: BTreeSet<(usize, usize)>,
    pub cost: Cost,
}

/// Minimum-cost control configuration, solved by embedding with free inputs
/// and outputs.
pub fn solve_cc(
    a: &SparsityPattern,
    b: &SparsityPattern,
    c: &SparsityPattern,
    cost_f: &[Vec<Cost>],
) -> Result<LinkSelection> {
    let inst = Instance::new(
        a.clone(),
        b.clone(),
        c.clone(),
        vec![0.0; b.cols()],
        vec![0.0; c.rows()],
        cost_f.iter().map(|row| row.iter().map(|c| c.value()).collect()).collect(),
    )?;
    let report = solve_codesign(&inst)?;
    Ok(LinkSelection {
        feedback: report.selection.feedback,
        cost: report.total_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_selection, has_no_sfms};
    use crate::fixtures;

    fn set<T: Ord + Copy>(items: &[T]) -> BTreeSet<T> {
        items.iter().copied().collect()
    }

    #[test]
    fn ca_entries() {
        let ca = build_cost_ca(&SparsityPattern::identity(1)).unwrap();
        assert_eq!(ca.entries(), &[vec![Cost::ZERO]]);

        let ca = build_cost_ca(fixtures::example1().a()).unwrap();
        let finite: Vec<_> = (0..6)
            .flat_map(|r| (0..6).map(move |c| (r, c)))
            .filter(|&(r, c)| ca.get(r, c).is_finite())
            .collect();
        assert_eq!(finite.len(), 12);
        assert!(finite.iter().all(|&(r, c)| ca.get(c, r).is_finite()));

        // A[0][1] set: edge x2 -> x1, stored at row x2, column x1.
        let ca = build_cost_ca(&SparsityPattern::from_dense(&[[0u8, 1], [0, 0]])).unwrap();
        assert_eq!(ca.get(1, 0), Cost::ZERO);
        assert_eq!(ca.entries().iter().flatten().filter(|c| c.is_finite()).count(), 1);

        assert!(matches!(build_cost_ca(&SparsityPattern::zeros(1, 2)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn cstar_entries() {
        let ex2 = build_cost_cstar(&fixtures::example2());
        assert_eq!(ex2.size(), 11);
        let at = |m: &LabeledCostMatrix<Vertex>, r: Vertex, c: Vertex| {
            let idx = |v| m.labels().iter().position(|&l| l == v).unwrap();
            m.get(idx(r), idx(c))
        };
        assert_eq!(at(&ex2, Vertex::Output(0), Vertex::Input(1)), Cost::finite(100.0));
        assert_eq!(at(&ex2, Vertex::Output(2), Vertex::Input(0)), Cost::INFINITY);
        assert_eq!(at(&ex2, Vertex::Input(1), Vertex::Input(1)), Cost::ZERO);
        assert_eq!(at(&ex2, Vertex::Input(1), Vertex::Input(2)), Cost::INFINITY);

        let ex1 = build_cost_cstar(&fixtures::example1());
        assert_eq!(at(&ex1, Vertex::Input(0), Vertex::State(0)), Cost::finite(10.0));
        assert_eq!(at(&ex1, Vertex::Input(0), Vertex::State(1)), Cost::finite(10.0));
        assert_eq!(at(&ex1, Vertex::Input(0), Vertex::State(2)), Cost::INFINITY);
        assert_eq!(at(&ex1, Vertex::State(0), Vertex::Output(0)), Cost::finite(15.0));
    }

    #[test]
    fn cstar_without_io_is_the_dynamics_matrix() {
        let a = fixtures::example2().a().clone();
        let inst = Instance::new(a.clone(), SparsityPattern::zeros(5, 0), SparsityPattern::zeros(0, 5), vec![], vec![], vec![])
            .unwrap();
        assert_eq!(build_cost_cstar(&inst), build_cost_ca(&a).unwrap());
    }

    #[test]
    fn example1_single_triple() {
        let report = solve_codesign(&fixtures::example1()).unwrap();
        assert_eq!(report.branch, Branch::SingleTriple);
        assert_eq!(report.selection, Selection::induced_by([(0, 0)]));
        assert_eq!(report.total_cost, Cost::finite(30.0));
        assert!(report.verified);
        assert!(report.assignment.is_none());
    }

    #[test]
    fn example2_full_assignment() {
        let inst = fixtures::example2();
        let report = solve_codesign(&inst).unwrap();
        assert_eq!(report.branch, Branch::FullAssignment);
        assert_eq!(report.total_cost, Cost::finite(186.0));
        assert_eq!(report.assignment.as_ref().unwrap().total_cost, Cost::finite(186.0));
        assert!(check_selection(&inst, &report.selection).unwrap().has_no_sfms());
        // Two link sets tie at 186; the lexicographic tie rule picks
        // {(1,1),(2,3),(3,2)} over {(2,1),(3,3),(1,2)}.
        let alternative = Selection::induced_by([(1, 0), (2, 2), (0, 1)]);
        assert_eq!(selection_cost(&inst, &alternative), report.total_cost);
        assert_eq!(report.selection, Selection::induced_by([(0, 0), (1, 2), (2, 1)]));
    }

    #[test]
    fn all_links_forbidden_is_infeasible() {
        let inst = fixtures::example1();
        let mut raw = inst.to_file();
        for row in &mut raw.cost_f {
            row.iter_mut().for_each(|c| c.0 = f64::INFINITY);
        }
        let err = solve_codesign(&raw.validate().unwrap()).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
        assert!(err.to_string().contains("no feasible information pattern"));
    }

    #[test]
    fn reducible_dynamics_rejected() {
        let inst = fixtures::example2();
        let mut a = inst.a().clone();
        a.remove(1, 0);
        let err = solve_codesign(&inst.with_dynamics(a).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotIrreducible);
    }

    #[test]
    fn io_variant_on_example1() {
        let inst = fixtures::example1();
        let sol = solve_io(inst.a(), inst.b(), inst.cost_u()).unwrap();
        assert_eq!(sol.inputs, set(&[0]));
        assert_eq!(sol.cost, Cost::finite(10.0));

        let zero_b = SparsityPattern::zeros(6, 4);
        assert!(matches!(solve_io(inst.a(), &zero_b, inst.cost_u()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn cc_variant_on_example1() {
        let inst = fixtures::example1();
        let sol = solve_cc(inst.a(), inst.b(), inst.c(), inst.cost_f()).unwrap();
        assert_eq!(sol.feedback, set(&[(0, 0)]));
        assert_eq!(sol.cost, Cost::finite(5.0));

        let all_inf = vec![vec![Cost::INFINITY; 3]; 4];
        assert!(matches!(solve_cc(inst.a(), inst.b(), inst.c(), &all_inf), Err(Error::Infeasible(_))));
    }

    #[test]
    fn cc_variant_output_has_no_sfms() {
        let inst = fixtures::example2();
        let sol = solve_cc(inst.a(), inst.b(), inst.c(), inst.cost_f()).unwrap();
        let k = SparsityPattern::from_entries(3, 3, sol.feedback.iter().copied()).unwrap();
        assert!(has_no_sfms(inst.a(), inst.b(), inst.c(), &k).unwrap().has_no_sfms());
    }
}
