//! Structural feasibility predicates.
//!
//! A closed loop `(A, B, C, K)` has no structurally fixed modes iff
//! (a) every state lies in a strongly connected component of `D(A, B, C, K)`
//! that contains a feedback edge `y -> u` (both endpoints inside), and
//! (b) some disjoint union of cycles of `D(A, B, C, K)` covers every state.

use crate::error::Result;
use crate::graph::{
    build_digraph, max_bipartite_matching, reachable_from, scc_ids, spanning_cycle_family,
    strongly_connected_components, BipartiteGraph, SystemDigraph, Vertex,
};
use crate::model::{Instance, Selection, SparsityPattern};

/// Outcome of the fixed-mode test, with evidence for each condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfmCertificate {
    pub condition_a: bool,
    pub condition_b: bool,
    /// First state whose component holds no feedback edge, when (a) fails.
    pub uncovered_state: Option<Vertex>,
    /// Components that contain a state and a feedback edge, each with one such edge.
    pub feedback_components: Vec<(Vec<Vertex>, (Vertex, Vertex))>,
    /// Disjoint cycles covering every state, when (b) holds.
    pub cycle_family: Option<Vec<Vec<Vertex>>>,
}

impl SfmCertificate {
    pub fn has_no_sfms(&self) -> bool {
        self.condition_a && self.condition_b
    }

    /// Which condition failed, for messages.
    pub fn failure(&self) -> Option<String> {
        match (self.condition_a, self.condition_b) {
            (true, true) => None,
            (false, _) => Some(format!(
                "state {} is not in a strongly connected component containing a feedback edge",
                self.uncovered_state.map_or_else(|| "?".into(), |v| v.to_string())
            )),
            (true, false) => Some("no disjoint union of cycles covers every state".into()),
        }
    }
}

/// Checks both fixed-mode conditions on the closed loop `D(A, B, C, K)`.
pub fn has_no_sfms(
    a: &SparsityPattern,
    b: &SparsityPattern,
    c: &SparsityPattern,
    k: &SparsityPattern,
) -> Result<SfmCertificate> {
    let g = build_digraph(a, Some(b), Some(c), Some(k))?;
    Ok(certify(&g))
}

/// Checks the fixed-mode conditions on an already built closed-loop digraph.
pub fn certify(g: &SystemDigraph) -> SfmCertificate {
    let (comp, count) = scc_ids(g);
    let mut witness: Vec<Option<(Vertex, Vertex)>> = vec![None; count];
    for (from, to) in g.edges() {
        if let (Vertex::Output(_), Vertex::Input(_)) = (from, to) {
            let (f, t) = (index(g, from), index(g, to));
            if comp[f] == comp[t] && witness[comp[f]].is_none() {
                witness[comp[f]] = Some((from, to));
            }
        }
    }
    let uncovered_state = (0..g.states()).find(|&x| witness[comp[x]].is_none()).map(Vertex::State);

    let mut feedback_components = Vec::new();
    for scc in strongly_connected_components(g) {
        let id = comp[index(g, scc[0])];
        if let (Some(edge), true) = (witness[id], scc.iter().any(|v| v.is_state())) {
            feedback_components.push((scc, edge));
        }
    }

    let cycle_family = spanning_cycle_family(g);
    SfmCertificate {
        condition_a: uncovered_state.is_none(),
        condition_b: cycle_family.is_some(),
        uncovered_state,
        feedback_components,
        cycle_family,
    }
}

fn index(g: &SystemDigraph, v: Vertex) -> usize {
    g.index_of(v).expect("vertex comes from this graph")
}

/// `D(A, B(I), C(J), K(F))`. Unselected inputs and outputs stay in the graph
/// as isolated vertices so labels keep their original indices.
pub fn closed_loop_digraph(inst: &Instance, sel: &Selection) -> Result<SystemDigraph> {
    sel.check_against(inst)?;
    let b = inst.b().keep_columns(&sel.inputs);
    let c = inst.c().keep_rows(&sel.outputs);
    let k = sel.information_pattern(inst);
    build_digraph(inst.a(), Some(&b), Some(&c), Some(&k))
}

/// Fixed-mode test for a selection on an instance.
pub fn check_selection(inst: &Instance, sel: &Selection) -> Result<SfmCertificate> {
    Ok(certify(&closed_loop_digraph(inst, sel)?))
}

/// Structural controllability of `(A, B)`: every state is reachable from an
/// input, and `[A B]` has generic rank `n` (a row-complete matching).
pub fn is_structurally_controllable(a: &SparsityPattern, b: &SparsityPattern) -> Result<bool> {
    let g = build_digraph(a, Some(b), None, None)?;
    let n = a.rows();
    let inputs: Vec<Vertex> = (0..b.cols()).map(Vertex::Input).collect();
    let reach = reachable_from(&g, &inputs)?;
    if (0..n).any(|i| !reach.contains(&Vertex::State(i))) {
        return Ok(false);
    }
    let edges = a.iter().chain(b.iter().map(|(i, j)| (i, n + j)));
    let rank = max_bipartite_matching(&BipartiteGraph::from_edges(n, n + b.cols(), edges)?).size();
    Ok(rank == n)
}

/// Structural observability of `(A, C)`, by duality with controllability.
pub fn is_structurally_observable(a: &SparsityPattern, c: &SparsityPattern) -> Result<bool> {
    is_structurally_controllable(&a.transpose(), &c.transpose())
}
