//! System digraphs built from structural patterns, with the graph routines the
//! fixed-mode test needs: strongly connected components, reachability and
//! spanning cycle families.

mod dot;
mod matching;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use dot::{to_dot, DotOverlay};
pub use matching::{max_bipartite_matching, BipartiteGraph, Matching};

use crate::error::{Error, Result};
use crate::model::SparsityPattern;

/// A labelled vertex of a system digraph. Indices are 0-based; labels print
/// 1-based (`x1`, `u2`, `y3`). The derived order is `x* < u* < y*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    State(usize),
    Input(usize),
    Output(usize),
}

impl Vertex {
    pub fn is_state(self) -> bool {
        matches!(self, Vertex::State(_))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::State(i) => write!(f, "x{}", i + 1),
            Vertex::Input(i) => write!(f, "u{}", i + 1),
            Vertex::Output(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// Kind of an edge, by the classes of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    StateState,
    InputState,
    StateOutput,
    OutputInput,
}

impl EdgeClass {
    pub fn of(from: Vertex, to: Vertex) -> Option<EdgeClass> {
        match (from, to) {
            (Vertex::State(_), Vertex::State(_)) => Some(EdgeClass::StateState),
            (Vertex::Input(_), Vertex::State(_)) => Some(EdgeClass::InputState),
            (Vertex::State(_), Vertex::Output(_)) => Some(EdgeClass::StateOutput),
            (Vertex::Output(_), Vertex::Input(_)) => Some(EdgeClass::OutputInput),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            EdgeClass::StateState => "xx",
            EdgeClass::InputState => "ux",
            EdgeClass::StateOutput => "xy",
            EdgeClass::OutputInput => "yu",
        }
    }
}

/// Digraph over states, inputs and outputs.
///
/// Edge conventions follow the column-to-row reading of each pattern:
/// `x_i -> x_j` iff `A[j][i]`, `u_i -> x_j` iff `B[j][i]`,
/// `x_i -> y_j` iff `C[j][i]`, `y_i -> u_j` iff `K[j][i]`.
///
/// Vertices are stored densely as states, then inputs, then outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDigraph {
    n: usize,
    p: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl SystemDigraph {
    fn with_sizes(n: usize, p: usize, m: usize) -> Self {
        SystemDigraph {
            n,
            p,
            m,
            adj: vec![Vec::new(); n + p + m],
        }
    }

    fn push(&mut self, from: usize, to: usize) {
        self.adj[from].push(to);
    }

    fn finish(mut self) -> Self {
        for row in &mut self.adj {
            row.sort_unstable();
            row.dedup();
        }
        self
    }

    /// Builds a graph from explicit labelled edges; used by tests and generators.
    pub fn from_edges<I>(n: usize, p: usize, m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::with_sizes(n, p, m);
        for (from, to) in edges {
            let (f, t) = (g.index_of(from)?, g.index_of(to)?);
            g.push(f, t);
        }
        Ok(g.finish())
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn inputs(&self) -> usize {
        self.p
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        if index < self.n {
            Vertex::State(index)
        } else if index < self.n + self.p {
            Vertex::Input(index - self.n)
        } else {
            Vertex::Output(index - self.n - self.p)
        }
    }

    pub fn index_of(&self, v: Vertex) -> Result<usize> {
        match v {
            Vertex::State(i) if i < self.n => Ok(i),
            Vertex::Input(i) if i < self.p => Ok(self.n + i),
            Vertex::Output(i) if i < self.m => Ok(self.n + self.p + i),
            _ => Err(Error::UnknownVertex(v.to_string())),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.adj.len()).map(|i| self.vertex(i))
    }

    /// Dense successor lists, sorted.
    pub fn successors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn has_edge(&self, from: Vertex, to: Vertex) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Ok(f), Ok(t)) => self.adj[f].binary_search(&t).is_ok(),
            _ => false,
        }
    }

    /// All edges in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(move |(f, row)| row.iter().map(move |&t| (self.vertex(f), self.vertex(t))))
    }
}

/// Builds `D(A)`, `D(A, B)` or the closed-loop `D(A, B, C, K)`.
///
/// Omitted blocks contribute no vertices. `K` (p x m) requires both `B` and `C`.
pub fn build_digraph(
    a: &SparsityPattern,
    b: Option<&SparsityPattern>,
    c: Option<&SparsityPattern>,
    k: Option<&SparsityPattern>,
) -> Result<SystemDigraph> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let p = b.map_or(0, SparsityPattern::cols);
    let m = c.map_or(0, SparsityPattern::rows);
    if let Some(b) = b {
        if b.rows() != n {
            return Err(Error::DimensionMismatch(format!("B has {} rows, expected {n}", b.rows())));
        }
    }
    if let Some(c) = c {
        if c.cols() != n {
            return Err(Error::DimensionMismatch(format!("C has {} columns, expected {n}", c.cols())));
        }
    }
    if let Some(k) = k {
        if b.is_none() || c.is_none() {
            return Err(Error::DimensionMismatch(
                "an information pattern needs both B and C".into(),
            ));
        }
        if k.shape() != (p, m) {
            return Err(Error::DimensionMismatch(format!(
                "K is {}x{}, expected {p}x{m}",
                k.rows(),
                k.cols()
            )));
        }
    }

    let mut g = SystemDigraph::with_sizes(n, p, m);
    for (j, i) in a.iter() {
        g.push(i, j);
    }
    if let Some(b) = b {
        for (j, i) in b.iter() {
            g.push(n + i, j);
        }
    }
    if let Some(c) = c {
        for (j, i) in c.iter() {
            g.push(i, n + p + j);
        }
    }
    if let Some(k) = k {
        for (j, i) in k.iter() {
            g.push(n + p + i, n + j);
        }
    }
    Ok(g.finish())
}

/// Component index of every vertex (Tarjan, iterative). Components are
/// numbered in the order Tarjan closes them.
pub(crate) fn scc_ids(g: &SystemDigraph) -> (Vec<usize>, usize) {
    const NONE: usize = usize::MAX;
    let v = g.vertex_count();
    let mut index = vec![NONE; v];
    let mut low = vec![0usize; v];
    let mut on_stack = vec![false; v];
    let mut comp = vec![NONE; v];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for root in 0..v {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (node, ref mut edge)) = call.last_mut() {
            if let Some(&succ) = g.adj[node].get(*edge) {
                *edge += 1;
                if index[succ] == NONE {
                    index[succ] = next_index;
                    low[succ] = next_index;
                    next_index += 1;
                    stack.push(succ);
                    on_stack[succ] = true;
                    call.push((succ, 0));
                } else if on_stack[succ] {
                    low[node] = low[node].min(index[succ]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[node]);
            }
            if low[node] == index[node] {
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == node {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// Maximal strongly connected components. Each component is sorted, and
/// components are ordered by their smallest vertex.
pub fn strongly_connected_components(g: &SystemDigraph) -> Vec<Vec<Vertex>> {
    let (comp, count) = scc_ids(g);
    let mut groups = vec![Vec::new(); count];
    for (idx, &c) in comp.iter().enumerate() {
        groups[c].push(g.vertex(idx));
    }
    groups.sort_by_key(|group| group[0]);
    groups
}

/// True iff `D(A)` is strongly connected.
pub fn is_irreducible(a: &SparsityPattern) -> Result<bool> {
    let g = build_digraph(a, None, None, None)?;
    Ok(scc_ids(&g).1 == 1)
}

/// Every vertex reachable from `sources` by a path of length zero or more.
pub fn reachable_from(g: &SystemDigraph, sources: &[Vertex]) -> Result<BTreeSet<Vertex>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        let idx = g.index_of(s)?;
        if !seen[idx] {
            seen[idx] = true;
            queue.push_back(idx);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &g.adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| g.vertex(i))
        .collect())
}

/// Bipartite "out-copy to in-copy" graph of `g`, with a self-pair for every
/// input and output vertex. A perfect matching is a cycle cover in which the
/// non-state vertices may sit out.
fn cycle_cover_graph(g: &SystemDigraph) -> BipartiteGraph {
    let v = g.vertex_count();
    let mut bg = BipartiteGraph::new(v, v);
    for (f, row) in g.adj.iter().enumerate() {
        for &t in row {
            bg.add_edge(f, t).expect("indices in range");
        }
    }
    for idx in g.n..v {
        bg.add_edge(idx, idx).expect("indices in range");
    }
    bg
}

/// A set of vertex-disjoint cycles of `g` covering every state vertex, if one
/// exists. Each cycle starts at its smallest vertex. Non-state vertices left
/// out of the family are not listed.
pub fn spanning_cycle_family(g: &SystemDigraph) -> Option<Vec<Vec<Vertex>>> {
    let m = max_bipartite_matching(&cycle_cover_graph(g));
    if !m.is_perfect() {
        return None;
    }
    let succ: Vec<usize> = m.mate_left.iter().map(|r| r.expect("perfect")).collect();
    let mut seen = vec![false; succ.len()];
    let mut cycles = Vec::new();
    for start in 0..succ.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cycle.push(g.vertex(cur));
            cur = succ[cur];
        }
        // A fixed point on an input or output is the "sit out" self-pair.
        let is_artificial = cycle.len() == 1 && !cycle[0].is_state() && !g.has_edge(cycle[0], cycle[0]);
        if !is_artificial {
            cycles.push(cycle);
        }
    }
    Some(cycles)
}

/// True iff some disjoint union of cycles of `g` covers every state vertex.
pub fn has_spanning_cycle_family(g: &SystemDigraph) -> bool {
    max_bipartite_matching(&cycle_cover_graph(g)).is_perfect()
}
