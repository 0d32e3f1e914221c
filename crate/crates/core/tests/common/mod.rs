//! Independent reference checks shared by the integration and acceptance tests.
//! None of these go through the matching or assignment code they validate.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sfm_codesign::analysis::is_structurally_controllable;
use sfm_codesign::graph::{SystemDigraph, Vertex};
use sfm_codesign::{Cost, SparsityPattern};

/// Every elementary cycle of `g`, as vertex-index lists starting at their
/// smallest vertex. Plain DFS; only for tiny graphs.
pub fn elementary_cycles(g: &SystemDigraph) -> Vec<Vec<usize>> {
    let v = g.vertex_count();
    let mut cycles = Vec::new();
    for start in 0..v {
        let mut path = vec![start];
        let mut on_path = vec![false; v];
        on_path[start] = true;
        extend(g, start, &mut path, &mut on_path, &mut cycles);
    }
    cycles
}

fn extend(g: &SystemDigraph, start: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for &next in g.successors(last) {
        if next == start {
            out.push(path.clone());
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(next);
            extend(g, start, path, on_path, out);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// True iff some set of pairwise disjoint elementary cycles covers every state.
pub fn cycle_family_by_enumeration(g: &SystemDigraph) -> bool {
    let cycles = elementary_cycles(g);
    let masks: Vec<u64> = cycles.iter().map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v))).collect();
    let states: u64 = (0..g.states()).fold(0, |m, v| m | (1 << v));
    fn search(used: u64, states: u64, masks: &[u64]) -> bool {
        if used & states == states {
            return true;
        }
        // Some cycle must contain the lowest uncovered state.
        let target = (!used & states).trailing_zeros();
        masks
            .iter()
            .any(|&m| m & (1 << target) != 0 && m & used == 0 && search(used | m, states, masks))
    }
    search(0, states, &masks)
}

/// Reachability matrix by Floyd-Warshall (reflexive).
pub fn transitive_closure(g: &SystemDigraph) -> Vec<Vec<bool>> {
    let v = g.vertex_count();
    let mut reach = vec![vec![false; v]; v];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
        for &j in g.successors(i) {
            row[j] = true;
        }
    }
    for k in 0..v {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (r, &x) in row.iter_mut().zip(&via) {
                *r |= x;
            }
        }
    }
    reach
}

/// Condition (a) recomputed from mutual reachability: every state shares a
/// component with both ends of some feedback edge.
pub fn condition_a_by_closure(g: &SystemDigraph) -> bool {
    let reach = transitive_closure(g);
    let same = |a: usize, b: usize| reach[a][b] && reach[b][a];
    let feedback: Vec<(usize, usize)> = g
        .edges()
        .filter(|(f, t)| matches!((f, t), (Vertex::Output(_), Vertex::Input(_))))
        .map(|(f, t)| (g.index_of(f).unwrap(), g.index_of(t).unwrap()))
        .collect();
    (0..g.states()).all(|x| feedback.iter().any(|&(y, u)| same(x, y) && same(x, u)))
}

/// Random closed-loop digraph with `n` states, `p` inputs, `m` outputs, edges
/// only of the four legal classes.
pub fn random_system_digraph(rng: &mut ChaCha8Rng, n: usize, p: usize, m: usize, density: f64) -> SystemDigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                edges.push((Vertex::State(i), Vertex::State(j)));
            }
        }
        for k in 0..p {
            if rng.gen_bool(density) {
                edges.push((Vertex::Input(k), Vertex::State(i)));
            }
        }
        for k in 0..m {
            if rng.gen_bool(density) {
                edges.push((Vertex::State(i), Vertex::Output(k)));
            }
        }
    }
    for y in 0..m {
        for u in 0..p {
            if rng.gen_bool(density) {
                edges.push((Vertex::Output(y), Vertex::Input(u)));
            }
        }
    }
    SystemDigraph::from_edges(n, p, m, edges).unwrap()
}

pub fn random_pattern(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> SparsityPattern {
    let entries: Vec<_> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    SparsityPattern::from_entries(rows, cols, entries).unwrap()
}

/// Cheapest input subset making `(A, B(I))` structurally controllable, by
/// trying all `2^p` subsets.
pub fn cheapest_controlling_inputs(a: &SparsityPattern, b: &SparsityPattern, cost_u: &[Cost]) -> Option<Cost> {
    let p = b.cols();
    (0u32..(1 << p))
        .filter_map(|mask| {
            let keep: BTreeSet<usize> = (0..p).filter(|i| mask & (1 << i) != 0).collect();
            let sub = b.keep_columns(&keep);
            is_structurally_controllable(a, &sub)
                .unwrap()
                .then(|| keep.iter().map(|&i| cost_u[i]).sum::<Cost>())
        })
        .min()
}

/// Numerical observability of a random realization of `(A, C)`: rank of the
/// stacked `[C; CA; ...; CA^(n-1)]`.
pub fn observable_realization(a: &SparsityPattern, c: &SparsityPattern, rng: &mut ChaCha8Rng) -> bool {
    use nalgebra::DMatrix;
    let n = a.rows();
    let m = c.rows();
    if m == 0 {
        return false;
    }
    let mut num_a = DMatrix::<f64>::zeros(n, n);
    for (i, j) in a.iter() {
        num_a[(i, j)] = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    }
    let mut num_c = DMatrix::<f64>::zeros(m, n);
    for (i, j) in c.iter() {
        num_c[(i, j)] = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    }
    let mut obs = DMatrix::<f64>::zeros(m * n, n);
    let mut block = num_c.clone();
    for k in 0..n {
        obs.view_mut((k * m, 0), (m, n)).copy_from(&block);
        block = &block * &num_a;
    }
    obs.rank(1e-8) == n
}
