//! Maximum-cardinality bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Bipartite graph over `left` and `right` vertices identified by index.
/// Adjacency lists are kept sorted so every search is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_edges<I>(left: usize, right: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(left, right);
        for (l, r) in edges {
            g.add_edge(l, r)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, l: usize, r: usize) -> Result<()> {
        if l >= self.left || r >= self.right {
            return Err(Error::IndexOutOfRange(format!(
                "edge ({l},{r}) in a {}x{} bipartite graph",
                self.left, self.right
            )));
        }
        let row = &mut self.adj[l];
        if let Err(pos) = row.binary_search(&r) {
            row.insert(pos, r);
        }
        Ok(())
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// Result of [`max_bipartite_matching`]: `mate_left[l]` is the right vertex
/// matched to `l`, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.mate_left.iter().flatten().count()
    }

    /// Matched pairs in left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate_left.len() == self.mate_right.len() && self.size() == self.mate_left.len()
    }
}

const UNSEEN: usize = usize::MAX;

/// Hopcroft-Karp, `O(E sqrt(V))`.
pub fn max_bipartite_matching(g: &BipartiteGraph) -> Matching {
    let mut mate_left = vec![None; g.left];
    let mut mate_right: Vec<Option<usize>> = vec![None; g.right];
    let mut dist = vec![UNSEEN; g.left];
    let mut cursor = vec![0usize; g.left];

    loop {
        // Layer the free left vertices and everything reachable by alternating paths.
        let mut queue = VecDeque::new();
        for l in 0..g.left {
            if mate_left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = UNSEEN;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                match mate_right[r] {
                    None => found = true,
                    Some(next) if dist[next] == UNSEEN => {
                        dist[next] = dist[l] + 1;
                        queue.push_back(next);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        for l in 0..g.left {
            if mate_left[l].is_none() {
                augment(g, l, &mut dist, &mut cursor, &mut mate_left, &mut mate_right);
            }
        }
    }

    Matching {
        mate_left,
        mate_right,
    }
}

fn augment(
    g: &BipartiteGraph,
    l: usize,
    dist: &mut [usize],
    cursor: &mut [usize],
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
) -> bool {
    while cursor[l] < g.adj[l].len() {
        let r = g.adj[l][cursor[l]];
        cursor[l] += 1;
        let advance = match mate_right[r] {
            None => true,
            Some(next) => {
                dist[next] == dist[l].wrapping_add(1)
                    && augment(g, next, dist, cursor, mate_left, mate_right)
            }
        };
        if advance {
            mate_left[l] = Some(r);
            mate_right[r] = Some(l);
            return true;
        }
    }
    dist[l] = UNSEEN;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Largest matching by trying every subset of edges, for tiny graphs.
    fn brute_force_size(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
        fn go(
            k: usize,
            edges: &[(usize, usize)],
            used_l: &mut Vec<bool>,
            used_r: &mut Vec<bool>,
        ) -> usize {
            if k == edges.len() {
                return 0;
            }
            let skip = go(k + 1, edges, used_l, used_r);
            let (l, r) = edges[k];
            if used_l[l] || used_r[r] {
                return skip;
            }
            used_l[l] = true;
            used_r[r] = true;
            let take = 1 + go(k + 1, edges, used_l, used_r);
            used_l[l] = false;
            used_r[r] = false;
            skip.max(take)
        }
        go(0, edges, &mut vec![false; left], &mut vec![false; right])
    }

    #[test]
    fn complete_three_by_three() {
        let g = BipartiteGraph::from_edges(3, 3, (0..3).flat_map(|l| (0..3).map(move |r| (l, r)))).unwrap();
        let m = max_bipartite_matching(&g);
        assert_eq!(m.size(), 3);
        assert!(m.is_perfect());
    }

    #[test]
    fn two_left_share_one_right() {
        let g = BipartiteGraph::from_edges(2, 1, [(0, 0), (1, 0)]).unwrap();
        let m = max_bipartite_matching(&g);
        assert_eq!(m.size(), 1);
        // Lowest left label wins the tie.
        assert_eq!(m.pairs(), vec![(0, 0)]);
    }

    #[test]
    fn star_pattern_has_deficiency_one_at_five() {
        // Row/column pattern of a star centred on vertex 2 (index 1), 5 x 5.
        let mut edges = vec![(1, 0), (1, 2), (1, 3), (1, 4)];
        edges.extend([(0, 1), (2, 1), (3, 1), (4, 1)]);
        let g = BipartiteGraph::from_edges(5, 5, edges.clone()).unwrap();
        assert_eq!(max_bipartite_matching(&g).size(), 2);
        assert_eq!(brute_force_size(5, 5, &edges), 2);
    }

    #[test]
    fn out_of_range_edge() {
        assert!(BipartiteGraph::from_edges(1, 1, [(0, 1)]).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            left in 0usize..=7,
            right in 0usize..=7,
            raw in prop::collection::vec((0usize..7, 0usize..7), 0..20),
        ) {
            let edges: Vec<_> = raw
                .into_iter()
                .filter(|&(l, r)| l < left && r < right)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let g = BipartiteGraph::from_edges(left, right, edges.iter().copied()).unwrap();
            let m = max_bipartite_matching(&g);
            for (l, r) in m.pairs() {
                prop_assert!(edges.contains(&(l, r)));
                prop_assert_eq!(m.mate_right[r], Some(l));
            }
            prop_assert_eq!(m.size(), brute_force_size(left, right, &edges));
        }
    }
}
