//! Turning a regular multigraph into an S-labeled graph.
//!
//! The adjacency matrix of a `k`-regular multigraph, read as a bipartite
//! graph between two copies of the vertex set, is `k`-regular and therefore
//! a sum of `k` permutation matrices, peeled off one perfect matching at a
//! time.
//!
//! For even `k` an Euler orientation first splits each edge into one
//! direction, leaving a `k/2`-regular bipartite double; the resulting `k/2`
//! letters have an undirected view equal to the input. For odd `k` all `k`
//! permutations are returned and each edge is used once in each direction,
//! so the undirected view is the input with every edge doubled.

use alloc::vec;
use alloc::vec::Vec;

use crate::labeled::{Alphabet, SLabeledGraph};
use crate::multigraph::Multigraph;
use crate::{Error, Result};

/// Labels a `k`-regular multigraph. See the module docs for the letter count.
pub fn edge_label_decomposition(m: &Multigraph, k: usize) -> Result<SLabeledGraph> {
    for (vertex, &degree) in m.degrees().iter().enumerate() {
        if degree != k {
            return Err(Error::NotRegular {
                vertex,
                degree,
                expected: k,
            });
        }
    }
    let n = m.vertex_count();
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive"));
    }
    let (arcs, letters) = if k.is_multiple_of(2) {
        (euler_orientation(m), k / 2)
    } else {
        let mut arcs = Vec::with_capacity(2 * m.edge_count());
        for &(u, v) in m.edges() {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        (arcs, k)
    };
    let mut double = BipartiteMultigraph::from_arcs(n, &arcs);
    let mut perms = Vec::with_capacity(letters);
    for _ in 0..letters {
        let matching = double.perfect_matching().ok_or(Error::MatchingFailure)?;
        double.remove_matching(&matching);
        perms.push(matching);
    }
    SLabeledGraph::new(n, Alphabet::standard(letters), perms)
}

/// Orients every edge so that in-degree equals out-degree at every vertex,
/// by walking closed trails. Requires all degrees even.
fn euler_orientation(m: &Multigraph) -> Vec<(usize, usize)> {
    let n = m.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, &(u, v)) in m.edges().iter().enumerate() {
        incident[u].push(id);
        if u != v {
            incident[v].push(id);
        }
    }
    let mut used = vec![false; m.edge_count()];
    let mut cursor = vec![0usize; n];
    let mut arcs = Vec::with_capacity(m.edge_count());
    for start in 0..n {
        loop {
            let mut at = start;
            let mut moved = false;
            loop {
                while cursor[at] < incident[at].len() && used[incident[at][cursor[at]]] {
                    cursor[at] += 1;
                }
                let Some(&id) = incident[at].get(cursor[at]) else {
                    break;
                };
                used[id] = true;
                moved = true;
                let (u, v) = m.edges()[id];
                let next = if u == at { v } else { u };
                arcs.push((at, next));
                at = next;
            }
            // with even degrees a maximal trail from `start` closes at `start`
            debug_assert!(!moved || at == start);
            if !moved {
                break;
            }
        }
    }
    arcs
}

/// Left copy to right copy, with multiplicities.
struct BipartiteMultigraph {
    n: usize,
    adj: Vec<Vec<(usize, u32)>>,
}

impl BipartiteMultigraph {
    fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for &(u, v) in arcs {
            match adj[u].iter_mut().find(|(w, _)| *w == v) {
                Some(entry) => entry.1 += 1,
                None => adj[u].push((v, 1)),
            }
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        BipartiteMultigraph { n, adj }
    }

    /// Kuhn's augmenting paths; returns `left -> right`.
    fn perfect_matching(&self) -> Option<Vec<usize>> {
        let mut match_right = vec![usize::MAX; self.n];
        let mut visited = vec![0usize; self.n];
        for (round, u) in (0..self.n).enumerate() {
            if !self.augment(u, round + 1, &mut visited, &mut match_right) {
                return None;
            }
        }
        let mut match_left = vec![usize::MAX; self.n];
        for (v, &u) in match_right.iter().enumerate() {
            match_left[u] = v;
        }
        Some(match_left)
    }

    fn augment(&self, u: usize, stamp: usize, visited: &mut [usize], match_right: &mut [usize]) -> bool {
        for &(v, count) in &self.adj[u] {
            if count == 0 || visited[v] == stamp {
                continue;
            }
            visited[v] = stamp;
            if match_right[v] == usize::MAX || self.augment(match_right[v], stamp, visited, match_right) {
                match_right[v] = u;
                return true;
            }
        }
        false
    }

    fn remove_matching(&mut self, matching: &[usize]) {
        for (u, &v) in matching.iter().enumerate() {
            let entry = self.adj[u]
                .iter_mut()
                .find(|(w, _)| *w == v)
                .expect("matched edge exists");
            entry.1 -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubled(m: &Multigraph) -> Multigraph {
        let mut edges = m.edges().to_vec();
        edges.extend_from_slice(m.edges());
        Multigraph::new(m.vertex_count(), edges).unwrap()
    }

    #[test]
    fn c4_round_trip() {
        let c4 = Multigraph::cycle(4);
        let g = edge_label_decomposition(&c4, 2).unwrap();
        assert_eq!(g.letter_count(), 1);
        assert!(g.undirected_view().same_edges(&c4));
    }

    #[test]
    fn single_loop() {
        let m = Multigraph::new(1, vec![(0, 0)]).unwrap();
        let g = edge_label_decomposition(&m, 2).unwrap();
        assert_eq!(g.perm(0), &[0]);
        assert!(g.undirected_view().same_edges(&m));
    }

    #[test]
    fn k4_uses_each_edge_once_per_direction() {
        let k4 = Multigraph::complete(4);
        let g = edge_label_decomposition(&k4, 3).unwrap();
        assert_eq!(g.letter_count(), 3);
        assert!(g.undirected_view().same_edges(&doubled(&k4)));
        // sum of the three permutation matrices is the adjacency matrix
        let mut sum = vec![0u32; 16];
        for s in 0..3 {
            for (x, &y) in g.perm(s).iter().enumerate() {
                sum[x * 4 + y] += 1;
            }
        }
        assert_eq!(sum, k4.weight_matrix());
    }

    #[test]
    fn rejects_irregular() {
        let p = Multigraph::path(3);
        assert_eq!(
            edge_label_decomposition(&p, 2),
            Err(Error::NotRegular {
                vertex: 0,
                degree: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn loops_and_parallel_edges_four_regular() {
        // vertex 0: loop + double edge to 1; vertex 1: double edge to 0 + loop
        let m = Multigraph::new(2, vec![(0, 0), (0, 1), (0, 1), (1, 1)]).unwrap();
        let g = edge_label_decomposition(&m, 4).unwrap();
        assert_eq!(g.letter_count(), 2);
        assert!(g.undirected_view().same_edges(&m));
    }
}
