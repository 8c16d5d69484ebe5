//! Undirected multigraphs with loops.
//!
//! Loops contribute 2 to the degree of their vertex and 2 to the adjacency
//! diagonal. Girth conventions: a loop is a cycle of length 1, a parallel
//! pair a cycle of length 2, a forest has infinite girth.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u64),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<u64> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub girth: Girth,
    pub components: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    /// Common degree if the graph is regular.
    pub regular: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// Edges are stored with `u <= v`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Multigraph> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph { n, edges: normalized })
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Multigraph { n, edges }
    }

    pub fn cycle(n: usize) -> Multigraph {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::new(n, edges).expect("in range")
    }

    pub fn path(n: usize) -> Multigraph {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::new(n, edges).expect("in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as a sorted multiset, for equality up to ordering.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn same_edges(&self, other: &Multigraph) -> bool {
        self.n == other.n && self.edge_multiset() == other.edge_multiset()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            Some(&d) if deg.iter().all(|&x| x == d) => Some(d),
            _ => None,
        }
    }

    /// Neighbour lists with multiplicity; a loop appears twice in its own list.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Dense adjacency matrix, row-major; loops add 2 on the diagonal.
    pub fn adjacency(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for &(u, v) in &self.edges {
            if u == v {
                a[u * n + u] += 2.0;
            } else {
                a[u * n + v] += 1.0;
                a[v * n + u] += 1.0;
            }
        }
        a
    }

    /// Integer adjacency weights, row-major; loops add 2 on the diagonal.
    pub fn weight_matrix(&self) -> Vec<u32> {
        let n = self.n;
        let mut a = vec![0u32; n * n];
        for &(u, v) in &self.edges {
            if u == v {
                a[u * n + u] += 2;
            } else {
                a[u * n + v] += 1;
                a[v * n + u] += 1;
            }
        }
        a
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Subgraph spanned by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Multigraph::new(vertices.len(), edges).expect("renumbered in range")
    }

    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Multigraph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Number of non-loop edges with exactly one endpoint in `set`.
    pub fn boundary_size(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        self.edges.iter().filter(|&&(u, v)| inside[u] != inside[v]).count()
    }

    pub fn girth(&self) -> Girth {
        if self.edges.iter().any(|(u, v)| u == v) {
            return Girth::Finite(1);
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Girth::Finite(2);
        }
        let adj = self.neighbors();
        let mut best = u64::MAX;
        let mut dist = vec![u64::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut touched = Vec::new();
        for root in 0..self.n {
            for &t in &touched {
                dist[t] = u64::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(u) = queue.pop_front() {
                // any cycle closed from here on has length >= 2*dist[u]
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &adj[u] {
                    if dist[w] == u64::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        if best == u64::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn stats(&self) -> GraphStats {
        let degrees = self.degrees();
        GraphStats {
            girth: self.girth(),
            components: self.components(),
            regular: self.regular_degree(),
            degrees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_examples() {
        let c4 = Multigraph::cycle(4);
        let s = c4.stats();
        assert_eq!(s.girth, Girth::Finite(4));
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.regular, Some(2));

        let bouquet = Multigraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(bouquet.girth(), Girth::Finite(1));
        assert_eq!(bouquet.regular_degree(), Some(4));

        let two_triangles = Multigraph::cycle(3).disjoint_union(&Multigraph::cycle(3));
        let s = two_triangles.stats();
        assert_eq!(s.girth, Girth::Finite(3));
        assert_eq!(s.components, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn girth_conventions() {
        assert_eq!(
            Multigraph::new(2, vec![(0, 1), (1, 0)]).unwrap().girth(),
            Girth::Finite(2)
        );
        assert_eq!(Multigraph::path(5).girth(), Girth::Infinite);
        // Petersen graph has girth 5.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Multigraph::new(10, edges).unwrap();
        assert_eq!(petersen.girth(), Girth::Finite(5));
        assert_eq!(Multigraph::cycle(7).girth(), Girth::Finite(7));
        assert!(Girth::Finite(100) < Girth::Infinite);
    }

    #[test]
    fn boundary_ignores_loops() {
        let g = Multigraph::new(3, vec![(0, 0), (0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.boundary_size(&[0]), 2);
        assert_eq!(g.boundary_size(&[0, 1, 2]), 0);
        assert!(matches!(
            Multigraph::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }
}
