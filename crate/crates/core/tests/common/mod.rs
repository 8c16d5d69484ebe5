#![allow(dead_code)]

use rand::Rng;
use schreier_core::rng::{self, Stream};
use schreier_core::subgroups::SubgroupRep;
use schreier_core::{Alphabet, Multigraph, SLabeledGraph};

pub fn rng(seed: u64) -> Stream {
    rng::stream(seed, &[0x00AC_CE55])
}

pub fn random_labeled(r: &mut Stream, n: usize, k: usize) -> SLabeledGraph {
    let perms = (0..k).map(|_| rng::permutation(r, n)).collect();
    SLabeledGraph::new(n, Alphabet::standard(k), perms).unwrap()
}

pub fn random_transitive(r: &mut Stream, n: usize, k: usize) -> SLabeledGraph {
    loop {
        let g = random_labeled(r, n, k);
        if g.is_transitive() {
            return g;
        }
    }
}

/// Configuration model: random pairing of `d` stubs per vertex.
pub fn random_regular(r: &mut Stream, n: usize, d: usize) -> Multigraph {
    assert!((n * d).is_multiple_of(2));
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for i in (1..stubs.len()).rev() {
        let j = r.gen_range(0..=i);
        stubs.swap(i, j);
    }
    let edges = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
    Multigraph::new(n, edges).unwrap()
}

pub fn random_connected_regular(r: &mut Stream, n: usize, d: usize) -> Multigraph {
    loop {
        let m = random_regular(r, n, d);
        if m.is_connected() {
            return m;
        }
    }
}

/// A random pointed transitive action of index `k` on `letters` letters.
pub fn random_subgroup(r: &mut Stream, k: usize, letters: usize) -> SubgroupRep {
    SubgroupRep::new(random_transitive(r, k, letters), 0).unwrap()
}

pub fn edge_multiset(m: &Multigraph) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = m.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}
