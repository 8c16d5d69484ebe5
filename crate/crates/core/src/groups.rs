//! Small finite groups given by permutations, and their right-regular actions.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::labeled::{Alphabet, SLabeledGraph};
use crate::{Error, Result};

/// A finite group with elements numbered `0..order`, identity first.
///
/// Elements are permutations of `0..degree`; the product `g·h` applies `g`
/// first, matching right actions.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<Vec<usize>>,
    table: Vec<usize>,
    generators: Vec<usize>,
}

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| h[x]).collect()
}

impl FiniteGroup {
    /// Closure of `generators` acting on `0..degree`.
    pub fn generated(name: impl Into<String>, degree: usize, generators: &[Vec<usize>]) -> FiniteGroup {
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for gen in generators {
                let next = compose(&elements[i], gen);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let generators = generators.iter().map(|g| index[&compose(&elements[0], g)]).collect();
        FiniteGroup {
            name: name.into(),
            elements,
            table,
            generators,
        }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::generated(format!("Z{n}"), n, &[rotation])
    }

    /// Symmetries of an `n`-gon, order `2n` for `n >= 3`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::generated(format!("D{n}"), n, &[rotation, reflection])
    }

    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::generated("S3", 3, &[vec![1, 0, 2], vec![0, 2, 1]])
    }

    pub fn alternating4() -> FiniteGroup {
        FiniteGroup::generated("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    /// Cyclic groups of order `1..=12`, dihedral `D3..D6`, `S3` and `A4`.
    pub fn fixtures_up_to_order_12() -> Vec<FiniteGroup> {
        let mut out: Vec<FiniteGroup> = (1..=12).map(FiniteGroup::cyclic).collect();
        out.extend((3..=6).map(FiniteGroup::dihedral));
        out.push(FiniteGroup::symmetric3());
        out.push(FiniteGroup::alternating4());
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Element indices of the generators passed at construction.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("finite group element has an inverse")
    }

    /// Right-regular action of the free group on the listed generators:
    /// vertex `x` goes to `x·g_i` under letter `i`.
    pub fn cayley_graph(&self, generators: &[usize]) -> Result<SLabeledGraph> {
        let order = self.order();
        for &g in generators {
            if g >= order {
                return Err(Error::OutOfRange { element: g, order });
            }
        }
        let perms = generators
            .iter()
            .map(|&g| (0..order).map(|x| self.mul(x, g)).collect())
            .collect();
        SLabeledGraph::new(order, Alphabet::standard(generators.len()), perms)
    }
}
