//! Finite-index subgroups of free groups, represented by pointed transitive
//! actions: the subgroup is the stabilizer of the basepoint.
//!
//! Subgroups are never enumerated; the index is the only size that is ever
//! materialized.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::groups::FiniteGroup;
use crate::labeled::{Alphabet, SLabeledGraph};
use crate::word::{Sign, Word};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRep {
    action: SLabeledGraph,
    basepoint: usize,
}

impl SubgroupRep {
    pub fn new(action: SLabeledGraph, basepoint: usize) -> Result<SubgroupRep> {
        action.check_vertex(basepoint)?;
        if !action.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(SubgroupRep { action, basepoint })
    }

    /// The whole free group (index 1).
    pub fn whole(alphabet: Alphabet) -> SubgroupRep {
        let perms = vec![vec![0]; alphabet.len()];
        SubgroupRep {
            action: SLabeledGraph::new(1, alphabet, perms).expect("identity action"),
            basepoint: 0,
        }
    }

    /// Kernel of the map to `Z/modulus` sending letter `i` to `images[i]`.
    /// The action is translation on the orbit of `0`, so the index is the
    /// order of the subgroup generated by the images.
    pub fn abelian_kernel(alphabet: Alphabet, modulus: usize, images: &[usize]) -> Result<SubgroupRep> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive"));
        }
        if images.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        let perms = images
            .iter()
            .map(|&m| (0..modulus).map(|x| (x + m) % modulus).collect())
            .collect();
        let full = SLabeledGraph::new(modulus, alphabet, perms)?;
        let orbit = full.orbits().into_iter().next().expect("nonempty");
        SubgroupRep::new(full.induced(&orbit)?, 0)
    }

    pub fn action(&self) -> &SLabeledGraph {
        &self.action
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn index(&self) -> usize {
        self.action.vertex_count()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.action.alphabet()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.action.apply_word(self.basepoint, w) == self.basepoint
    }

    /// The conjugate `g^-1 H g`, the stabilizer of `basepoint·g`.
    pub fn conjugate(&self, g: &Word) -> SubgroupRep {
        SubgroupRep {
            action: self.action.clone(),
            basepoint: self.action.apply_word(self.basepoint, g),
        }
    }
}

/// Coset representatives: `reps[v]` carries the basepoint to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pub reps: Vec<Word>,
}

/// Nielsen–Schreier generators with identities dropped and inverse pairs
/// merged; [`GeneratorSet::symmetric`] re-expands them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    words: Vec<Word>,
    /// Number of words `c·s·p⁻¹` formed before dropping and merging.
    pub raw_count: usize,
}

impl GeneratorSet {
    pub fn from_words(words: Vec<Word>) -> GeneratorSet {
        let raw_count = words.len();
        GeneratorSet { words, raw_count }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Each stored word followed by its inverse.
    pub fn symmetric(&self) -> Vec<Word> {
        self.words.iter().flat_map(|w| [w.clone(), w.inverse()]).collect()
    }
}

/// Shortlex breadth-first transversal and the generators
/// `{ c·s·p_{c,s}⁻¹ : c ∈ C, s ∈ S ∪ S⁻¹ }` of the basepoint stabilizer.
///
/// Letters are tried in alphabet order with `+` before `−`, so the
/// transversal and the generator list are deterministic.
pub fn schreier_machinery(g: &SLabeledGraph, basepoint: usize) -> Result<(Transversal, GeneratorSet)> {
    g.check_vertex(basepoint)?;
    let n = g.vertex_count();
    let k = g.letter_count();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut order = Vec::with_capacity(n);
    reps[basepoint] = Some(Word::identity());
    let mut queue = VecDeque::from([basepoint]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for s in 0..k {
            for sign in [Sign::Pos, Sign::Neg] {
                let y = g.step(x, s, sign);
                if reps[y].is_none() {
                    let mut w = reps[x].clone().expect("visited");
                    w.push(s, sign);
                    reps[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotTransitive);
    }
    let reps: Vec<Word> = reps.into_iter().map(|r| r.expect("transitive")).collect();

    let mut seen: BTreeMap<Word, ()> = BTreeMap::new();
    let mut words = Vec::new();
    let mut raw_count = 0;
    for c in 0..n {
        for s in 0..k {
            for sign in [Sign::Pos, Sign::Neg] {
                raw_count += 1;
                let target = g.step(c, s, sign);
                let w = reps[c]
                    .then(&Word::from_syllables(vec![(s, sign)]))
                    .then(&reps[target].inverse())
                    .reduced();
                if w.is_empty() || seen.contains_key(&w) {
                    continue;
                }
                seen.insert(w.inverse(), ());
                seen.insert(w.clone(), ());
                words.push(w);
            }
        }
    }
    Ok((Transversal { reps }, GeneratorSet { words, raw_count }))
}

/// The action of a subgroup on one of its orbits, relabeled by its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    /// One letter per generator word, named by the word.
    pub graph: SLabeledGraph,
    /// `vertices[i]` is the vertex of the ambient graph numbered `i`.
    pub vertices: Vec<usize>,
}

/// Restricts `g` to the orbit of `v0` under the words of `gens`, which must
/// lie in `sub`. For `g = Sch(Γ/Γ', S)` this is `Sch(H/H∩Γ', T)`.
pub fn restrict_to_subgroup(
    g: &SLabeledGraph,
    sub: &SubgroupRep,
    gens: &GeneratorSet,
    v0: usize,
) -> Result<Restriction> {
    if g.alphabet() != sub.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    g.check_vertex(v0)?;
    if gens.is_empty() {
        return Err(Error::InvalidParameter("generator set is empty"));
    }
    for (i, w) in gens.words().iter().enumerate() {
        g.check_word(w)?;
        if !sub.contains(w) {
            return Err(Error::WordNotInSubgroup(i));
        }
    }
    let n = g.vertex_count();
    let mut in_orbit = vec![false; n];
    in_orbit[v0] = true;
    let mut queue = VecDeque::from([v0]);
    let mut vertices = vec![v0];
    while let Some(x) = queue.pop_front() {
        for w in gens.words() {
            for y in [g.apply_word(x, w), g.apply_word(x, &w.inverse())] {
                if !in_orbit[y] {
                    in_orbit[y] = true;
                    vertices.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    vertices.sort_unstable();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let perms = gens
        .words()
        .iter()
        .map(|w| vertices.iter().map(|&v| index[g.apply_word(v, w)]).collect())
        .collect();
    let names: Vec<_> = gens
        .words()
        .iter()
        .map(|w| format!("{}", w.display(g.alphabet())))
        .collect();
    Ok(Restriction {
        graph: SLabeledGraph::new(vertices.len(), Alphabet::new(names)?, perms)?,
        vertices,
    })
}

/// `H ∩ K` with the coordinate projections of its coset action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub rep: SubgroupRep,
    /// Coset of `H` under each coset of `H ∩ K`.
    pub left: Vec<usize>,
    /// Coset of `K` under each coset of `H ∩ K`.
    pub right: Vec<usize>,
}

/// Orbit of the basepoint pair in the product action, numbered breadth first.
pub fn intersect_with_projections(a: &SubgroupRep, b: &SubgroupRep) -> Result<Intersection> {
    intersect_capped(a, b, usize::MAX)
}

/// As [`intersect_with_projections`], failing once the orbit exceeds `cap`.
pub fn intersect_capped(a: &SubgroupRep, b: &SubgroupRep, cap: usize) -> Result<Intersection> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = a.alphabet().len();
    let (ga, gb) = (a.action(), b.action());
    let start = (a.basepoint(), b.basepoint());
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pairs = vec![start];
    index.insert(start, 0);
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        head += 1;
        for s in 0..k {
            let next = (ga.perm(s)[x], gb.perm(s)[y]);
            if let Entry::Vacant(slot) = index.entry(next) {
                if pairs.len() == cap {
                    return Err(Error::CapExceeded {
                        needed: pairs.len() + 1,
                        cap,
                    });
                }
                slot.insert(pairs.len());
                pairs.push(next);
            }
        }
    }
    let perms = (0..k)
        .map(|s| {
            pairs
                .iter()
                .map(|&(x, y)| index[&(ga.perm(s)[x], gb.perm(s)[y])])
                .collect()
        })
        .collect();
    let action = SLabeledGraph::new(pairs.len(), a.alphabet().clone(), perms)?;
    Ok(Intersection {
        rep: SubgroupRep { action, basepoint: 0 },
        left: pairs.iter().map(|p| p.0).collect(),
        right: pairs.iter().map(|p| p.1).collect(),
    })
}

pub fn intersect_actions(a: &SubgroupRep, b: &SubgroupRep) -> Result<SubgroupRep> {
    intersect_with_projections(a, b).map(|i| i.rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AveragingReport {
    /// `E_g μ(Ag ∩ B)` over uniform `g`.
    pub mean: Rational,
    /// `μ(A) μ(B)`.
    pub product: Rational,
    pub pass: bool,
}

/// A subset `A` of a group of order at most 64 with all right translates
/// `Ag` precomputed, for checking the averaging identity against many `B`.
#[derive(Debug, Clone)]
pub struct TranslatedSet {
    order: usize,
    size: usize,
    translates: Vec<u64>,
}

impl TranslatedSet {
    pub const MAX_ORDER: usize = 64;

    pub fn new(group: &FiniteGroup, a_mask: u64) -> Result<TranslatedSet> {
        let order = group.order();
        if order > Self::MAX_ORDER {
            return Err(Error::SizeGuard {
                size: order,
                limit: Self::MAX_ORDER,
            });
        }
        check_mask(a_mask, order)?;
        let translates = (0..order)
            .map(|g| {
                (0..order)
                    .filter(|&a| a_mask >> a & 1 == 1)
                    .fold(0u64, |m, a| m | 1 << group.mul(a, g))
            })
            .collect();
        Ok(TranslatedSet {
            order,
            size: a_mask.count_ones() as usize,
            translates,
        })
    }

    pub fn check(&self, b_mask: u64) -> Result<AveragingReport> {
        check_mask(b_mask, self.order)?;
        let hits: u64 = self
            .translates
            .iter()
            .map(|&t| u64::from((t & b_mask).count_ones()))
            .sum();
        let sq = (self.order * self.order) as i64;
        let mean = Rational::new(hits as i64, sq);
        let product = Rational::new((self.size * b_mask.count_ones() as usize) as i64, sq);
        Ok(AveragingReport {
            mean,
            product,
            pass: mean == product,
        })
    }
}

fn check_mask(mask: u64, order: usize) -> Result<()> {
    if order < 64 && mask >> order != 0 {
        return Err(Error::OutOfRange {
            element: 63 - mask.leading_zeros() as usize,
            order,
        });
    }
    Ok(())
}

/// Exact check of `E(μ(Ag ∩ B)) = μ(A)μ(B)` for `g` uniform in a finite group.
pub fn averaging_identity_check(group: &FiniteGroup, a: &[usize], b: &[usize]) -> Result<AveragingReport> {
    let order = group.order();
    let to_mask = |set: &[usize]| -> Result<u64> {
        let mut m = 0u64;
        for &x in set {
            if x >= order || x >= 64 {
                return Err(Error::OutOfRange { element: x, order });
            }
            m |= 1 << x;
        }
        Ok(m)
    };
    let (am, bm) = (to_mask(a)?, to_mask(b)?);
    TranslatedSet::new(group, am)?.check(bm)
}
