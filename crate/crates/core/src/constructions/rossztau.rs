use alloc::vec;
use alloc::vec::Vec;

use crate::labeled::{Alphabet, SLabeledGraph};
use crate::subgroups::{intersect_capped, restrict_to_subgroup, schreier_machinery, GeneratorSet, SubgroupRep};
use crate::word::Word;
use crate::{Error, Rational, Result};

const X1: usize = 0;
const X2: usize = 1;
const T: usize = 2;

/// The index-two counterexample built over a transitive two-letter base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rossztau {
    /// Action of `x1, x2, t, c` on two sheets of the base.
    pub graph: SLabeledGraph,
    /// Kernel of `t ↦ 1`, `x1, x2, c ↦ 0` modulo 2.
    pub h: SubgroupRep,
    pub t: GeneratorSet,
    /// Action of `H` on its orbit through vertex 0, one letter per word of `t`.
    pub t_graph: SLabeledGraph,
    /// Sheet 0, as vertices of `graph`.
    pub witness: Vec<usize>,
    /// Undirected `t_graph` edges leaving the witness.
    pub crossing: usize,
    /// `crossing / |witness|`.
    pub ch_bound: Rational,
    /// `x1 = t x1 t⁻¹`, `x2 = t x2 t⁻¹` and `t² = 1` as permutations.
    pub relations_hold: bool,
}

impl Rossztau {
    /// Base vertex count.
    pub fn sheet_size(&self) -> usize {
        self.witness.len()
    }

    /// Stabilizer of `e2 = 1`, a chain member.
    pub fn member(&self) -> SubgroupRep {
        SubgroupRep::new(self.graph.clone(), 1).expect("construction is transitive")
    }
}

pub fn rossztau_build(base: &SLabeledGraph) -> Result<Rossztau> {
    let n = base.vertex_count();
    if base.letter_count() != 2 {
        return Err(Error::InvalidParameter("base must have two letters"));
    }
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    if !base.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let sheetwise = |s: usize| -> Vec<usize> {
        let p = base.perm(s);
        p.iter().copied().chain(p.iter().map(|&y| y + n)).collect()
    };
    let swap: Vec<usize> = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
    let (e1, e2, e3) = (0, 1, 1 + n);
    let mut c: Vec<usize> = (0..2 * n).collect();
    c[e1] = e2;
    c[e2] = e3;
    c[e3] = e1;
    let alphabet = Alphabet::new(["x1", "x2", "t", "c"])?;
    let graph = SLabeledGraph::new(2 * n, alphabet.clone(), vec![sheetwise(0), sheetwise(1), swap, c])?;
    let h = SubgroupRep::abelian_kernel(alphabet, 2, &[0, 0, 1, 0])?;
    let (_, t) = schreier_machinery(h.action(), h.basepoint())?;
    let restriction = restrict_to_subgroup(&graph, &h, &t, 0)?;
    let local: Vec<usize> = (0..restriction.vertices.len())
        .filter(|&i| restriction.vertices[i] < n)
        .collect();
    let crossing = restriction.graph.undirected_view().boundary_size(&local);
    let conj = |s: usize| Word::letter(T).then(&Word::letter(s)).then(&Word::inverse_letter(T));
    let same = |a: &Word, b: &Word| graph.word_permutation(a) == graph.word_permutation(b);
    let relations_hold = same(&Word::letter(X1), &conj(X1))
        && same(&Word::letter(X2), &conj(X2))
        && same(&Word::letter(T).then(&Word::letter(T)), &Word::identity());
    Ok(Rossztau {
        witness: (0..n).collect(),
        crossing,
        ch_bound: Rational::new(crossing as i64, n as i64),
        relations_hold,
        t_graph: restriction.graph,
        graph,
        h,
        t,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LubtauLevel {
    /// Number of members intersected.
    pub level: usize,
    /// Index of the intersection in the free group.
    pub index: usize,
    /// Vertices of the orbit graph of `H` on the cosets.
    pub orbit_size: usize,
    /// Per member: crossing count of its pulled-back witness.
    pub crossings: Vec<usize>,
    /// Per member: size of the pulled-back witness (or its complement,
    /// whichever is at most half).
    pub witness_sizes: Vec<usize>,
    /// Smallest ratio over the members.
    pub bound: Rational,
    pub best_member: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LubtauReport {
    pub levels: Vec<LubtauLevel>,
    /// `Some(needed)` when the next intersection would exceed the cap.
    pub truncated: Option<usize>,
    pub monotone: bool,
}

/// Folds the members' point stabilizers into `Γ_n = H_1 ∩ ... ∩ H_n` and
/// bounds the edge Cheeger constant of the `H`-orbit graph at every level by
/// pulling back each member's sheet-0 witness.
pub fn lubtau_chain_report(members: &[Rossztau], cap: usize) -> Result<LubtauReport> {
    let first = members.first().ok_or(Error::InvalidParameter("no members"))?;
    for m in members {
        if m.h != first.h || m.t != first.t {
            return Err(Error::AlphabetMismatch);
        }
    }
    let mut levels: Vec<LubtauLevel> = Vec::new();
    let mut truncated = None;
    let mut current = first.member();
    // projections of the current cosets to each member's cosets
    let mut projections: Vec<Vec<usize>> = vec![(0..current.index()).collect()];
    if current.index() > cap {
        return Err(Error::CapExceeded {
            needed: current.index(),
            cap,
        });
    }
    for (i, member) in members.iter().enumerate() {
        if i > 0 {
            match intersect_capped(&current, &member.member(), cap) {
                Ok(next) => {
                    projections = projections
                        .iter()
                        .map(|p| next.left.iter().map(|&x| p[x]).collect())
                        .collect();
                    projections.push(next.right);
                    current = next.rep;
                }
                Err(Error::CapExceeded { needed, .. }) => {
                    truncated = Some(needed);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let restriction = restrict_to_subgroup(current.action(), &first.h, &first.t, current.basepoint())?;
        let view = restriction.graph.undirected_view();
        let total = restriction.vertices.len();
        let mut crossings = Vec::new();
        let mut sizes = Vec::new();
        let mut best: Option<(Rational, usize)> = None;
        for (j, proj) in projections.iter().enumerate() {
            let sheet = members[j].sheet_size();
            let mut set: Vec<usize> = (0..total).filter(|&v| proj[restriction.vertices[v]] < sheet).collect();
            if 2 * set.len() > total {
                let mut inside = vec![false; total];
                for &v in &set {
                    inside[v] = true;
                }
                set = (0..total).filter(|&v| !inside[v]).collect();
            }
            let crossing = view.boundary_size(&set);
            crossings.push(crossing);
            sizes.push(set.len());
            if !set.is_empty() {
                let ratio = Rational::new(crossing as i64, set.len() as i64);
                if best.is_none_or(|(b, _)| ratio < b) {
                    best = Some((ratio, j));
                }
            }
        }
        let (bound, best_member) = best.ok_or(Error::NoAdmissibleSet)?;
        levels.push(LubtauLevel {
            level: i + 1,
            index: current.index(),
            orbit_size: total,
            crossings,
            witness_sizes: sizes,
            bound,
            best_member,
        });
    }
    let monotone = levels.windows(2).all(|w| w[1].bound <= w[0].bound);
    Ok(LubtauReport {
        levels,
        truncated,
        monotone,
    })
}
