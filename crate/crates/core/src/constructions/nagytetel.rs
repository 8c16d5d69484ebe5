use alloc::vec::Vec;

use crate::labeled::SLabeledGraph;
use crate::spectral::set_expansion_exact;
use crate::subgroups::{restrict_to_subgroup, schreier_machinery, GeneratorSet, SubgroupRep};
use crate::word::Word;
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NagytetelReport {
    pub h_gs: Rational,
    pub h_gs_witness: Vec<usize>,
    /// `None` when the orbit is a single point (no admissible set).
    pub h_ot: Option<Rational>,
    pub h_ot_witness: Vec<usize>,
    pub index: usize,
    /// Orbit of vertex 0 under the generators of the subgroup.
    pub orbit: Vec<usize>,
    /// Symmetric generator words of the subgroup.
    pub t: Vec<Word>,
    pub bound: f64,
    pub pass: bool,
}

/// `(1 / (8 k^(3 − log₂3))) · min(h / k², 1)`.
pub fn nagytetel_bound(h: Rational, k: usize) -> f64 {
    let kf = k as f64;
    let h = *h.numer() as f64 / *h.denom() as f64;
    let scale = 1.0 / (8.0 * libm::pow(kf, 3.0 - libm::log2(3.0)));
    scale * (h / (kf * kf)).min(1.0)
}

/// Checks `h(O, T) > bound` for the Nielsen–Schreier generators `T` of `sub`
/// acting on the orbit `O` of vertex 0.
pub fn nagytetel_audit(g: &SLabeledGraph, s_words: &[Word], sub: &SubgroupRep) -> Result<NagytetelReport> {
    let (_, gens) = schreier_machinery(sub.action(), sub.basepoint())?;
    let k = sub.index();
    let h_gs = set_expansion_exact(g, s_words, None)?;
    let t = gens.symmetric();
    let orbit = if gens.is_empty() {
        alloc::vec![0]
    } else {
        restrict_to_subgroup(g, sub, &GeneratorSet::from_words(gens.words().to_vec()), 0)?.vertices
    };
    let bound = nagytetel_bound(h_gs.value, k);
    let (h_ot, h_ot_witness, pass) = match set_expansion_exact(g, &t, Some(&orbit)) {
        Ok(rep) => {
            let v = *rep.value.numer() as f64 / *rep.value.denom() as f64;
            (Some(rep.value), rep.witness, v > bound)
        }
        Err(Error::NoAdmissibleSet) => (None, Vec::new(), true),
        Err(e) => return Err(e),
    };
    Ok(NagytetelReport {
        h_gs: h_gs.value,
        h_gs_witness: h_gs.witness,
        h_ot,
        h_ot_witness,
        index: k,
        orbit,
        t,
        bound,
        pass,
    })
}
