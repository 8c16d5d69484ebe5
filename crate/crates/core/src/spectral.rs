//! Adjacency spectra, exact expansion constants and bipartiteness measures.
//!
//! Exhaustive routines work on vertex bitmasks and carry explicit size
//! guards. Ties between witnesses are broken towards the lexicographically
//! smallest sorted vertex list.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::eigen::symmetric_eigenvalues;
use crate::labeled::SLabeledGraph;
use crate::multigraph::Multigraph;
use crate::subgroups::SubgroupRep;
use crate::word::Word;
use crate::{Error, Rational, Result};

pub const SPECTRUM_LIMIT: usize = 4096;
pub const EXHAUSTIVE_LIMIT: usize = 20;
pub const PSI_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Descending, with multiplicity.
    pub eigenvalues: Vec<f64>,
    pub lambda0: f64,
    /// Second largest eigenvalue; absent for a single vertex.
    pub lambda1: Option<f64>,
    pub lambda_min: f64,
    pub gap: Option<f64>,
}

pub fn spectrum(m: &Multigraph) -> Result<SpectrumReport> {
    let n = m.vertex_count();
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    if n > SPECTRUM_LIMIT {
        return Err(Error::SizeGuard {
            size: n,
            limit: SPECTRUM_LIMIT,
        });
    }
    let eigenvalues = symmetric_eigenvalues(m.adjacency(), n)?;
    let lambda0 = eigenvalues[0];
    let lambda1 = eigenvalues.get(1).copied();
    let report = SpectrumReport {
        lambda0,
        lambda1,
        lambda_min: eigenvalues[n - 1],
        gap: lambda1.map(|l| lambda0 - l),
        eigenvalues,
    };
    debug_assert!({
        let (d1, d2) = trace_deviation(m, &report);
        d1 < 1e-6 && d2 < 1e-6
    });
    Ok(report)
}

/// `(|Σλ − tr A|, |Σλ² − tr A²|)`, both of which should vanish.
pub fn trace_deviation(m: &Multigraph, report: &SpectrumReport) -> (f64, f64) {
    let trace = 2.0 * m.loop_count() as f64;
    let trace_sq: f64 = m.adjacency().iter().map(|x| x * x).sum();
    let s1: f64 = report.eigenvalues.iter().sum();
    let s2: f64 = report.eigenvalues.iter().map(|x| x * x).sum();
    (libm::fabs(s1 - trace), libm::fabs(s2 - trace_sq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    EdgeCheeger,
    SetExpansion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub value: Rational,
    /// Sorted vertex set attaining the minimum.
    pub witness: Vec<usize>,
    pub kind: ExpansionKind,
}

/// Compares the sorted element lists of two bitmasks lexicographically.
pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    // both lists agree below the first differing element
    let low = (a ^ b).trailing_zeros();
    let a_has = a >> low & 1 == 1;
    let rest = if a_has { b } else { a } >> low;
    // the list lacking `low` is a proper prefix iff it has nothing above it
    if a_has == (rest != 0) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn guard(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeGuard { size, limit })
    } else {
        Ok(())
    }
}

/// Minimum-ratio tracker with the lexicographic tie-break.
struct Best {
    num: u64,
    den: u64,
    mask: u64,
}

impl Best {
    fn new() -> Self {
        Best {
            num: 1,
            den: 0,
            mask: 0,
        }
    }

    fn offer(&mut self, num: u64, den: u64, mask: u64) {
        if self.den == 0 {
            *self = Best { num, den, mask };
            return;
        }
        let lhs = u128::from(num) * u128::from(self.den);
        let rhs = u128::from(self.num) * u128::from(den);
        if lhs < rhs || (lhs == rhs && lex_cmp(mask, self.mask) == Ordering::Less) {
            *self = Best { num, den, mask };
        }
    }

    fn ratio(&self) -> Option<Rational> {
        (self.den != 0).then(|| Rational::new(self.num as i64, self.den as i64))
    }
}

/// Non-loop neighbours of each vertex with multiplicity.
fn simple_neighbors(m: &Multigraph) -> Vec<Vec<(usize, u32)>> {
    let n = m.vertex_count();
    let w = m.weight_matrix();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && w[u * n + v] > 0)
                .map(|v| (v, w[u * n + v]))
                .collect()
        })
        .collect()
}

/// `Ch(G) = min |L(A)|/|A|` over `0 < |A| <= n/2`, by Gray-code enumeration.
///
/// A disconnected graph is rejected unless `allow_disconnected`, in which
/// case the value is 0.
pub fn edge_cheeger_exact(m: &Multigraph, allow_disconnected: bool) -> Result<ExpansionReport> {
    let n = m.vertex_count();
    guard(n, EXHAUSTIVE_LIMIT)?;
    if n < 2 {
        return Err(Error::NoAdmissibleSet);
    }
    if !allow_disconnected && !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let nbrs = simple_neighbors(m);
    let degree: Vec<u64> = nbrs
        .iter()
        .map(|row| row.iter().map(|&(_, c)| u64::from(c)).sum())
        .collect();
    let mut best = Best::new();
    let mut mask = 0u64;
    let mut boundary: u64 = 0;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let into_set: u64 = nbrs[v]
            .iter()
            .filter(|&&(u, _)| mask >> u & 1 == 1)
            .map(|&(_, c)| u64::from(c))
            .sum();
        if mask >> v & 1 == 0 {
            boundary = boundary + degree[v] - 2 * into_set;
        } else {
            boundary = boundary + 2 * into_set - degree[v];
        }
        mask ^= 1 << v;
        let size = u64::from(mask.count_ones());
        if 2 * size <= n as u64 {
            best.offer(boundary, size, mask);
        }
    }
    Ok(ExpansionReport {
        value: best.ratio().expect("n >= 2 admits a singleton"),
        witness: mask_to_vec(best.mask),
        kind: ExpansionKind::EdgeCheeger,
    })
}

/// Bitmask image tables for a map on at most 20 local points.
struct MaskImage {
    tables: [Vec<u64>; 3],
}

impl MaskImage {
    fn new(map: &[usize]) -> Self {
        let chunk = |lo: usize, bits: usize| -> Vec<u64> {
            (0..1usize << bits)
                .map(|c| {
                    (0..bits)
                        .filter(|&b| c >> b & 1 == 1 && lo + b < map.len())
                        .fold(0u64, |acc, b| acc | 1 << map[lo + b])
                })
                .collect()
        };
        MaskImage {
            tables: [chunk(0, 8), chunk(8, 8), chunk(16, 8)],
        }
    }

    #[inline]
    fn image(&self, mask: u64) -> u64 {
        self.tables[0][(mask & 0xFF) as usize]
            | self.tables[1][(mask >> 8 & 0xFF) as usize]
            | self.tables[2][(mask >> 16 & 0xFF) as usize]
    }
}

/// Local maps of `words` on `domain`, or an error if some word leaves it.
fn local_maps(g: &SLabeledGraph, words: &[Word], domain: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in domain.iter().enumerate() {
        g.check_vertex(v)?;
        local[v] = i;
    }
    words
        .iter()
        .map(|w| {
            g.check_word(w)?;
            domain
                .iter()
                .map(|&v| match local[g.apply_word(v, w)] {
                    usize::MAX => Err(Error::DomainNotInvariant),
                    i => Ok(i),
                })
                .collect()
        })
        .collect()
}

/// `h(O, S) = min |AS∖A|/|A|` over nonempty `A ⊆ O` with `|A| <= |O|/2`,
/// where `AS = {a·s}`. The domain defaults to all vertices and must be
/// mapped into itself by every word.
pub fn set_expansion_exact(g: &SLabeledGraph, words: &[Word], domain: Option<&[usize]>) -> Result<ExpansionReport> {
    let all: Vec<usize>;
    let domain = match domain {
        Some(d) => d,
        None => {
            all = (0..g.vertex_count()).collect();
            &all
        }
    };
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    guard(domain.len(), EXHAUSTIVE_LIMIT)?;
    let size = domain.len();
    if size < 2 {
        return Err(Error::NoAdmissibleSet);
    }
    let images: Vec<MaskImage> = local_maps(g, words, domain)?
        .iter()
        .map(|m| MaskImage::new(m))
        .collect();
    let mut best = Best::new();
    for mask in 1u64..(1u64 << size) {
        let card = u64::from(mask.count_ones());
        if 2 * card > size as u64 {
            continue;
        }
        let image = images.iter().fold(0u64, |acc, t| acc | t.image(mask));
        best.offer(u64::from((image & !mask).count_ones()), card, mask);
    }
    let witness = mask_to_vec(best.mask).into_iter().map(|i| domain[i]).collect();
    Ok(ExpansionReport {
        value: best.ratio().expect("size >= 2 admits a singleton"),
        witness,
        kind: ExpansionKind::SetExpansion,
    })
}

/// Maximum cut of the subgraph spanned by `mask` (weights row-major, `n`
/// vertices). Returns `(cut, side)` with `side ⊆ mask`.
fn max_cut_of_span(weights: &[u32], n: usize, mask: u64) -> (u64, u64) {
    let members = mask_to_vec(mask);
    let s = members.len();
    if s < 2 {
        return (0, 0);
    }
    // the last member stays on side 0
    let free = s - 1;
    let mut side = 0u64; // local bits
    let mut cut: i64 = 0;
    let (mut best, mut best_side) = (0i64, 0u64);
    for i in 1u64..(1u64 << free) {
        let b = i.trailing_zeros() as usize;
        let v = members[b];
        let mut to_same = 0i64;
        let mut to_other = 0i64;
        for (j, &u) in members.iter().enumerate() {
            if j == b {
                continue;
            }
            let w = i64::from(weights[v * n + u]);
            if (side >> j & 1) == (side >> b & 1) {
                to_same += w;
            } else {
                to_other += w;
            }
        }
        // moving v flips its edges between cut and uncut
        cut += to_same - to_other;
        side ^= 1 << b;
        if cut > best {
            best = cut;
            best_side = side;
        }
    }
    let global = (0..s)
        .filter(|&j| best_side >> j & 1 == 1)
        .fold(0u64, |acc, j| acc | 1 << members[j]);
    (best as u64, global)
}

fn span_edge_count(m: &Multigraph, mask: u64) -> u64 {
    m.edges()
        .iter()
        .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
        .count() as u64
}

fn boundary_count(m: &Multigraph, mask: u64) -> u64 {
    m.edges()
        .iter()
        .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
        .count() as u64
}

/// Maximum cut of the whole graph with one side as witness.
pub fn max_cut(m: &Multigraph) -> Result<(u64, Vec<usize>)> {
    let n = m.vertex_count();
    guard(n, EXHAUSTIVE_LIMIT)?;
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let (cut, side) = max_cut_of_span(&m.weight_matrix(), n, full);
    Ok((cut, mask_to_vec(side)))
}

/// `(e(S), k(S))`: edges to delete to make the span of `S` bipartite, and
/// edges leaving `S`.
pub fn bipartite_costs(m: &Multigraph, set: &[usize]) -> Result<(u64, u64)> {
    let n = m.vertex_count();
    guard(set.len(), EXHAUSTIVE_LIMIT)?;
    if n > 64 {
        // masks below are 64-bit; restrict to the relevant part first
        return Err(Error::SizeGuard { size: n, limit: 64 });
    }
    let mut mask = 0u64;
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask |= 1 << v;
    }
    let (cut, _) = max_cut_of_span(&m.weight_matrix(), n, mask);
    Ok((span_edge_count(m, mask) - cut, boundary_count(m, mask)))
}

/// `r(G) = (|E| − maxcut)/|V|`: edges to erase per vertex to make `G` bipartite.
pub fn bipartite_edit_distance(m: &Multigraph) -> Result<Rational> {
    let n = m.vertex_count();
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let (cut, _) = max_cut(m)?;
    Ok(Rational::new((m.edge_count() as u64 - cut) as i64, n as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitenessReport {
    pub psi: Rational,
    pub psi_witness: Vec<usize>,
    /// `e(S)` and `k(S)` of the ψ witness.
    pub e_s: u64,
    pub k_s: u64,
    /// `min k(S)/|S|` over `|S| <= n/2`; equals the edge Cheeger constant.
    pub c: Rational,
    pub c_witness: Vec<usize>,
    /// `e(V)/|V|`.
    pub r: Rational,
    pub e_v: u64,
    /// One side of a maximum cut.
    pub max_cut_side: Vec<usize>,
}

/// Exact `ψ(G) = min_S (e(S)+k(S))/|S|` together with `c(G)` and `r(G)`.
pub fn psi(m: &Multigraph) -> Result<BipartitenessReport> {
    let n = m.vertex_count();
    guard(n, PSI_LIMIT)?;
    if n < 2 {
        return Err(Error::NoAdmissibleSet);
    }
    let weights = m.weight_matrix();
    let full = (1u64 << n) - 1;
    let mut best_psi = Best::new();
    let mut best_c = Best::new();
    let mut psi_costs = (0, 0);
    let mut e_v = 0;
    let mut max_side = 0;
    for mask in 1..=full {
        let (cut, side) = max_cut_of_span(&weights, n, mask);
        let e = span_edge_count(m, mask) - cut;
        let k = boundary_count(m, mask);
        let size = u64::from(mask.count_ones());
        best_psi.offer(e + k, size, mask);
        if best_psi.mask == mask {
            psi_costs = (e, k);
        }
        if 2 * size <= n as u64 {
            best_c.offer(k, size, mask);
        }
        if mask == full {
            e_v = e;
            max_side = side;
        }
    }
    Ok(BipartitenessReport {
        psi: best_psi.ratio().expect("nonempty"),
        psi_witness: mask_to_vec(best_psi.mask),
        e_s: psi_costs.0,
        k_s: psi_costs.1,
        c: best_c.ratio().expect("n >= 2"),
        c_witness: mask_to_vec(best_c.mask),
        r: Rational::new(e_v as i64, n as i64),
        e_v,
        max_cut_side: mask_to_vec(max_side),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundChecks {
    pub degree: usize,
    pub lambda_min: f64,
    pub bipartiteness: BipartitenessReport,
    /// `−d + ψ²/4d`.
    pub desai_rao_bound: f64,
    pub desai_rao_pass: bool,
    /// `min{c, rc/2d, r/4}`.
    pub psi_lower: Rational,
    pub psi_lemma_pass: bool,
}

pub const EIGEN_SLACK: f64 = 1e-6;

/// Evaluates `λ_min >= −d + ψ²/4d` and `ψ >= min{c, rc/2d, r/4}`.
pub fn eigenvalue_bound_checks(m: &Multigraph, d: usize) -> Result<BoundChecks> {
    for (vertex, &degree) in m.degrees().iter().enumerate() {
        if degree != d {
            return Err(Error::NotRegular {
                vertex,
                degree,
                expected: d,
            });
        }
    }
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let bip = psi(m)?;
    let spec = spectrum(m)?;
    let df = d as f64;
    let psi_f = *bip.psi.numer() as f64 / *bip.psi.denom() as f64;
    let desai_rao_bound = -df + psi_f * psi_f / (4.0 * df);
    let two_d = Rational::from_integer(2 * d as i64);
    let psi_lower = bip.c.min(bip.r * bip.c / two_d).min(bip.r / Rational::from_integer(4));
    Ok(BoundChecks {
        degree: d,
        lambda_min: spec.lambda_min,
        desai_rao_pass: spec.lambda_min >= desai_rao_bound - EIGEN_SLACK,
        desai_rao_bound,
        psi_lemma_pass: bip.psi >= psi_lower,
        psi_lower,
        bipartiteness: bip,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraflemmaReport {
    /// `Σ_v max(0, max_{w~v} f(w) − f(v))`.
    pub total: f64,
    /// `max f − min f`.
    pub spread: f64,
    pub pass: bool,
}

pub fn graflemma_value(m: &Multigraph, f: &[f64]) -> Result<GraflemmaReport> {
    if f.len() != m.vertex_count() {
        return Err(Error::InvalidParameter("one value per vertex is required"));
    }
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let nbrs = m.neighbors();
    let total: f64 = (0..f.len())
        .map(|v| nbrs[v].iter().map(|&w| f[w] - f[v]).fold(0.0f64, f64::max))
        .sum();
    let max = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = max - min;
    Ok(GraflemmaReport {
        total,
        spread,
        pass: total >= spread - 1e-12,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallSetReport {
    /// `h(X, S)` over the whole vertex set.
    pub h: ExpansionReport,
    pub index: usize,
    /// `h(X,S)/k`.
    pub bound: Rational,
    /// Smallest `|AT∖A|/|A|` over `0 < |A| <= n/2k`, with its set.
    pub min_ratio: Option<Rational>,
    pub min_witness: Vec<usize>,
    pub sets_checked: u64,
    pub violations: u64,
    pub pass: bool,
}

/// Exhaustive check of `|AT∖A|/|A| >= h(X,S)/k` for all `A` with
/// `0 < |A| <= |X|/2k`, where `k` is the index of `sub`.
pub fn small_set_expansion_check(
    g: &SLabeledGraph,
    s_words: &[Word],
    sub: &SubgroupRep,
    t_words: &[Word],
) -> Result<SmallSetReport> {
    let n = g.vertex_count();
    guard(n, EXHAUSTIVE_LIMIT)?;
    if g.alphabet() != sub.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = sub.index();
    let h = set_expansion_exact(g, s_words, None)?;
    let bound = h.value / Rational::from_integer(k as i64);
    let domain: Vec<usize> = (0..n).collect();
    let images: Vec<MaskImage> = local_maps(g, t_words, &domain)?
        .iter()
        .map(|m| MaskImage::new(m))
        .collect();
    let mut best = Best::new();
    let (mut checked, mut violations) = (0u64, 0u64);
    for mask in 1u64..(1u64 << n) {
        let card = u64::from(mask.count_ones());
        if 2 * (k as u64) * card > n as u64 {
            continue;
        }
        checked += 1;
        let image = images.iter().fold(0u64, |acc, t| acc | t.image(mask));
        let out = u64::from((image & !mask).count_ones());
        if Rational::new(out as i64, card as i64) < bound {
            violations += 1;
        }
        best.offer(out, card, mask);
    }
    Ok(SmallSetReport {
        h,
        index: k,
        bound,
        min_ratio: best.ratio(),
        min_witness: mask_to_vec(best.mask),
        sets_checked: checked,
        violations,
        pass: violations == 0,
    })
}
