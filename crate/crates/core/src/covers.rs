//! Random covers, covering verification and the two-edge gluing surgery.
//!
//! A `d`-cover of `g` lives on `g.n·d` vertices; vertex `(x, k)` is stored
//! as `x·d + k`, so the projection is integer division by `d`.

use alloc::vec;
use alloc::vec::Vec;

use crate::labeled::SLabeledGraph;
use crate::multigraph::{Girth, Multigraph};
use crate::rng;
use crate::spectral::spectrum;
use crate::{Error, Rational, Result};

/// Sheet permutations `f(s, x)`, indexed `[letter][base vertex]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    d: usize,
    table: Vec<Vec<Vec<usize>>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| i < p.len() && !core::mem::replace(&mut seen[i], true))
}

impl CoverSpec {
    pub fn new(g: &SLabeledGraph, d: usize, table: Vec<Vec<Vec<usize>>>) -> Result<CoverSpec> {
        if d == 0 {
            return Err(Error::InvalidParameter("sheet count must be positive"));
        }
        if table.len() != g.letter_count() || table.iter().any(|row| row.len() != g.vertex_count()) {
            return Err(Error::ShapeMismatch);
        }
        for row in &table {
            for p in row {
                if p.len() != d || !is_permutation(p) {
                    return Err(Error::InvalidParameter("sheet map is not a permutation of 0..d"));
                }
            }
        }
        Ok(CoverSpec { d, table })
    }

    pub fn trivial(g: &SLabeledGraph, d: usize) -> Result<CoverSpec> {
        let id: Vec<usize> = (0..d).collect();
        CoverSpec::new(g, d, vec![vec![id; g.vertex_count()]; g.letter_count()])
    }

    /// Uniform table; `f(s, x)` is drawn from the stream at `[level, s, x]`.
    pub fn random(g: &SLabeledGraph, d: usize, seed: u64, level: u64) -> Result<CoverSpec> {
        let table = (0..g.letter_count())
            .map(|s| {
                (0..g.vertex_count())
                    .map(|x| rng::permutation(&mut rng::stream(seed, &[level, s as u64, x as u64]), d))
                    .collect()
            })
            .collect();
        CoverSpec::new(g, d, table)
    }

    pub fn sheets(&self) -> usize {
        self.d
    }

    pub fn entry(&self, letter: usize, x: usize) -> &[usize] {
        &self.table[letter][x]
    }
}

/// A label-preserving vertex map `total → base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    total: SLabeledGraph,
    base: SLabeledGraph,
    proj: Vec<usize>,
}

impl CoveringMap {
    /// Accepts only genuine coverings (defect fraction zero).
    pub fn new(total: SLabeledGraph, base: SLabeledGraph, proj: Vec<usize>) -> Result<CoveringMap> {
        let eps = verify_covering(&total, &base, &proj)?;
        if eps != Rational::from_integer(0) {
            return Err(Error::InvalidParameter("projection is not label-equivariant"));
        }
        Ok(CoveringMap { total, base, proj })
    }

    pub fn total(&self) -> &SLabeledGraph {
        &self.total
    }

    pub fn base(&self) -> &SLabeledGraph {
        &self.base
    }

    pub fn proj(&self) -> &[usize] {
        &self.proj
    }

    /// `self` followed by `lower`, where `lower.total == self.base`.
    pub fn then(&self, lower: &CoveringMap) -> Result<CoveringMap> {
        if lower.total != self.base {
            return Err(Error::BaseMismatch);
        }
        let proj = self.proj.iter().map(|&v| lower.proj[v]).collect();
        Ok(CoveringMap {
            total: self.total.clone(),
            base: lower.base.clone(),
            proj,
        })
    }
}

/// `C_f(g)`: `(x, k)·s = (x·s, k·f(s, x))`.
pub fn lift(g: &SLabeledGraph, spec: &CoverSpec) -> Result<CoveringMap> {
    if spec.table.len() != g.letter_count() || spec.table.iter().any(|r| r.len() != g.vertex_count()) {
        return Err(Error::ShapeMismatch);
    }
    let d = spec.d;
    let n = g.vertex_count();
    let perms = (0..g.letter_count())
        .map(|s| {
            let base = g.perm(s);
            let mut p = vec![0; n * d];
            for x in 0..n {
                for (k, &j) in spec.table[s][x].iter().enumerate() {
                    p[x * d + k] = base[x] * d + j;
                }
            }
            p
        })
        .collect();
    let total = SLabeledGraph::new(n * d, g.alphabet().clone(), perms)?;
    let proj = (0..n * d).map(|v| v / d).collect();
    Ok(CoveringMap {
        total,
        base: g.clone(),
        proj,
    })
}

pub fn random_cover(g: &SLabeledGraph, d: usize, seed: u64) -> Result<CoveringMap> {
    lift(g, &CoverSpec::random(g, d, seed, 0)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub vertices: usize,
    pub girth: Girth,
    pub components: usize,
}

impl LevelStats {
    pub fn of(g: &SLabeledGraph) -> LevelStats {
        let view = g.undirected_view();
        LevelStats {
            vertices: g.vertex_count(),
            girth: view.girth(),
            components: g.orbits().len(),
        }
    }
}

/// `levels[0]` is the base; `maps[i]` covers `levels[i]` by `levels[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub levels: Vec<SLabeledGraph>,
    pub maps: Vec<CoveringMap>,
    pub stats: Vec<LevelStats>,
}

impl Tower {
    pub fn trivial(g: &SLabeledGraph) -> Tower {
        Tower {
            levels: vec![g.clone()],
            maps: Vec::new(),
            stats: vec![LevelStats::of(g)],
        }
    }

    pub fn top(&self) -> &SLabeledGraph {
        self.levels.last().expect("a tower has a base")
    }

    pub fn base(&self) -> &SLabeledGraph {
        &self.levels[0]
    }

    pub fn push(&mut self, map: CoveringMap) -> Result<()> {
        if map.base() != self.top() {
            return Err(Error::BaseMismatch);
        }
        self.stats.push(LevelStats::of(map.total()));
        self.levels.push(map.total().clone());
        self.maps.push(map);
        Ok(())
    }

    /// Composite projection from the top level to the base.
    pub fn projection(&self) -> Vec<usize> {
        let mut proj: Vec<usize> = (0..self.top().vertex_count()).collect();
        for map in self.maps.iter().rev() {
            for v in proj.iter_mut() {
                *v = map.proj()[*v];
            }
        }
        proj
    }
}

/// Level `i` is drawn with `f(s, x)` from the stream `[i, s, x]` of `seed`,
/// so a one-level tower equals `random_cover(g, d, seed)`.
pub fn iterated_random_cover(g: &SLabeledGraph, degrees: &[usize], seed: u64) -> Result<Tower> {
    if degrees.is_empty() {
        return Err(Error::InvalidParameter("degree schedule is empty"));
    }
    let mut tower = Tower::trivial(g);
    for (level, &d) in degrees.iter().enumerate() {
        let spec = CoverSpec::random(tower.top(), d, seed, level as u64)?;
        let map = lift(tower.top(), &spec)?;
        tower.push(map)?;
    }
    Ok(tower)
}

/// Fraction of total vertices where `proj(x·s) != proj(x)·s` for some letter.
///
/// Fails with `NotSurjective` when some base edge `(x, s)` has no lift.
pub fn verify_covering(total: &SLabeledGraph, base: &SLabeledGraph, proj: &[usize]) -> Result<Rational> {
    if total.alphabet() != base.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if proj.len() != total.vertex_count() {
        return Err(Error::ShapeMismatch);
    }
    let n = base.vertex_count();
    for &x in proj {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    let k = base.letter_count();
    let mut lifted = vec![false; n * k];
    let mut defects = 0i64;
    for v in 0..total.vertex_count() {
        let x = proj[v];
        let mut ok = true;
        for s in 0..k {
            let y = proj[total.perm(s)[v]];
            if y == base.perm(s)[x] {
                lifted[x * k + s] = true;
            } else {
                ok = false;
            }
        }
        if !ok {
            defects += 1;
        }
    }
    if let Some(slot) = lifted.iter().position(|&b| !b) {
        return Err(Error::NotSurjective {
            vertex: slot / k,
            letter: slot % k,
        });
    }
    Ok(Rational::new(defects, total.vertex_count().max(1) as i64))
}

pub const EIGEN_MATCH_TOLERANCE: f64 = 1e-6;

/// Splits the spectrum of the total graph into old (matched to the base
/// spectrum) and new eigenvalues, both descending.
pub fn new_eigenvalues(cover: &CoveringMap) -> Result<(Vec<f64>, Vec<f64>)> {
    if !cover.base.is_transitive() {
        return Err(Error::Disconnected);
    }
    let old = spectrum(&cover.base.undirected_view())?.eigenvalues;
    let total = spectrum(&cover.total.undirected_view())?.eigenvalues;
    let mut used = vec![false; total.len()];
    for &mu in &old {
        let mut best: Option<(usize, f64)> = None;
        for (i, &lambda) in total.iter().enumerate() {
            let gap = libm::fabs(lambda - mu);
            if !used[i] && gap <= EIGEN_MATCH_TOLERANCE && best.is_none_or(|(_, g)| gap < g) {
                best = Some((i, gap));
            }
        }
        match best {
            Some((i, _)) => used[i] = true,
            None => return Err(Error::MatchFailure(mu)),
        }
    }
    let new = total.iter().zip(&used).filter(|(_, &u)| !u).map(|(&l, _)| l).collect();
    Ok((old, new))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glued {
    pub cover: CoveringMap,
    /// Vertices `0..split` come from the first cover.
    pub split: usize,
    /// Undirected edges between the two parts; always 2.
    pub crossing: usize,
    /// `crossing / min(|P1|, |P2|)`, an upper bound for the edge Cheeger constant.
    pub ch_bound: Rational,
}

fn require_girth_above_two(m: &Multigraph) -> Result<()> {
    match m.girth() {
        Girth::Finite(g) if g <= 2 => Err(Error::GirthTooSmall(g)),
        _ => Ok(()),
    }
}

/// Joins two covers of the same base by replacing the `s`-edges out of `p1`
/// and `p2` with `(p1, p2·s)` and `(p2, p1·s)`.
pub fn glue(p1: &CoveringMap, p2: &CoveringMap, s: usize, v1: usize, v2: usize) -> Result<Glued> {
    if p1.base != p2.base {
        return Err(Error::BaseMismatch);
    }
    if s >= p1.base.letter_count() {
        return Err(Error::LetterOutOfRange(s));
    }
    p1.total.check_vertex(v1)?;
    p2.total.check_vertex(v2)?;
    if p1.proj[v1] != p2.proj[v2] {
        return Err(Error::FiberMismatch);
    }
    require_girth_above_two(&p1.total.undirected_view())?;
    require_girth_above_two(&p2.total.undirected_view())?;
    let n1 = p1.total.vertex_count();
    let n2 = p2.total.vertex_count();
    let union = p1.total.disjoint_union(&p2.total)?;
    let mut perms = union.perms().to_vec();
    perms[s][v1] = n1 + p2.total.perm(s)[v2];
    perms[s][n1 + v2] = p1.total.perm(s)[v1];
    let total = SLabeledGraph::new(n1 + n2, union.alphabet().clone(), perms)?;
    let proj = p1.proj.iter().chain(&p2.proj).copied().collect();
    let cover = CoveringMap::new(total, p1.base.clone(), proj)?;
    let part: Vec<usize> = (0..n1).collect();
    let crossing = cover.total.undirected_view().boundary_size(&part);
    Ok(Glued {
        cover,
        split: n1,
        crossing,
        ch_bound: Rational::new(crossing as i64, n1.min(n2) as i64),
    })
}

/// Largest vertex count a girth-boosting tower may reach.
pub const BOOST_VERTEX_CAP: usize = 1 << 16;

/// Samples towers of 2-covers of growing depth until the top has larger
/// girth than `g`.
///
/// A single random cover keeps each shortest cycle closed with positive
/// probability, so depth rather than trial count drives success. Depth is
/// capped so the top stays within [`BOOST_VERTEX_CAP`] vertices.
pub fn girth_boosting_cover(g: &SLabeledGraph, seed: u64, max_tries: usize) -> Result<Tower> {
    if max_tries == 0 {
        return Err(Error::InvalidParameter("max_tries must be at least 1"));
    }
    let Girth::Finite(start) = g.undirected_view().girth() else {
        return Err(Error::InvalidParameter("girth is already infinite"));
    };
    let n = g.vertex_count().max(1);
    let mut max_depth = 1;
    while n << (max_depth + 1) <= BOOST_VERTEX_CAP {
        max_depth += 1;
    }
    for attempt in 0..max_tries {
        let depth = (attempt + 1).min(max_depth);
        let schedule = vec![2; depth];
        let tower = iterated_random_cover(g, &schedule, rng::derive(seed, &[attempt as u64]))?;
        if tower.top().undirected_view().girth() > Girth::Finite(start) {
            return Ok(tower);
        }
    }
    Err(Error::RetriesExhausted(max_tries))
}
