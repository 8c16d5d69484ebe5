//! Subcommand arguments and their report builders.
//!
//! Every argument struct doubles as the body of an experiment config, so
//! field names, defaults and the `in` rename are shared by flags and JSON.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use schreier_core::constructions::{
    gluelemma_tower, lubtau_chain_report, nagytetel_audit, rossztau_build, sl2p_graph, TowerConfig,
};
use schreier_core::covers::{
    girth_boosting_cover, glue, iterated_random_cover, new_eigenvalues, random_cover, verify_covering, CoveringMap,
    LevelStats,
};
use schreier_core::decompose::edge_label_decomposition;
use schreier_core::groups::FiniteGroup;
use schreier_core::rng;
use schreier_core::spectral::{edge_cheeger_exact, eigenvalue_bound_checks, spectrum, EXHAUSTIVE_LIMIT};
use schreier_core::subgroups::{intersect_capped, schreier_machinery, SubgroupRep};
use schreier_core::{Alphabet, Girth, Rational, SLabeledGraph, Word};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::graph_file::{load_graph, GraphFile, MultigraphFile};
use crate::report::*;
use crate::CliError;

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Girth, components and degrees of the undirected view.
    Stats(GraphArgs),
    /// Adjacency spectrum of the undirected view.
    Spectrum(GraphArgs),
    /// Exact edge Cheeger constant with a witness set.
    Cheeger(GraphArgs),
    /// Bipartiteness ratios and the lambda_min / psi inequalities.
    Psi(GraphArgs),
    /// One random d-sheeted cover.
    Cover(CoverArgs),
    /// Iterated random covers.
    Tower(TowerArgs),
    /// Random cover repeated until the girth increases.
    GirthBoost(GirthBoostArgs),
    /// Two random covers joined by the two-edge surgery.
    Glue(GlueArgs),
    /// Labels a regular multigraph by permutations.
    Decompose(DecomposeArgs),
    /// Transversal and free generators of a basepoint stabilizer.
    Subgroup(GraphArgs),
    /// Intersection of two pointed actions.
    Intersect(IntersectArgs),
    /// Index-two construction over SL(2,p).
    Rossztau(RossztauArgs),
    /// Cheeger bounds along intersections of index-two constructions.
    Lubtau(LubtauArgs),
    /// Glued covering tower.
    Gluelemma(GluelemmaArgs),
    /// Subgroup expansion audit on a Cayley graph.
    Nagytetel(NagytetelArgs),
    /// New-eigenvalue window over many random covers.
    FriedmanSweep(FriedmanArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stats(_) => "stats",
            Command::Spectrum(_) => "spectrum",
            Command::Cheeger(_) => "cheeger",
            Command::Psi(_) => "psi",
            Command::Cover(_) => "cover",
            Command::Tower(_) => "tower",
            Command::GirthBoost(_) => "girth-boost",
            Command::Glue(_) => "glue",
            Command::Decompose(_) => "decompose",
            Command::Subgroup(_) => "subgroup",
            Command::Intersect(_) => "intersect",
            Command::Rossztau(_) => "rossztau",
            Command::Lubtau(_) => "lubtau",
            Command::Gluelemma(_) => "gluelemma",
            Command::Nagytetel(_) => "nagytetel",
            Command::FriedmanSweep(_) => "friedman-sweep",
        }
    }

    /// Parses a config body for the subcommand called `name`.
    pub fn from_config(name: &str, body: Value) -> Result<Command, CliError> {
        fn parse<T: for<'de> Deserialize<'de>>(body: Value) -> Result<T, CliError> {
            serde_json::from_value(body).map_err(|e| CliError::Usage(format!("config: {e}")))
        }
        Ok(match name {
            "stats" => Command::Stats(parse(body)?),
            "spectrum" => Command::Spectrum(parse(body)?),
            "cheeger" => Command::Cheeger(parse(body)?),
            "psi" => Command::Psi(parse(body)?),
            "cover" => Command::Cover(parse(body)?),
            "tower" => Command::Tower(parse(body)?),
            "girth-boost" => Command::GirthBoost(parse(body)?),
            "glue" => Command::Glue(parse(body)?),
            "decompose" => Command::Decompose(parse(body)?),
            "subgroup" => Command::Subgroup(parse(body)?),
            "intersect" => Command::Intersect(parse(body)?),
            "rossztau" => Command::Rossztau(parse(body)?),
            "lubtau" => Command::Lubtau(parse(body)?),
            "gluelemma" => Command::Gluelemma(parse(body)?),
            "nagytetel" => Command::Nagytetel(parse(body)?),
            "friedman-sweep" => Command::FriedmanSweep(parse(body)?),
            other => return Err(CliError::Usage(format!("config: unknown command {other:?}"))),
        })
    }

    pub fn run(&self) -> Result<Report, CliError> {
        match self {
            Command::Stats(a) => stats(a),
            Command::Spectrum(a) => spectrum_cmd(a),
            Command::Cheeger(a) => cheeger(a),
            Command::Psi(a) => psi(a),
            Command::Cover(a) => cover(a),
            Command::Tower(a) => tower(a),
            Command::GirthBoost(a) => girth_boost(a),
            Command::Glue(a) => glue_cmd(a),
            Command::Decompose(a) => decompose(a),
            Command::Subgroup(a) => subgroup(a),
            Command::Intersect(a) => intersect(a),
            Command::Rossztau(a) => rossztau(a),
            Command::Lubtau(a) => lubtau(a),
            Command::Gluelemma(a) => gluelemma(a),
            Command::Nagytetel(a) => nagytetel(a),
            Command::FriedmanSweep(a) => friedman(a),
        }
    }
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphArgs {
    /// Graph file, or `bouquetK`, `cycleN`, `tower4`.
    #[arg(long = "in", value_name = "GRAPH")]
    #[serde(rename = "in")]
    pub input: String,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    #[serde(rename = "in")]
    pub input: String,
    /// Number of sheets.
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    #[serde(rename = "in")]
    pub input: String,
    /// Sheet counts, bottom level first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GirthBoostArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    #[serde(rename = "in")]
    pub input: String,
    #[arg(long, default_value_t = default_tries())]
    #[serde(default = "default_tries")]
    pub tries: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    #[serde(rename = "in")]
    pub input: String,
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub d2: usize,
    /// Letter index whose edges are swapped.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub letter: usize,
    /// Glue point in the first cover; the second is the first vertex of
    /// the same fiber.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub v1: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeArgs {
    /// Multigraph file `{"edges": [[u, v], ...], "n": n}`.
    #[arg(long = "in", value_name = "MULTIGRAPH")]
    #[serde(rename = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectArgs {
    #[arg(long, value_name = "GRAPH")]
    pub a: String,
    #[arg(long, value_name = "GRAPH")]
    pub b: String,
    /// Largest intersection index to build.
    #[arg(long, default_value_t = default_cap())]
    #[serde(default = "default_cap")]
    pub cap: usize,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RossztauArgs {
    #[arg(long, default_value_t = 5)]
    #[serde(default = "default_prime")]
    pub p: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LubtauArgs {
    #[arg(long, value_delimiter = ',', default_values_t = default_primes())]
    #[serde(default = "default_primes")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = default_cap())]
    #[serde(default = "default_cap")]
    pub cap: usize,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluelemmaArgs {
    #[arg(long = "in", value_name = "GRAPH", default_value = "tower4")]
    #[serde(rename = "in", default = "default_tower_start")]
    pub input: String,
    /// Defaults to `(d - max(lambda1, b)) / 2`.
    #[arg(long)]
    #[serde(default)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 3)]
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[arg(long, default_value_t = 2000)]
    #[serde(default = "default_max_vertices")]
    pub max_vertices: usize,
    #[arg(long, default_value_t = default_tries())]
    #[serde(default = "default_tries")]
    pub retries: usize,
    /// Double the sheets at every lift instead of sizing for the targets.
    #[arg(long)]
    #[serde(default)]
    pub relaxed: bool,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NagytetelArgs {
    /// `zN`, `dN`, `s3` or `a4`.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub index: usize,
    /// Chooses the subgroup when the group has more than one generator.
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FriedmanArgs {
    #[arg(long, value_name = "GRAPH", default_value = "bouquet2")]
    #[serde(default = "default_base")]
    pub base: String,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 200)]
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[arg(long, default_value_t = 3.9)]
    #[serde(default = "default_window")]
    pub window: f64,
    #[arg(long, default_value_t = 0.9)]
    #[serde(default = "default_min_fraction")]
    pub min_fraction: f64,
    #[arg(long)]
    pub seed: u64,
}

fn default_tries() -> usize {
    50
}
fn default_cap() -> usize {
    200_000
}
fn default_prime() -> u64 {
    5
}
fn default_primes() -> Vec<u64> {
    vec![5, 7]
}
fn default_tower_start() -> String {
    "tower4".into()
}
fn default_levels() -> usize {
    3
}
fn default_max_vertices() -> usize {
    2000
}
fn default_base() -> String {
    "bouquet2".into()
}
fn default_trials() -> usize {
    200
}
fn default_window() -> f64 {
    3.9
}
fn default_min_fraction() -> f64 {
    0.9
}

fn girth(g: Girth) -> String {
    g.to_string()
}

fn girth_json(g: Girth) -> Value {
    match g {
        Girth::Finite(x) => json!(x),
        Girth::Infinite => json!("inf"),
    }
}

fn level_json(s: &LevelStats) -> Value {
    json!({ "vertices": s.vertices, "girth": girth_json(s.girth), "components": s.components })
}

fn stats(a: &GraphArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let view = g.undirected_view();
    let s = view.stats();
    let regular = s.regular.map(|d| d.to_string()).unwrap_or_default();
    Ok(Report {
        name: "stats",
        header: &[
            "n",
            "letters",
            "edges",
            "girth",
            "components",
            "regular_degree",
            "transitive",
        ],
        rows: vec![vec![
            g.vertex_count().to_string(),
            g.letter_count().to_string(),
            view.edge_count().to_string(),
            girth(s.girth),
            s.components.len().to_string(),
            regular,
            g.is_transitive().to_string(),
        ]],
        json: json!({
            "n": g.vertex_count(),
            "letters": g.letter_count(),
            "edges": view.edge_count(),
            "girth": girth_json(s.girth),
            "components": s.components,
            "degrees": s.degrees,
            "regular_degree": s.regular,
            "transitive": g.is_transitive(),
        }),
        pass: true,
        extra: Vec::new(),
    })
}

fn spectrum_cmd(a: &GraphArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let s = spectrum(&g.undirected_view())?;
    Ok(Report {
        name: "spectrum",
        header: &["n", "lambda0", "lambda1", "lambda_min", "gap"],
        rows: vec![vec![
            g.vertex_count().to_string(),
            float(s.lambda0),
            opt_float(s.lambda1),
            float(s.lambda_min),
            opt_float(s.gap),
        ]],
        json: json!({
            "n": g.vertex_count(),
            "eigenvalues": floats_json(&s.eigenvalues),
            "lambda0": float_json(s.lambda0),
            "lambda1": s.lambda1.map(float_json),
            "lambda_min": float_json(s.lambda_min),
            "gap": s.gap.map(float_json),
        }),
        pass: true,
        extra: Vec::new(),
    })
}

fn cheeger(a: &GraphArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let view = g.undirected_view();
    let rep = edge_cheeger_exact(&view, false)?;
    let boundary = view.boundary_size(&rep.witness);
    Ok(Report {
        name: "cheeger",
        header: &["n", "value", "boundary", "witness_size"],
        rows: vec![vec![
            g.vertex_count().to_string(),
            rational(rep.value),
            boundary.to_string(),
            rep.witness.len().to_string(),
        ]],
        json: json!({
            "n": g.vertex_count(),
            "value": rational_json(rep.value),
            "boundary": boundary,
            "witness": rep.witness,
        }),
        pass: true,
        extra: Vec::new(),
    })
}

fn psi(a: &GraphArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let d = 2 * g.letter_count();
    let c = eigenvalue_bound_checks(&g.undirected_view(), d)?;
    let b = &c.bipartiteness;
    Ok(Report {
        name: "psi",
        header: &[
            "n",
            "degree",
            "lambda_min",
            "psi",
            "c",
            "r",
            "desai_rao_bound",
            "desai_rao_pass",
            "psi_lower",
            "psi_lemma_pass",
        ],
        rows: vec![vec![
            g.vertex_count().to_string(),
            d.to_string(),
            float(c.lambda_min),
            rational(b.psi),
            rational(b.c),
            rational(b.r),
            float(c.desai_rao_bound),
            c.desai_rao_pass.to_string(),
            rational(c.psi_lower),
            c.psi_lemma_pass.to_string(),
        ]],
        json: json!({
            "n": g.vertex_count(),
            "degree": d,
            "lambda_min": float_json(c.lambda_min),
            "psi": rational_json(b.psi),
            "psi_witness": b.psi_witness,
            "e_s": b.e_s,
            "k_s": b.k_s,
            "c": rational_json(b.c),
            "c_witness": b.c_witness,
            "r": rational_json(b.r),
            "e_v": b.e_v,
            "max_cut_side": b.max_cut_side,
            "desai_rao_bound": float_json(c.desai_rao_bound),
            "desai_rao_pass": c.desai_rao_pass,
            "psi_lower": rational_json(c.psi_lower),
            "psi_lemma_pass": c.psi_lemma_pass,
        }),
        pass: c.desai_rao_pass && c.psi_lemma_pass,
        extra: Vec::new(),
    })
}

fn epsilon(c: &CoveringMap) -> Result<Rational, CliError> {
    Ok(verify_covering(c.total(), c.base(), c.proj())?)
}

const LEVEL_HEADER: &[&str] = &["level", "vertices", "girth", "components", "epsilon"];

fn level_row(level: usize, s: &LevelStats, eps: Option<Rational>) -> Vec<String> {
    vec![
        level.to_string(),
        s.vertices.to_string(),
        girth(s.girth),
        s.components.to_string(),
        eps.map(rational).unwrap_or_default(),
    ]
}

fn cover(a: &CoverArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let c = random_cover(&g, a.d, a.seed)?;
    let eps = epsilon(&c)?;
    let (base, total) = (LevelStats::of(&g), LevelStats::of(c.total()));
    let graph = GraphFile::from_graph(c.total(), None);
    Ok(Report {
        name: "cover",
        header: LEVEL_HEADER,
        rows: vec![level_row(0, &base, None), level_row(1, &total, Some(eps))],
        json: json!({
            "seed": a.seed,
            "sheets": a.d,
            "levels": [level_json(&base), level_json(&total)],
            "epsilon": rational_json(eps),
            "proj": c.proj(),
            "total": graph,
        }),
        pass: eps == Rational::from_integer(0),
        extra: vec![("cover-total.json".into(), graph.canonical())],
    })
}

fn tower(a: &TowerArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let t = iterated_random_cover(&g, &a.degrees, a.seed)?;
    let mut rows = vec![level_row(0, &t.stats[0], None)];
    let mut levels = vec![level_json(&t.stats[0])];
    let mut pass = true;
    for (i, m) in t.maps.iter().enumerate() {
        let eps = epsilon(m)?;
        pass &= eps == Rational::from_integer(0);
        rows.push(level_row(i + 1, &t.stats[i + 1], Some(eps)));
        levels.push(level_json(&t.stats[i + 1]));
    }
    let composite = verify_covering(t.top(), t.base(), &t.projection())?;
    pass &= composite == Rational::from_integer(0);
    let graph = GraphFile::from_graph(t.top(), None);
    Ok(Report {
        name: "tower",
        header: LEVEL_HEADER,
        rows,
        json: json!({
            "seed": a.seed,
            "degrees": a.degrees,
            "levels": levels,
            "composite_epsilon": rational_json(composite),
            "projection": t.projection(),
            "top": graph,
        }),
        pass,
        extra: vec![("tower-top.json".into(), graph.canonical())],
    })
}

fn girth_boost(a: &GirthBoostArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let t = girth_boosting_cover(&g, a.seed, a.tries)?;
    let composite = verify_covering(t.top(), t.base(), &t.projection())?;
    let rows = t
        .stats
        .iter()
        .enumerate()
        .map(|(i, s)| {
            level_row(
                i,
                s,
                (i > 0).then(|| epsilon(&t.maps[i - 1])).transpose().ok().flatten(),
            )
        })
        .collect();
    let before = t.stats[0].girth;
    let after = t.stats.last().expect("base level").girth;
    let graph = GraphFile::from_graph(t.top(), None);
    Ok(Report {
        name: "girth-boost",
        header: LEVEL_HEADER,
        rows,
        json: json!({
            "seed": a.seed,
            "levels": t.stats.iter().map(level_json).collect::<Vec<_>>(),
            "composite_epsilon": rational_json(composite),
            "projection": t.projection(),
            "top": graph,
        }),
        pass: after > before && composite == Rational::from_integer(0),
        extra: vec![("girth-boost-top.json".into(), graph.canonical())],
    })
}

fn glue_cmd(a: &GlueArgs) -> Result<Report, CliError> {
    let (g, _) = load_graph(&a.input)?;
    let p1 = random_cover(&g, a.d1, rng::derive(a.seed, &[1]))?;
    let p2 = random_cover(&g, a.d2, rng::derive(a.seed, &[2]))?;
    p1.total().check_vertex(a.v1)?;
    let x = p1.proj()[a.v1];
    let v2 = p2.proj().iter().position(|&y| y == x).expect("covers are surjective");
    let glued = glue(&p1, &p2, a.letter, a.v1, v2)?;
    let eps = epsilon(&glued.cover)?;
    let view = glued.cover.total().undirected_view();
    let girths = [p1.total(), p2.total()].map(|t| t.undirected_view().girth());
    let glued_girth = view.girth();
    let exact = if view.vertex_count() <= EXHAUSTIVE_LIMIT && view.is_connected() {
        Some(edge_cheeger_exact(&view, false)?)
    } else {
        None
    };
    let pass = eps == Rational::from_integer(0)
        && glued.crossing == 2
        && glued_girth >= girths[0].min(girths[1])
        && exact.as_ref().is_none_or(|e| e.value <= glued.ch_bound);
    let graph = GraphFile::from_graph(glued.cover.total(), None);
    Ok(Report {
        name: "glue",
        header: &[
            "n1", "n2", "girth1", "girth2", "girth", "crossing", "ch_bound", "ch_exact", "epsilon",
        ],
        rows: vec![vec![
            glued.split.to_string(),
            (view.vertex_count() - glued.split).to_string(),
            girth(girths[0]),
            girth(girths[1]),
            girth(glued_girth),
            glued.crossing.to_string(),
            rational(glued.ch_bound),
            exact.as_ref().map(|e| rational(e.value)).unwrap_or_default(),
            rational(eps),
        ]],
        json: json!({
            "seed": a.seed,
            "letter": a.letter,
            "v1": a.v1,
            "v2": glued.split + v2,
            "n1": glued.split,
            "n2": view.vertex_count() - glued.split,
            "girth1": girth_json(girths[0]),
            "girth2": girth_json(girths[1]),
            "girth": girth_json(glued_girth),
            "crossing": glued.crossing,
            "ch_bound": rational_json(glued.ch_bound),
            "ch_bound_witness": (0..glued.split).collect::<Vec<_>>(),
            "ch_exact": exact.as_ref().map(|e| rational_json(e.value)),
            "ch_exact_witness": exact.as_ref().map(|e| e.witness.clone()),
            "epsilon": rational_json(eps),
            "proj": glued.cover.proj(),
            "total": graph,
        }),
        pass,
        extra: vec![("glue-total.json".into(), graph.canonical())],
    })
}

fn decompose(a: &DecomposeArgs) -> Result<Report, CliError> {
    let m = MultigraphFile::read(&a.input)?.to_multigraph()?;
    let d = m
        .regular_degree()
        .ok_or_else(|| CliError::Usage(format!("{}: multigraph is not regular", a.input.display())))?;
    let g = edge_label_decomposition(&m, d)?;
    let mut expected = m.edge_multiset();
    if d % 2 == 1 {
        // odd degree: every edge is used by two letters
        expected = expected.iter().flat_map(|&e| [e, e]).collect();
        expected.sort_unstable();
    }
    let round_trip = g.undirected_view().edge_multiset() == expected;
    let graph = GraphFile::from_graph(&g, None);
    Ok(Report {
        name: "decompose",
        header: &["n", "degree", "letters", "round_trip"],
        rows: vec![vec![
            m.vertex_count().to_string(),
            d.to_string(),
            g.letter_count().to_string(),
            round_trip.to_string(),
        ]],
        json: json!({
            "n": m.vertex_count(),
            "degree": d,
            "letters": g.letter_count(),
            "round_trip": round_trip,
            "input": MultigraphFile::from_multigraph(&m),
            "graph": graph,
        }),
        pass: round_trip,
        extra: vec![("decompose-graph.json".into(), graph.canonical())],
    })
}

fn subgroup(a: &GraphArgs) -> Result<Report, CliError> {
    let (g, basepoint) = load_graph(&a.input)?;
    let sub = SubgroupRep::new(g, basepoint.unwrap_or(0))?;
    let (transversal, gens) = schreier_machinery(sub.action(), sub.basepoint())?;
    let (index, k) = (sub.index(), sub.alphabet().len());
    let rank = index * k.saturating_sub(1) + 1;
    let fixes = gens.words().iter().all(|w| sub.contains(w));
    let rank_ok = k == 0 || gens.len() == rank;
    let alphabet = sub.alphabet();
    Ok(Report {
        name: "subgroup",
        header: &[
            "index",
            "letters",
            "generators",
            "expected_rank",
            "raw_count",
            "fix_basepoint",
        ],
        rows: vec![vec![
            index.to_string(),
            k.to_string(),
            gens.len().to_string(),
            rank.to_string(),
            gens.raw_count.to_string(),
            fixes.to_string(),
        ]],
        json: json!({
            "index": index,
            "basepoint": sub.basepoint(),
            "transversal": words_json(&transversal.reps, alphabet),
            "generators": words_json(gens.words(), alphabet),
            "expected_rank": rank,
            "raw_count": gens.raw_count,
            "fix_basepoint": fixes,
        }),
        pass: fixes && rank_ok,
        extra: Vec::new(),
    })
}

fn pointed(spec: &str) -> Result<SubgroupRep, CliError> {
    let (g, basepoint) = load_graph(spec)?;
    Ok(SubgroupRep::new(g, basepoint.unwrap_or(0))?)
}

fn intersect(a: &IntersectArgs) -> Result<Report, CliError> {
    let (ra, rb) = (pointed(&a.a)?, pointed(&a.b)?);
    let i = intersect_capped(&ra, &rb, a.cap)?;
    let (ia, ib, index) = (ra.index(), rb.index(), i.rep.index());
    let pass = index % ia == 0 && index % ib == 0 && index <= ia * ib;
    let graph = GraphFile::from_graph(i.rep.action(), Some(i.rep.basepoint()));
    Ok(Report {
        name: "intersect",
        header: &["index_a", "index_b", "index"],
        rows: vec![vec![ia.to_string(), ib.to_string(), index.to_string()]],
        json: json!({
            "index_a": ia,
            "index_b": ib,
            "index": index,
            "left": i.left,
            "right": i.right,
            "action": graph,
        }),
        pass,
        extra: vec![("intersect-action.json".into(), graph.canonical())],
    })
}

fn rossztau(a: &RossztauArgs) -> Result<Report, CliError> {
    let r = rossztau_build(&sl2p_graph(a.p)?)?;
    let alphabet = r.t_graph.alphabet();
    Ok(Report {
        name: "rossztau",
        header: &[
            "p",
            "vertices",
            "sheet",
            "generators",
            "crossing",
            "ch_bound",
            "relations_hold",
        ],
        rows: vec![vec![
            a.p.to_string(),
            r.graph.vertex_count().to_string(),
            r.sheet_size().to_string(),
            r.t.len().to_string(),
            r.crossing.to_string(),
            rational(r.ch_bound),
            r.relations_hold.to_string(),
        ]],
        json: json!({
            "p": a.p,
            "vertices": r.graph.vertex_count(),
            "sheet": r.sheet_size(),
            "generators": words_json(r.t.words(), r.graph.alphabet()),
            "t_graph_letters": alphabet.names(),
            "crossing": r.crossing,
            "ch_bound": rational_json(r.ch_bound),
            "witness": r.witness,
            "relations_hold": r.relations_hold,
        }),
        pass: r.relations_hold,
        extra: Vec::new(),
    })
}

fn lubtau(a: &LubtauArgs) -> Result<Report, CliError> {
    let members = a
        .primes
        .iter()
        .map(|&p| rossztau_build(&sl2p_graph(p)?))
        .collect::<Result<Vec<_>, _>>()?;
    let report = lubtau_chain_report(&members, a.cap)?;
    let rows = report
        .levels
        .iter()
        .map(|l| {
            vec![
                l.level.to_string(),
                l.index.to_string(),
                l.orbit_size.to_string(),
                rational(l.bound),
                a.primes[l.best_member].to_string(),
            ]
        })
        .collect();
    let levels: Vec<Value> = report
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "index": l.index,
                "orbit_size": l.orbit_size,
                "crossings": l.crossings,
                "witness_sizes": l.witness_sizes,
                "bound": rational_json(l.bound),
                "best_prime": a.primes[l.best_member],
            })
        })
        .collect();
    Ok(Report {
        name: "lubtau",
        header: &["level", "index", "orbit_size", "bound", "best_prime"],
        rows,
        json: json!({
            "primes": a.primes,
            "cap": a.cap,
            "levels": levels,
            "truncated_at": report.truncated,
            "monotone": report.monotone,
        }),
        pass: report.monotone,
        extra: Vec::new(),
    })
}

fn gluelemma(a: &GluelemmaArgs) -> Result<Report, CliError> {
    let (g1, _) = load_graph(&a.input)?;
    let d = 2 * g1.letter_count();
    let b = TowerConfig::ceiling(d);
    let delta = match a.delta {
        Some(x) => x,
        None => {
            let lambda1 = spectrum(&g1.undirected_view())?
                .lambda1
                .ok_or_else(|| CliError::Usage("start graph needs at least two vertices".into()))?;
            (d as f64 - lambda1.max(b)) / 2.0
        }
    };
    let mut config = TowerConfig::new(d, delta, a.levels, a.max_vertices, a.retries, a.seed)?;
    config.strict = !a.relaxed;
    let out = gluelemma_tower(&g1, &config)?;
    let rows = out
        .levels
        .iter()
        .map(|l| {
            vec![
                l.level.to_string(),
                l.sheets.0.to_string(),
                l.sheets.1.to_string(),
                l.attempts.to_string(),
                l.vertices.to_string(),
                l.g_connected.to_string(),
                girth(l.g_girth.0),
                girth(l.g_girth.1),
                girth(l.k_girth.1),
                rational(l.edit_distance),
                rational(l.ch_bound),
                l.previous_ch_bound.map(rational).unwrap_or_default(),
                rational(l.largest_k_fraction),
                float(l.k_lambda1_max),
                l.pass().to_string(),
            ]
        })
        .collect();
    let levels: Vec<Value> = out
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "sheets": [l.sheets.0, l.sheets.1],
                "attempts": l.attempts,
                "vertices": l.vertices,
                "g_connected": l.g_connected,
                "g_girth": [girth_json(l.g_girth.0), girth_json(l.g_girth.1)],
                "k_girth": [girth_json(l.k_girth.0), girth_json(l.k_girth.1)],
                "edit_distance": rational_json(l.edit_distance),
                "ch_bound": rational_json(l.ch_bound),
                "previous_ch_bound": l.previous_ch_bound.map(rational_json),
                "largest_k_fraction": rational_json(l.largest_k_fraction),
                "k_lambda1_max": float_json(l.k_lambda1_max),
                "bullets": l.bullets,
                "pass": l.pass(),
            })
        })
        .collect();
    let top = GraphFile::from_graph(out.g.top(), None);
    Ok(Report {
        name: "gluelemma",
        header: &[
            "level",
            "sheets_g",
            "sheets_k",
            "attempts",
            "vertices",
            "connected",
            "girth_before",
            "girth_after",
            "k_girth",
            "edit_distance",
            "ch_bound",
            "previous_ch_bound",
            "largest_k_fraction",
            "k_lambda1_max",
            "pass",
        ],
        rows,
        json: json!({
            "seed": a.seed,
            "degree": d,
            "delta": float_json(delta),
            "b": float_json(b),
            "edit_limit": float_json(config.edit_limit()),
            "fraction_floor": float_json(config.fraction_floor()),
            "strict": config.strict,
            "initial_ch": out.initial_ch.map(rational_json),
            "levels": levels,
            "pass": out.pass,
        }),
        pass: out.pass,
        extra: vec![("gluelemma-top.json".into(), top.canonical())],
    })
}

fn named_group(name: &str) -> Result<FiniteGroup, CliError> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    match name {
        "s3" => return Ok(FiniteGroup::symmetric3()),
        "a4" => return Ok(FiniteGroup::alternating4()),
        _ => {}
    }
    if let Some(n) = numbered("z").filter(|&n| n >= 1) {
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = numbered("d").filter(|&n| n >= 3) {
        return Ok(FiniteGroup::dihedral(n));
    }
    Err(CliError::Usage(format!(
        "unknown group {name:?}; expected zN, dN (N >= 3), s3 or a4"
    )))
}

/// A pointed transitive action of degree `index` on `letters` letters. With
/// one letter this is the unique subgroup of that index.
fn subgroup_of_index(letters: usize, index: usize, seed: u64) -> Result<SubgroupRep, CliError> {
    if index == 0 {
        return Err(CliError::Usage("index must be positive".into()));
    }
    if letters == 1 {
        return Ok(SubgroupRep::abelian_kernel(Alphabet::standard(1), index, &[1])?);
    }
    let mut r = rng::stream(seed, &[0]);
    loop {
        let perms = (0..letters).map(|_| rng::permutation(&mut r, index)).collect();
        let g = SLabeledGraph::new(index, Alphabet::standard(letters), perms)?;
        if g.is_transitive() {
            return Ok(SubgroupRep::new(g, rng::below(&mut r, index))?);
        }
    }
}

fn nagytetel(a: &NagytetelArgs) -> Result<Report, CliError> {
    let group = named_group(&a.group)?;
    let g = group.cayley_graph(group.generators())?;
    let letters = g.letter_count();
    let s: Vec<Word> = (0..letters)
        .flat_map(|l| [Word::letter(l), Word::inverse_letter(l)])
        .collect();
    let sub = subgroup_of_index(letters, a.index, a.seed)?;
    let rep = nagytetel_audit(&g, &s, &sub)?;
    let ratio = rep.h_ot.map(|h| *h.numer() as f64 / *h.denom() as f64);
    Ok(Report {
        name: "nagytetel",
        header: &["group", "order", "index", "h_gs", "orbit_size", "h_ot", "bound", "pass"],
        rows: vec![vec![
            group.name().to_string(),
            group.order().to_string(),
            rep.index.to_string(),
            rational(rep.h_gs),
            rep.orbit.len().to_string(),
            rep.h_ot.map(rational).unwrap_or_default(),
            float(rep.bound),
            rep.pass.to_string(),
        ]],
        json: json!({
            "group": group.name(),
            "order": group.order(),
            "seed": a.seed,
            "index": rep.index,
            "subgroup_action": GraphFile::from_graph(sub.action(), Some(sub.basepoint())),
            "h_gs": rational_json(rep.h_gs),
            "h_gs_witness": rep.h_gs_witness,
            "orbit": rep.orbit,
            "t": words_json(&rep.t, g.alphabet()),
            "h_ot": rep.h_ot.map(rational_json),
            "h_ot_float": ratio.map(float_json),
            "h_ot_witness": rep.h_ot_witness,
            "bound": float_json(rep.bound),
            "pass": rep.pass,
        }),
        pass: rep.pass,
        extra: Vec::new(),
    })
}

fn friedman(a: &FriedmanArgs) -> Result<Report, CliError> {
    let (base, _) = load_graph(&a.base)?;
    if a.trials == 0 {
        return Err(CliError::Usage("trials must be positive".into()));
    }
    let d_view = 2 * base.letter_count();
    let ramanujan = (2.0 * d_view as f64 * ((d_view as f64) - 1.0).sqrt()).sqrt();
    let mut rows = Vec::with_capacity(a.trials);
    let mut trials = Vec::with_capacity(a.trials);
    let mut inside = 0usize;
    for trial in 0..a.trials {
        let seed = rng::derive(a.seed, &[trial as u64]);
        let cover = random_cover(&base, a.d, seed)?;
        let (_, new) = new_eigenvalues(&cover)?;
        let max_abs = new.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let ok = max_abs <= a.window;
        inside += usize::from(ok);
        rows.push(vec![
            trial.to_string(),
            seed.to_string(),
            float(max_abs),
            ok.to_string(),
        ]);
        trials.push(json!({
            "trial": trial,
            "seed": seed,
            "max_abs_new": float_json(max_abs),
            "inside": ok,
            "new_eigenvalues": floats_json(&new),
        }));
    }
    let fraction = inside as f64 / a.trials as f64;
    Ok(Report {
        name: "friedman-sweep",
        header: &["trial", "seed", "max_abs_new", "inside"],
        rows,
        json: json!({
            "base": a.base,
            "sheets": a.d,
            "seed": a.seed,
            "window": float_json(a.window),
            "ramanujan_radius": float_json(ramanujan),
            "inside": inside,
            "trials": a.trials,
            "fraction": float_json(fraction),
            "min_fraction": float_json(a.min_fraction),
            "per_trial": trials,
        }),
        pass: fraction >= a.min_fraction,
        extra: Vec::new(),
    })
}
