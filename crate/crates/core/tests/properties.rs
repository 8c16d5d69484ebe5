mod common;

use common::*;
use proptest::prelude::*;
use schreier_core::covers::{lift, new_eigenvalues, random_cover, CoverSpec};
use schreier_core::decompose::edge_label_decomposition;
use schreier_core::labeled::edit_distance;
use schreier_core::spectral::{
    bipartite_costs, bipartite_edit_distance, edge_cheeger_exact, set_expansion_exact, spectrum, trace_deviation,
};
use schreier_core::subgroups::{intersect_actions, restrict_to_subgroup, schreier_machinery};
use schreier_core::{Rational, Sign, Word};

fn random_word(r: &mut schreier_core::rng::Stream, k: usize, len: usize) -> Word {
    use rand::Rng;
    Word::from_syllables(
        (0..len)
            .map(|_| (r.gen_range(0..k), if r.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_action_is_a_homomorphism(seed: u64, n in 1usize..30, k in 1usize..4) {
        let mut r = rng(seed);
        let g = random_labeled(&mut r, n, k);
        let w1 = random_word(&mut r, k, 6);
        let w2 = random_word(&mut r, k, 6);
        for v in 0..n {
            prop_assert_eq!(g.apply_word(v, &w1.then(&w2)), g.apply_word(g.apply_word(v, &w1), &w2));
            prop_assert_eq!(g.apply_word(g.apply_word(v, &w1), &w1.inverse()), v);
            prop_assert_eq!(g.apply_word(v, &w1.reduced()), g.apply_word(v, &w1));
        }
    }

    #[test]
    fn undirected_view_is_2k_regular(seed: u64, n in 1usize..40, k in 1usize..5) {
        let g = random_labeled(&mut rng(seed), n, k);
        prop_assert_eq!(g.undirected_view().regular_degree(), Some(2 * k));
    }

    #[test]
    fn decomposition_round_trip(seed: u64, n in 1usize..41, half in 1usize..4, odd: bool) {
        let mut r = rng(seed);
        let d = if odd && n % 2 == 0 { 2 * half + 1 } else { 2 * half };
        let m = random_regular(&mut r, n, d);
        let g = edge_label_decomposition(&m, d).unwrap();
        let mut expected = edge_multiset(&m);
        if d % 2 == 1 {
            // odd degree: one letter per matching of the bipartite double, so
            // every edge appears once in each direction
            expected = expected.iter().flat_map(|&e| [e, e]).collect();
            expected.sort_unstable();
        }
        prop_assert_eq!(edge_multiset(&g.undirected_view()), expected);
    }

    #[test]
    fn edit_distance_is_a_metric(seed: u64, n in 1usize..12, k in 1usize..3) {
        let mut r = rng(seed);
        let (a, b, c) = (random_labeled(&mut r, n, k), random_labeled(&mut r, n, k), random_labeled(&mut r, n, k));
        let zero = Rational::from_integer(0);
        prop_assert_eq!(edit_distance(&a, &a).unwrap(), zero);
        prop_assert_eq!(edit_distance(&a, &b).unwrap(), edit_distance(&b, &a).unwrap());
        prop_assert!(edit_distance(&a, &c).unwrap() <= edit_distance(&a, &b).unwrap() + edit_distance(&b, &c).unwrap());
        if a != b {
            prop_assert!(edit_distance(&a, &b).unwrap() > zero);
        }
    }

    #[test]
    fn edit_distance_is_lift_invariant(seed: u64, n in 1usize..10, k in 1usize..3, d in 1usize..5) {
        let mut r = rng(seed);
        let (g, h) = (random_labeled(&mut r, n, k), random_labeled(&mut r, n, k));
        let spec = CoverSpec::random(&g, d, seed, 0).unwrap();
        let (cg, ch) = (lift(&g, &spec).unwrap(), lift(&h, &spec).unwrap());
        prop_assert_eq!(edit_distance(cg.total(), ch.total()).unwrap(), edit_distance(&g, &h).unwrap());
    }

    #[test]
    fn schreier_generators_fix_the_basepoint(seed: u64, index in 1usize..9, k in 1usize..4) {
        let mut r = rng(seed);
        let sub = random_subgroup(&mut r, index, k);
        let (trans, gens) = schreier_machinery(sub.action(), 0).unwrap();
        for (v, w) in trans.reps.iter().enumerate() {
            prop_assert_eq!(sub.action().apply_word(0, w), v);
        }
        prop_assert!(trans.reps[0].is_empty());
        prop_assert!(gens.raw_count <= 2 * k * index);
        for w in gens.symmetric() {
            prop_assert!(sub.contains(&w));
        }
    }

    #[test]
    fn restriction_orbit_is_closed(seed: u64, n in 2usize..16, index in 1usize..4) {
        let mut r = rng(seed);
        let g = random_labeled(&mut r, n, 2);
        let sub = random_subgroup(&mut r, index, 2);
        let (_, gens) = schreier_machinery(sub.action(), 0).unwrap();
        let res = restrict_to_subgroup(&g, &sub, &gens, 0).unwrap();
        prop_assert!(res.graph.is_transitive());
        for w in gens.symmetric() {
            for &v in &res.vertices {
                prop_assert!(res.vertices.binary_search(&g.apply_word(v, &w)).is_ok());
            }
        }
    }

    #[test]
    fn intersection_index_bounds(seed: u64, i in 1usize..6, j in 1usize..6) {
        let mut r = rng(seed);
        let (a, b) = (random_subgroup(&mut r, i, 2), random_subgroup(&mut r, j, 2));
        let c = intersect_actions(&a, &b).unwrap();
        prop_assert!(c.index() >= i.max(j));
        prop_assert!(c.index() <= i * j);
        prop_assert_eq!(c.index() % i, 0);
        prop_assert_eq!(c.index() % j, 0);
    }

    #[test]
    fn spectrum_traces_and_perron(seed: u64, n in 1usize..30, k in 1usize..4) {
        let g = random_labeled(&mut rng(seed), n, k);
        let view = g.undirected_view();
        let s = spectrum(&view).unwrap();
        let (d1, d2) = trace_deviation(&view, &s);
        prop_assert!(d1 < 1e-6 && d2 < 1e-6);
        prop_assert!((s.lambda0 - 2.0 * k as f64).abs() < 1e-9);
        prop_assert!(s.eigenvalues.iter().all(|l| l.abs() <= s.lambda0 + 1e-9));
    }

    #[test]
    fn bipartite_iff_lambda_min_is_minus_d(seed: u64, n in 2usize..12, d in 2usize..5) {
        prop_assume!(n * d % 2 == 0);
        let m = random_connected_regular(&mut rng(seed), n, d);
        let s = spectrum(&m).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let (e, _) = bipartite_costs(&m, &all).unwrap();
        prop_assert_eq!((s.lambda_min + d as f64).abs() < 1e-9, e == 0);
    }

    #[test]
    fn cheeger_sandwich_and_witness(seed: u64, n in 2usize..14, d in 2usize..5) {
        prop_assume!(n * d % 2 == 0);
        let m = random_connected_regular(&mut rng(seed), n, d);
        let ch = edge_cheeger_exact(&m, false).unwrap();
        prop_assert!(!ch.witness.is_empty() && 2 * ch.witness.len() <= n);
        prop_assert_eq!(Rational::new(m.boundary_size(&ch.witness) as i64, ch.witness.len() as i64), ch.value);
        let gap = d as f64 - spectrum(&m).unwrap().lambda1.unwrap();
        let v = *ch.value.numer() as f64 / *ch.value.denom() as f64;
        prop_assert!(gap / 2.0 <= v + 1e-9);
        prop_assert!(v <= (2.0 * d as f64 * gap).sqrt() + 1e-9);
    }

    #[test]
    fn set_expansion_witness_recount(seed: u64, n in 2usize..14, k in 1usize..3) {
        let g = random_labeled(&mut rng(seed), n, k);
        let words: Vec<Word> = (0..k).flat_map(|s| [Word::letter(s), Word::inverse_letter(s)]).collect();
        let h = set_expansion_exact(&g, &words, None).unwrap();
        let image: std::collections::BTreeSet<usize> =
            h.witness.iter().flat_map(|&v| words.iter().map(move |w| (v, w))).map(|(v, w)| g.apply_word(v, w)).collect();
        let out = image.iter().filter(|v| !h.witness.contains(v)).count();
        prop_assert_eq!(Rational::new(out as i64, h.witness.len() as i64), h.value);
    }

    #[test]
    fn old_eigenvalues_embed_and_girth_grows(seed: u64, n in 1usize..9, k in 1usize..3, d in 1usize..4) {
        let mut r = rng(seed);
        let g = random_transitive(&mut r, n, k);
        let c = random_cover(&g, d, seed).unwrap();
        let (old, new) = new_eigenvalues(&c).unwrap();
        prop_assert_eq!(old.len() + new.len(), n * d);
        prop_assert!(c.total().undirected_view().girth() >= g.undirected_view().girth());
        if n * d <= 18 {
            prop_assert!(bipartite_edit_distance(&c.total().undirected_view()).unwrap()
                <= bipartite_edit_distance(&g.undirected_view()).unwrap());
        }
    }
}
