mod common;

use common::{factorial, graph, graph_with_order, naive_alignments, permutation};
use proptest::prelude::*;
use subalign::analysis::{classify_margins, margin_gap, margins, Criterion, Region};
use subalign::graph::edgelist::{format_edge_list, parse_edge_list};
use subalign::graph::{
    aut_count, aut_count_brute_force, aut_count_refined, count_relabelings,
    count_relabelings_brute_force, is_asymmetric,
};
use subalign::model::bundle::{format_bundle, parse_bundle};
use subalign::model::{complement_pair, sample_pair, verify_pair};
use subalign::solver::{
    count_induced_copies, enumerate_alignments, map_posterior_oracle, select_alignment,
    DEFAULT_ORACLE_CAP,
};
use subalign::{Graph, ModelParams, VertexBijection};

fn params() -> impl Strategy<Value = ModelParams> {
    (2usize..=7)
        .prop_flat_map(|n| (Just(n), 1..n, 0.0f64..=1.0))
        .prop_map(|(n, m, p)| ModelParams::new(n, m, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in graph(12)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(g.edge_count() + c.edge_count(), g.pair_count());
        for (u, v) in c.edges() {
            prop_assert!(!g.has_edge(u, v));
        }
    }

    #[test]
    fn relabel_preserves_isomorphism_class((g, perm) in (1usize..=9).prop_flat_map(|n| (graph_with_order(n), permutation(n)))) {
        let b = VertexBijection::from_permutation(perm.clone()).unwrap();
        let h = g.relabel(&b).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert!(g.is_isomorphic(&h));
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(perm[u], perm[v]));
        }
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        prop_assert_eq!(h.relabel(&VertexBijection::from_permutation(inverse).unwrap()).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_commutes_with_complement(g in graph(10), picks in prop::collection::vec(any::<bool>(), 10)) {
        let set: Vec<usize> = (0..g.order()).filter(|&v| picks[v]).collect();
        prop_assume!(!set.is_empty());
        prop_assert_eq!(
            g.complement().induced_subgraph(&set).unwrap(),
            g.induced_subgraph(&set).unwrap().complement()
        );
    }

    #[test]
    fn edge_list_round_trip(g in graph(10)) {
        prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn sampled_pairs_verify_and_round_trip(params in params(), seed in any::<u64>()) {
        let pair = sample_pair(&params, seed).unwrap();
        prop_assert!(verify_pair(&pair));
        prop_assert_eq!(pair.chosen_set().len(), params.m());
        prop_assert_eq!(&sample_pair(&params, seed).unwrap(), &pair);
        prop_assert_eq!(&parse_bundle(&format_bundle(&pair)).unwrap(), &pair);
        let comp = complement_pair(&pair);
        prop_assert!(verify_pair(&comp));
        prop_assert_eq!(comp.chosen_set(), pair.chosen_set());
        prop_assert_eq!(comp.bijection(), pair.bijection());
        prop_assert_eq!(comp.anonymized(), &pair.anonymized().complement());
    }

    #[test]
    fn aut_strategies_agree(g in graph(8)) {
        let brute = aut_count_brute_force(&g);
        prop_assert_eq!(aut_count_refined(&g), brute);
        prop_assert_eq!(aut_count(&g).unwrap(), brute);
        prop_assert_eq!(aut_count(&g.complement()).unwrap(), brute);
        prop_assert_eq!(factorial(g.order()) % brute, 0);
        prop_assert_eq!(is_asymmetric(&g).unwrap(), brute == 1);
    }

    #[test]
    fn relabelings_times_aut_is_factorial(g in graph(7)) {
        let r = count_relabelings(&g).unwrap();
        prop_assert_eq!(r * aut_count(&g).unwrap(), factorial(g.order()));
        prop_assert_eq!(count_relabelings_brute_force(&g), r);
    }

    #[test]
    fn solver_matches_naive_enumeration(g in graph(7), h in graph(4)) {
        prop_assume!(h.order() <= g.order());
        let result = enumerate_alignments(&g, &h, None).unwrap();
        let naive = naive_alignments(&g, &h);
        prop_assert_eq!(result.candidates(), naive.as_slice());
        prop_assert!(!result.truncated());
        prop_assert_eq!(count_induced_copies(&g, &h).unwrap().value as usize, result.distinct_sets().len());
        for c in result.candidates() {
            prop_assert_eq!(&g.induced_subgraph(c.set()).unwrap().relabel(c.bijection()).unwrap(), &h);
        }
        // copies of an asymmetric pattern carry exactly |Aut| labelings each
        if !naive.is_empty() {
            prop_assert_eq!(naive.len() as u128, result.distinct_sets().len() as u128 * aut_count(&h).unwrap());
        }
    }

    #[test]
    fn limited_search_is_a_valid_prefix(g in graph(9), h in graph(4), limit in 1usize..4) {
        prop_assume!(h.order() <= g.order());
        let full = enumerate_alignments(&g, &h, None).unwrap();
        let part = enumerate_alignments(&g, &h, Some(limit)).unwrap();
        let full_sets = full.distinct_sets().len();
        prop_assert_eq!(part.distinct_sets().len(), full_sets.min(limit));
        for c in part.candidates() {
            prop_assert!(full.candidates().contains(c));
        }
        if full_sets < limit {
            prop_assert_eq!(part.candidates(), full.candidates());
        }
        prop_assert_eq!(part.selected(), full.selected());
        let (best, _) = select_alignment(&g, &h, None).unwrap();
        prop_assert_eq!(best.as_ref(), full.selected());
    }

    #[test]
    fn branch_and_bound_selects_the_estimate(n in 4usize..=11, m_raw in 1usize..=5, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let m = m_raw.min(n - 1);
        let pair = sample_pair(&ModelParams::new(n, m, p).unwrap(), seed).unwrap();
        let full = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
        let (best, _) = select_alignment(pair.base(), pair.anonymized(), None).unwrap();
        prop_assert_eq!(best.as_ref(), full.selected());
        prop_assert!(best.is_some());
    }

    #[test]
    fn search_agrees_with_posterior_argmax(params in (3usize..=6).prop_flat_map(|n| (Just(n), 1..=3usize.min(n - 1), 0.05f64..0.95)), seed in any::<u64>()) {
        let params = ModelParams::new(params.0, params.1, params.2).unwrap();
        let pair = sample_pair(&params, seed).unwrap();
        let table = map_posterior_oracle(pair.base(), pair.anonymized(), &params, DEFAULT_ORACLE_CAP).unwrap();
        let search = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
        let top = table.argmax();
        prop_assert_eq!(top.as_slice(), search.candidates());
        prop_assert_eq!(search.selected(), top.first());
    }

    #[test]
    fn margin_identities(n in 2usize..100_000, m_frac in 0.0f64..1.0, p in 0.0f64..=1.0) {
        let m = 1 + ((n - 1) as f64 * m_frac) as usize;
        prop_assume!(m < n);
        let params = ModelParams::new(n, m, p).unwrap();
        let mg = margins(&params);
        let lhs = mg.conv;
        let rhs = mg.ach + (m as f64).ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0));
        let set = classify_margins(&mg, Criterion::Set).region;
        let perm = classify_margins(&mg, Criterion::Permutation).region;
        if perm == Region::Achievable {
            prop_assert_eq!(set, Region::Achievable);
        }
        if set == Region::ConverseSet {
            prop_assert_eq!(perm, Region::ConversePerm);
        }
        let (norm, _) = params.normalized();
        let gap = margin_gap(&norm).unwrap();
        prop_assert!(gap.ach_gap >= 0.0);
        let ach = margins(&norm).ach;
        prop_assert!((gap.old_ach + gap.ach_gap - ach).abs() <= 1e-9 * ach.abs().max(1.0));
    }
}

#[test]
fn empty_pattern_edge_cases() {
    let g = Graph::complete(4).unwrap();
    let h = Graph::empty(1).unwrap();
    assert_eq!(
        enumerate_alignments(&g, &h, None)
            .unwrap()
            .candidates()
            .len(),
        4
    );
}
