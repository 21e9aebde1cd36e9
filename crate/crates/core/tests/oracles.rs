mod common;

use std::collections::HashMap;

use approx::assert_relative_eq;
use common::worked_pair;
use itertools::Itertools;
use subalign::analysis::{expected_copy_count, margins, structural_entropy_bounds};
use subalign::graph::aut_count;
use subalign::model::verify_pair;
use subalign::solver::{enumerate_alignments, judge_recovery, Outcome};
use subalign::{Graph, ModelParams};

/// Entropy of the isomorphism class of `ER(n, p)`, by enumerating every
/// labelled graph and grouping under all vertex permutations.
fn exact_structural_entropy(n: usize, p: f64) -> f64 {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut classes: HashMap<u32, f64> = HashMap::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let canon = perms
            .iter()
            .map(|q| {
                edges.iter().fold(0u32, |acc, &(u, v)| {
                    let (a, b) = (q[u].min(q[v]), q[u].max(q[v]));
                    acc | 1 << pairs.iter().position(|&e| e == (a, b)).unwrap()
                })
            })
            .min()
            .unwrap();
        let k = edges.len() as i32;
        *classes.entry(canon).or_default() += p.powi(k) * (1.0 - p).powi(pairs.len() as i32 - k);
    }
    -classes
        .values()
        .filter(|&&q| q > 0.0)
        .map(|&q| q * q.ln())
        .sum::<f64>()
}

#[test]
fn structural_entropy_against_enumeration() {
    // independent reference values at 30 digits
    let reference = [
        (3, 0.3, 1.140_467_164_303_771_3),
        (3, 0.5, 1.255_482_325_178_753_7),
        (4, 0.3, 1.878_976_644_749_853_8),
        (4, 0.5, 2.148_886_495_171_04),
        (5, 0.3, 2.786_291_868_450_370_6),
        (5, 0.5, 3.239_222_189_119_466_4),
    ];
    for (n, p, want) in reference {
        let exact = exact_structural_entropy(n, p);
        assert_relative_eq!(exact, want, max_relative = 1e-12);
        let b = structural_entropy_bounds(n, p).unwrap();
        assert!(exact <= b.upper + 1e-12);
        assert!(b.asymptotic <= exact + 1e-12, "n={n} p={p}");
        assert!(b.asymptotic <= b.upper);
    }
}

#[test]
fn worked_pair_round_trip() {
    let pair = worked_pair();
    assert!(verify_pair(&pair));
    let h_edges: Vec<_> = pair.anonymized().edges().collect();
    assert_eq!(h_edges, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
    let r = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
    assert!(r
        .candidates()
        .iter()
        .any(|c| c.bijection() == pair.bijection()));
    assert_eq!(r.distinct_sets(), vec![&[2, 3, 5, 7][..]]);
    assert_eq!(
        r.candidates().len() as u128,
        aut_count(pair.anonymized()).unwrap()
    );
    let v = judge_recovery(&pair, &r).unwrap();
    assert_eq!(v.outcome, Outcome::Correct);
    assert!(v.perm_correct);
}

#[test]
fn expected_counts_of_small_shapes() {
    // C(n,v) v!/|Aut| p^e (1-p)^(C(v,2)-e), evaluated by hand
    let cases = [
        (Graph::complete(2).unwrap(), 10, 0.3, 45.0 * 0.3),
        (Graph::path(3).unwrap(), 8, 0.2, 56.0 * 3.0 * 0.04 * 0.8),
        (Graph::complete(3).unwrap(), 6, 0.5, 20.0 * 0.125),
        (Graph::cycle(4).unwrap(), 8, 0.5, 70.0 * 3.0 / 64.0),
        (Graph::path(4).unwrap(), 8, 0.2, 70.0 * 12.0 * 0.008 * 0.512),
    ];
    for (h, n, p, want) in cases {
        assert_relative_eq!(
            expected_copy_count(n, &h, p).unwrap().value.unwrap(),
            want,
            max_relative = 1e-12
        );
    }
}

#[test]
fn margin_reference_points() {
    let mg = margins(&ModelParams::new(100, 50, 0.5).unwrap());
    assert_relative_eq!(mg.ach, 12.723_509_328_010_541, max_relative = 1e-12);
    assert_relative_eq!(mg.conv, 16.635_532_333_438_687, max_relative = 1e-12);
    assert_relative_eq!(mg.perm, 21.087_976_994_571_854, max_relative = 1e-12);
}
