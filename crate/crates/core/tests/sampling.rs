use statrs::distribution::{ChiSquared, ContinuousCDF};
use subalign::experiments::validate_complement_density;
use subalign::model::{sample_er, sample_pair, ModelParams};
use subalign::rng::derive_seed;

/// Upper critical value for a chi-square test at level 1e-6.
fn critical(df: usize) -> f64 {
    ChiSquared::new(df as f64).unwrap().inverse_cdf(1.0 - 1e-6)
}

fn chi_square(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn er_pair_marginals_and_edge_count() {
    let (n, p, trials) = (10, 0.3, 20_000u64);
    let mut pair_hits = vec![0u64; n * n];
    let (mut sum, mut sum_sq) = (0f64, 0f64);
    for t in 0..trials {
        let g = sample_er(n, p, derive_seed(99, t)).unwrap();
        for (u, v) in g.edges() {
            pair_hits[u * n + v] += 1;
        }
        let e = g.edge_count() as f64;
        sum += e;
        sum_sq += e * e;
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let mean = sum / trials as f64;
    let var = sum_sq / trials as f64 - mean * mean;
    let se = (pairs * p * (1.0 - p) / trials as f64).sqrt();
    assert!((mean - pairs * p).abs() < 4.0 * se, "mean {mean}");
    assert!(
        (var / (pairs * p * (1.0 - p)) - 1.0).abs() < 0.05,
        "variance {var}"
    );
    let pair_se = (p * (1.0 - p) / trials as f64).sqrt();
    for u in 0..n {
        for v in u + 1..n {
            let rate = pair_hits[u * n + v] as f64 / trials as f64;
            assert!(
                (rate - p).abs() < 5.0 * pair_se,
                "pair ({u},{v}) rate {rate}"
            );
        }
    }
}

#[test]
fn chosen_set_is_uniform() {
    let params = ModelParams::new(6, 2, 0.5).unwrap();
    let mut counts = vec![0u64; 36];
    for seed in 0..30_000 {
        let pair = sample_pair(&params, seed).unwrap();
        let s = pair.chosen_set();
        counts[s[0] * 6 + s[1]] += 1;
    }
    let cells: Vec<u64> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .map(|(a, b)| counts[a * 6 + b])
        .collect();
    assert_eq!(cells.iter().sum::<u64>(), 30_000);
    assert!(chi_square(&cells) < critical(14), "{cells:?}");
}

#[test]
fn bijection_is_uniform_and_independent_of_set() {
    let params = ModelParams::new(5, 3, 0.5).unwrap();
    let sets: Vec<Vec<usize>> = itertools::Itertools::combinations(0..5, 3).collect();
    let perms: Vec<Vec<usize>> = itertools::Itertools::permutations(0..3, 3).collect();
    let mut joint = vec![0u64; sets.len() * perms.len()];
    for seed in 0..60_000 {
        let pair = sample_pair(&params, seed).unwrap();
        let si = sets.iter().position(|s| s == pair.chosen_set()).unwrap();
        let pi = perms
            .iter()
            .position(|p| p == pair.bijection().image())
            .unwrap();
        joint[si * perms.len() + pi] += 1;
    }
    let perm_marginal: Vec<u64> = (0..perms.len())
        .map(|j| (0..sets.len()).map(|i| joint[i * perms.len() + j]).sum())
        .collect();
    assert!(chi_square(&perm_marginal) < critical(perms.len() - 1));
    // uniform joint law is equivalent to uniform marginals plus independence
    assert!(chi_square(&joint) < critical(joint.len() - 1));
}

#[test]
fn complement_density_matches_one_minus_p() {
    for p in [0.1, 0.5, 0.85] {
        let r = validate_complement_density(12, p, 5_000, 17).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn sampling_is_reproducible() {
    let params = ModelParams::new(9, 4, 0.3).unwrap();
    let a = sample_pair(&params, 7).unwrap();
    assert_eq!(a, sample_pair(&params, 7).unwrap());
    assert_ne!(a, sample_pair(&params, 8).unwrap());
    // the sampler's output stream is part of the seed contract
    let g = sample_er(6, 0.5, 42).unwrap();
    assert_eq!(
        g.edges().collect::<Vec<_>>(),
        vec![(0, 3), (0, 5), (1, 2), (1, 3), (2, 3)]
    );
    assert_eq!(a.chosen_set(), &[1, 2, 5, 6]);
    assert_eq!(a.bijection().image(), &[1, 0, 2, 3]);
}
