//! Monte Carlo checks of analytic predictions.

use rayon::prelude::*;

use super::proportion_std_error;
use crate::analysis::{
    atypicality_bound, default_epsilon, expected_copy_count, typicality_check, wright_margin,
};
use crate::error::{Error, Result};
use crate::graph::{is_asymmetric, Graph};
use crate::model::{check_probability, sample_er};
use crate::rng::derive_seed;
use crate::solver::count_induced_copies;

fn require_trials(trials: u64) -> Result<()> {
    if trials < 2 {
        return Err(Error::InvalidParams("need at least 2 trials".into()));
    }
    Ok(())
}

/// Sample mean and standard error from exact integer sums.
fn mean_and_se(sum: u128, sum_sq: u128, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let mean = sum as f64 / n;
    let var = ((sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationReport {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub expected: f64,
    pub mean: f64,
    pub std_err: f64,
    /// `|mean - expected| <= 3 std_err`, up to rounding.
    pub pass: bool,
}

impl ExpectationReport {
    pub fn z_score(&self) -> f64 {
        if self.std_err == 0.0 {
            if within(self.mean - self.expected, 0.0, 0.0, self.expected) {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - self.expected) / self.std_err
        }
    }
}

fn within(diff: f64, se: f64, k: f64, scale: f64) -> bool {
    diff.abs() <= k * se + 1e-9 * scale.max(1.0)
}

/// Compares the empirical mean of `X_H` over `ER(n, p)` samples with the
/// closed-form expectation.
pub fn validate_expectation(
    n: usize,
    h: &Graph,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<ExpectationReport> {
    require_trials(trials)?;
    let expected = expected_copy_count(n, h, p)?
        .value
        .ok_or_else(|| Error::InvalidParams("expected count overflows".into()))?;
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| Ok(count_induced_copies(&sample_er(n, p, derive_seed(seed, t))?, h)?.value))
        .collect::<Result<_>>()?;
    let sum: u128 = counts.iter().map(|&c| c as u128).sum();
    let sum_sq: u128 = counts.iter().map(|&c| (c as u128) * (c as u128)).sum();
    let (mean, std_err) = mean_and_se(sum, sum_sq, trials);
    Ok(ExpectationReport {
        n,
        p,
        trials,
        expected,
        mean,
        std_err,
        pass: within(mean - expected, std_err, 3.0, expected),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WrightReport {
    pub m: usize,
    pub p: f64,
    pub trials: u64,
    pub trivial: u64,
    pub rate: f64,
    /// Half-width of the 95% normal interval.
    pub ci_half_width: f64,
    /// `m p - ln m`
    pub margin: f64,
}

/// Empirical `P(|Aut(H)| = 1)` for `H ~ ER(m, p)`.
pub fn validate_wright(m: usize, p: f64, trials: u64, seed: u64) -> Result<WrightReport> {
    require_trials(trials)?;
    let flags: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| is_asymmetric(&sample_er(m, p, derive_seed(seed, t))?))
        .collect::<Result<_>>()?;
    let trivial = flags.iter().filter(|&&f| f).count() as u64;
    let rate = trivial as f64 / trials as f64;
    Ok(WrightReport {
        m,
        p,
        trials,
        trivial,
        rate,
        ci_half_width: 1.96 * proportion_std_error(rate, trials),
        margin: wright_margin(m, p),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypicalityReport {
    pub m: usize,
    pub p: f64,
    pub eps: f64,
    pub trials: u64,
    pub atypical: u64,
    pub rate: f64,
    pub std_err: f64,
    pub bound: f64,
    /// `rate <= bound + 5 std_err`
    pub pass: bool,
}

/// Empirical probability that `H ~ ER(m, p)` is not `eps`-typical, against
/// the Chernoff bound. `eps` defaults to `(m sqrt(p))^(-1/2)`.
pub fn validate_typicality(
    m: usize,
    p: f64,
    eps: Option<f64>,
    trials: u64,
    seed: u64,
) -> Result<TypicalityReport> {
    require_trials(trials)?;
    check_probability(p)?;
    let eps = eps.unwrap_or_else(|| default_epsilon(m, p));
    let atypical = (0..trials)
        .into_par_iter()
        .map(|t| {
            Ok(!typicality_check(
                &sample_er(m, p, derive_seed(seed, t))?,
                p,
                eps,
            ))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&a| a)
        .count() as u64;
    let rate = atypical as f64 / trials as f64;
    let bound = atypicality_bound(m, p, eps);
    let std_err = proportion_std_error(rate, trials);
    Ok(TypicalityReport {
        m,
        p,
        eps,
        trials,
        atypical,
        rate,
        std_err,
        bound,
        pass: rate <= bound + 5.0 * std_err,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    /// Mean edge density of the complement graph.
    pub mean: f64,
    pub std_err: f64,
    /// `1 - p`
    pub expected: f64,
    /// Within three standard errors.
    pub pass: bool,
}

/// Edge density of `complement(G)` for `G ~ ER(n, p)`; should centre on `1 - p`.
pub fn validate_complement_density(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<DensityReport> {
    require_trials(trials)?;
    if n < 2 {
        return Err(Error::InvalidParams("need n >= 2".into()));
    }
    let edges: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            Ok(sample_er(n, p, derive_seed(seed, t))?
                .complement()
                .edge_count() as u64)
        })
        .collect::<Result<_>>()?;
    let sum: u128 = edges.iter().map(|&c| c as u128).sum();
    let sum_sq: u128 = edges.iter().map(|&c| (c as u128) * (c as u128)).sum();
    let (mean_edges, se_edges) = mean_and_se(sum, sum_sq, trials);
    let pairs = (n * (n - 1) / 2) as f64;
    let (mean, std_err, expected) = (mean_edges / pairs, se_edges / pairs, 1.0 - p);
    Ok(DensityReport {
        n,
        p,
        trials,
        mean,
        std_err,
        expected,
        pass: within(mean - expected, std_err, 3.0, 1e-6),
    })
}
