//! Exhaustive posterior over all configurations.
//!
//! Applies Bayes' rule to the generative law directly:
//!
//! ```text
//! P(S, sigma | G, H_pi) ∝ P(S, sigma) · P(G) · 1{relabel(G[S], sigma) == H_pi}
//! ```
//!
//! with the uniform prior `1 / (C(n,m) m!)` and `P(G) = p^e (1-p)^(C(n,2)-e)`.
//! It shares no code with the pruned search and serves as its reference.

use itertools::Itertools;

use super::AlignmentCandidate;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexBijection};
use crate::model::ModelParams;

/// Default bound on `C(n, m) · m!`.
pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

/// Posterior weights for every configuration, highest first (ties ascending).
#[derive(Clone, Debug)]
pub struct PosteriorTable {
    pub entries: Vec<(AlignmentCandidate, f64)>,
}

impl PosteriorTable {
    /// All configurations attaining the maximum weight, ascending.
    pub fn argmax(&self) -> Vec<AlignmentCandidate> {
        let Some(&(_, best)) = self.entries.first() else {
            return Vec::new();
        };
        let mut out: Vec<_> = self
            .entries
            .iter()
            .take_while(|(_, w)| *w == best)
            .map(|(c, _)| c.clone())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn weight_of(&self, candidate: &AlignmentCandidate) -> Option<f64> {
        self.entries
            .iter()
            .find(|(c, _)| c == candidate)
            .map(|&(_, w)| w)
    }
}

fn configuration_count(n: usize, m: usize) -> u128 {
    let mut binom: u128 = 1;
    for i in 0..m as u128 {
        binom = binom * (n as u128 - i) / (i + 1);
    }
    binom * (1..=m as u128).product::<u128>()
}

/// `x · ln(y)` with `0 · ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

pub fn map_posterior_oracle(
    g: &Graph,
    h_pi: &Graph,
    params: &ModelParams,
    cap: u128,
) -> Result<PosteriorTable> {
    let (n, m) = (g.order(), h_pi.order());
    if params.n() != n || params.m() != m {
        return Err(Error::InvalidParams(format!(
            "graphs have orders ({n}, {m}) but parameters say ({}, {})",
            params.n(),
            params.m()
        )));
    }
    let configs = configuration_count(n, m);
    if configs > cap {
        return Err(Error::OracleCapExceeded { configs, cap });
    }

    let p = params.p();
    let e = g.edge_count() as f64;
    let non_edges = g.pair_count() as f64 - e;
    let log_p_graph = xlny(e, p) + xlny(non_edges, 1.0 - p);
    let log_prior = -(configs as f64).ln();

    let mut log_joint = Vec::with_capacity(configs as usize);
    for set in (0..n).combinations(m) {
        for labels in (0..m).permutations(m) {
            let sigma = VertexBijection::from_parts(set.clone(), labels)?;
            // Materialise sigma(G[S]) on [m] and compare whole adjacency.
            let mut relabeled = vec![false; m * m];
            for (i, &u) in set.iter().enumerate() {
                for (j, &v) in set.iter().enumerate() {
                    if i != j && g.has_edge(u, v) {
                        relabeled[sigma.image()[i] * m + sigma.image()[j]] = true;
                    }
                }
            }
            let matches = (0..m)
                .all(|a| (0..m).all(|b| relabeled[a * m + b] == (a != b && h_pi.has_edge(a, b))));
            let lp = if matches {
                log_prior + log_p_graph
            } else {
                f64::NEG_INFINITY
            };
            log_joint.push((AlignmentCandidate::new(sigma), lp));
        }
    }

    let max = log_joint
        .iter()
        .map(|&(_, lp)| lp)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::ZeroEvidence);
    }
    let log_evidence = max
        + log_joint
            .iter()
            .map(|&(_, lp)| (lp - max).exp())
            .sum::<f64>()
            .ln();
    let mut entries: Vec<(AlignmentCandidate, f64)> = log_joint
        .into_iter()
        .map(|(c, lp)| (c, (lp - log_evidence).exp()))
        .collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(PosteriorTable { entries })
}
