//! The Erdős–Rényi subgraph pair model.
//!
//! A base graph `G ~ ER(n, p)`, a uniformly chosen `m`-subset `S` of its
//! vertices, and a uniform bijection `pi: S -> [m]` used to anonymise
//! `G[S]` into `H_pi`.

pub mod bundle;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexBijection};
use crate::rng::{rng_from_seed, ModelRng};

/// `(n, m, p)` with `1 <= m < n` and `0 <= p <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    n: usize,
    m: usize,
    p: f64,
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

impl ModelParams {
    pub fn new(n: usize, m: usize, p: f64) -> Result<Self> {
        check_probability(p)?;
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if m >= n {
            return Err(Error::InvalidParams(format!(
                "m must be strictly less than n (got n={n}, m={m})"
            )));
        }
        Ok(ModelParams { n, m, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The same instance with `p` replaced by `min(p, 1 - p)`. The flag is
    /// true when the complement reduction was applied.
    pub fn normalized(&self) -> (ModelParams, bool) {
        if self.p > 0.5 {
            (
                ModelParams {
                    p: 1.0 - self.p,
                    ..*self
                },
                true,
            )
        } else {
            (*self, false)
        }
    }
}

/// One draw `(G, S, pi, H_pi)` from the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphPair {
    base: Graph,
    chosen_set: Vec<usize>,
    bijection: VertexBijection,
    anonymized: Graph,
}

impl SubgraphPair {
    /// Assembles a pair without checking its invariants; see [`verify_pair`].
    pub fn from_parts(
        base: Graph,
        chosen_set: Vec<usize>,
        bijection: VertexBijection,
        anonymized: Graph,
    ) -> Self {
        SubgraphPair {
            base,
            chosen_set,
            bijection,
            anonymized,
        }
    }

    /// Runs the extraction and anonymisation steps for a fixed base graph and
    /// bijection. The chosen set is the bijection's domain.
    pub fn from_choices(base: Graph, bijection: VertexBijection) -> Result<Self> {
        bijection.check_range(base.order())?;
        let chosen_set = bijection.domain().to_vec();
        let anonymized = base.induced_subgraph(&chosen_set)?.relabel(&bijection)?;
        Ok(SubgraphPair {
            base,
            chosen_set,
            bijection,
            anonymized,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// `S`, ascending, 0-based.
    pub fn chosen_set(&self) -> &[usize] {
        &self.chosen_set
    }

    pub fn bijection(&self) -> &VertexBijection {
        &self.bijection
    }

    pub fn anonymized(&self) -> &Graph {
        &self.anonymized
    }

    pub fn n(&self) -> usize {
        self.base.order()
    }

    pub fn m(&self) -> usize {
        self.anonymized.order()
    }
}

/// `G ~ ER(n, p)`, deterministic in `seed`.
pub fn sample_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    sample_er_with(&mut rng_from_seed(seed), n, p)
}

/// Draws each pair `u < v` in row-major order as an independent `Bernoulli(p)`.
pub fn sample_er_with(rng: &mut ModelRng, n: usize, p: f64) -> Result<Graph> {
    check_probability(p)?;
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Uniform `k`-subset of `0..n` by partial Fisher–Yates, returned ascending.
pub(crate) fn sample_subset(rng: &mut ModelRng, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool.sort_unstable();
    pool
}

/// Uniform permutation of `0..k` by Fisher–Yates.
pub(crate) fn sample_permutation(rng: &mut ModelRng, k: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Draws `(G, S, pi, H_pi)`; deterministic in `seed`. The stream is consumed
/// in the order edges, subset, bijection.
pub fn sample_pair(params: &ModelParams, seed: u64) -> Result<SubgraphPair> {
    let mut rng = rng_from_seed(seed);
    let base = sample_er_with(&mut rng, params.n, params.p)?;
    let chosen = sample_subset(&mut rng, params.n, params.m);
    let labels = sample_permutation(&mut rng, params.m);
    let bijection = VertexBijection::from_parts(chosen, labels)?;
    SubgraphPair::from_choices(base, bijection)
}

/// Whether `anonymized == relabel(G[S], pi)` bit for bit and the set and
/// bijection agree.
pub fn verify_pair(pair: &SubgraphPair) -> bool {
    let m = pair.chosen_set.len();
    if m == 0
        || pair.bijection.domain() != pair.chosen_set.as_slice()
        || pair.anonymized.order() != m
        || pair.bijection.check_range(pair.base.order()).is_err()
    {
        return false;
    }
    match pair
        .base
        .induced_subgraph(&pair.chosen_set)
        .and_then(|h| h.relabel(&pair.bijection))
    {
        Ok(expected) => expected == pair.anonymized,
        Err(_) => false,
    }
}

/// Complements both graphs, keeping `S` and `pi`. Maps a draw at `p` to a
/// draw at `1 - p`.
pub fn complement_pair(pair: &SubgraphPair) -> SubgraphPair {
    SubgraphPair {
        base: pair.base.complement(),
        chosen_set: pair.chosen_set.clone(),
        bijection: pair.bijection.clone(),
        anonymized: pair.anonymized.complement(),
    }
}
