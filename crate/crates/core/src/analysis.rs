//! Closed-form threshold quantities at finite `(n, m, p)`.
//!
//! Everything is in nats. Factorials and binomials go through `ln Γ`, and
//! `0 · ln 0` is taken as 0 throughout.

use std::fmt;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::graph::{aut_count, Graph};
use crate::model::{check_probability, ModelParams};

/// `x · ln y` with `0 · ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n, "ln_binomial({n}, {k})");
    let k = k.min(n - k);
    // ln Γ differences lose everything to cancellation when n >> k.
    if k <= 256 {
        (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
    } else {
        ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
    }
}

fn pairs(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

/// `h(p) = -p ln p - (1-p) ln(1-p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(-xlny(p, p) - xlny(1.0 - p, 1.0 - p))
}

/// The three threshold expressions for one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Margins {
    /// `(m/2) h(p) - ln n`
    pub ach: f64,
    /// `(m/2) h(p) - ln(n/m)`
    pub conv: f64,
    /// `m p - ln m`
    pub perm: f64,
}

pub fn margins(params: &ModelParams) -> Margins {
    let (n, m, p) = (params.n() as f64, params.m() as f64, params.p());
    let half_info = m / 2.0 * binary_entropy(p).expect("validated p");
    Margins {
        ach: half_info - n.ln(),
        conv: half_info - (n / m).ln(),
        perm: wright_margin(params.m(), p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    Set,
    Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Achievable,
    ConverseSet,
    ConversePerm,
    Unknown,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Achievable => "achievable",
            Region::ConverseSet => "converse-set",
            Region::ConversePerm => "converse-perm",
            Region::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegionLabel {
    pub region: Region,
    pub criterion: Criterion,
}

/// Sign-of-margin classification. `-> ∞` conditions become `> 0` and
/// `-> -∞` conditions become `< 0`.
pub fn classify_region(params: &ModelParams, criterion: Criterion) -> RegionLabel {
    classify_margins(&margins(params), criterion)
}

pub fn classify_margins(mg: &Margins, criterion: Criterion) -> RegionLabel {
    let region = match criterion {
        Criterion::Set => {
            if mg.ach > 0.0 {
                Region::Achievable
            } else if mg.conv < 0.0 {
                Region::ConverseSet
            } else {
                Region::Unknown
            }
        }
        Criterion::Permutation => {
            if mg.ach > 0.0 && mg.perm > 0.0 {
                Region::Achievable
            } else if mg.conv < 0.0 || mg.perm < 0.0 {
                Region::ConversePerm
            } else {
                Region::Unknown
            }
        }
    };
    RegionLabel { region, criterion }
}

/// Side conditions under which the set converse tightens to `ach -> -∞`.
/// Reported only; they are asymptotic and not used by [`classify_region`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConverseAdvisory {
    /// `ln m / ln n`; small values suggest `ln m = o(ln n)`.
    pub log_ratio: f64,
    pub perm_margin_positive: bool,
}

pub fn converse_advisory(params: &ModelParams) -> ConverseAdvisory {
    ConverseAdvisory {
        log_ratio: (params.m() as f64).ln() / (params.n() as f64).ln(),
        perm_margin_positive: wright_margin(params.m(), params.p()) > 0.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectedCount {
    pub ln_value: f64,
    /// `None` when `exp(ln_value)` overflows `f64`.
    pub value: Option<f64>,
}

/// `E[X_H | H] = C(n, v) · v!/|Aut H| · p^e (1-p)^(C(v,2) - e)`.
pub fn expected_copy_count(n: usize, h: &Graph, p: f64) -> Result<ExpectedCount> {
    check_probability(p)?;
    let v = h.order();
    if v > n {
        return Err(Error::PatternTooLarge {
            pattern: v,
            host: n,
        });
    }
    let aut = aut_count(h)? as f64;
    let e = h.edge_count() as f64;
    let ln_value =
        ln_binomial(n, v) + ln_factorial(v) - aut.ln() + xlny(e, p) + xlny(pairs(v) - e, 1.0 - p);
    let value = ln_value.exp();
    Ok(ExpectedCount {
        ln_value,
        value: value.is_finite().then_some(value),
    })
}

/// `|e_h - C(m,2) p| <= eps · C(m,2) p`.
pub fn typicality_check(h: &Graph, p: f64, eps: f64) -> bool {
    let mean = pairs(h.order()) * p;
    (h.edge_count() as f64 - mean).abs() <= eps * mean
}

/// `eps = (m sqrt(p))^(-1/2)`; infinite at `p = 0`.
pub fn default_epsilon(m: usize, p: f64) -> f64 {
    1.0 / (m as f64 * p.sqrt()).sqrt()
}

/// Multiplicative Chernoff bound `min(1, 2 exp(-eps² C(m,2) p / 3))` on the
/// probability that `H ~ ER(m, p)` is atypical.
pub fn atypicality_bound(m: usize, p: f64, eps: f64) -> f64 {
    (2.0 * (-eps * eps * pairs(m) * p / 3.0).exp()).min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructuralEntropy {
    /// `C(n,2) h(p)`
    pub upper: f64,
    /// `C(n,2) h(p) - ln n!`, the ER structural entropy without its `o(1)` term.
    pub asymptotic: f64,
    /// `n p - ln n > 0`
    pub asymptotic_valid: bool,
}

pub fn structural_entropy_bounds(n: usize, p: f64) -> Result<StructuralEntropy> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let upper = pairs(n) * binary_entropy(p)?;
    Ok(StructuralEntropy {
        upper,
        asymptotic: upper - ln_factorial(n),
        asymptotic_valid: n as f64 * p - (n as f64).ln() > 0.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConverseEntropyGap {
    /// `C(m,2) h(p)`, an upper bound on `H(G[S] | G)`.
    pub subgraph_info: f64,
    /// `m ln(n/m)`
    pub source_entropy_lb: f64,
    /// `ln C(n,m) = H(S)`
    pub source_entropy_exact: f64,
    /// `subgraph_info < source_entropy_lb`
    pub infeasible: bool,
}

pub fn converse_entropy_gap(params: &ModelParams) -> ConverseEntropyGap {
    let (n, m) = (params.n(), params.m());
    let subgraph_info = pairs(m) * binary_entropy(params.p()).expect("validated p");
    let source_entropy_lb = m as f64 * (n as f64 / m as f64).ln();
    ConverseEntropyGap {
        subgraph_info,
        source_entropy_lb,
        source_entropy_exact: ln_binomial(n, m),
        infeasible: subgraph_info < source_entropy_lb,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginGap {
    /// `(m/2) p ln((1-p)/p)`, how much `ach` exceeds `old_ach`.
    pub ach_gap: f64,
    /// `(m/2) ln(1/(1-p)) - ln n`
    pub old_ach: f64,
}

/// Requires `p <= 1/2`; normalise with [`ModelParams::normalized`] first.
pub fn margin_gap(params: &ModelParams) -> Result<MarginGap> {
    let p = params.p();
    if p > 0.5 {
        return Err(Error::InvalidParams(format!(
            "margin gap needs p <= 1/2, got {p}; complement first"
        )));
    }
    let half_m = params.m() as f64 / 2.0;
    let ach_gap = if p == 0.0 {
        0.0
    } else {
        half_m * p * ((1.0 - p) / p).ln()
    };
    debug_assert!(ach_gap >= 0.0);
    Ok(MarginGap {
        ach_gap,
        old_ach: half_m * -(1.0 - p).ln() - (params.n() as f64).ln(),
    })
}

/// `m p - ln m`; positive values favour a trivial automorphism group.
pub fn wright_margin(m: usize, p: f64) -> f64 {
    m as f64 * p - (m as f64).ln()
}
