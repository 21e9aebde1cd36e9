//! Exhaustive subgraph alignment.
//!
//! The estimator returns every configuration `(S, sigma)` with
//! `sigma(G[S]) == H_pi`. The search assigns pattern labels to host vertices
//! one at a time and prunes with three sound rules:
//!
//! * induced consistency: each new pair must agree on adjacency and on
//!   non-adjacency with every label already placed;
//! * degree: a label of pattern degree `d` only goes to host vertices of
//!   degree at least `d`;
//! * labels are placed in descending pattern degree (ties by label).
//!
//! [`select_alignment`] finds the tie-broken estimate alone by branch and
//! bound: a partial placement is dropped once no completion of it can precede
//! the best configuration found so far.

mod oracle;
mod verdict;

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph, VertexBijection};

pub use oracle::{map_posterior_oracle, PosteriorTable, DEFAULT_ORACLE_CAP};
pub use verdict::{judge_recovery, Outcome, Verdict};

/// An element `(S, sigma)` of the configuration space.
///
/// Ordered by `S` (ascending vertex list), then by the label sequence of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlignmentCandidate {
    set: Vec<usize>,
    bijection: VertexBijection,
}

impl AlignmentCandidate {
    pub fn new(bijection: VertexBijection) -> Self {
        AlignmentCandidate {
            set: bijection.domain().to_vec(),
            bijection,
        }
    }

    /// Builds the candidate from `placement[label] = host vertex`.
    fn from_placement(placement: &[usize]) -> Self {
        let mut pairs: Vec<(usize, usize)> = placement
            .iter()
            .enumerate()
            .map(|(label, &v)| (v, label))
            .collect();
        pairs.sort_unstable();
        AlignmentCandidate::new(VertexBijection::new(pairs).expect("placement is injective"))
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    pub fn bijection(&self) -> &VertexBijection {
        &self.bijection
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial placements extended by one label.
    pub nodes_expanded: u64,
    pub degree_prunes: u64,
    pub consistency_prunes: u64,
    /// Branches cut by the lexicographic bound of [`select_alignment`].
    pub bound_prunes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop once this many distinct vertex sets have been found.
    pub max_sets: Option<usize>,
    /// Fail with [`Error::SearchBudgetExceeded`] beyond this many expansions.
    pub max_nodes: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    host_order: usize,
    pattern_order: usize,
    candidates: Vec<AlignmentCandidate>,
    selected: Option<AlignmentCandidate>,
    truncated: bool,
    stats: SearchStats,
}

impl SolveResult {
    /// All matching configurations found, sorted ascending. Complete unless
    /// [`truncated`](Self::truncated).
    pub fn candidates(&self) -> &[AlignmentCandidate] {
        &self.candidates
    }

    /// The tie-broken estimate: smallest `S`, then smallest label sequence.
    /// Exact even when the enumeration was truncated.
    pub fn selected(&self) -> Option<&AlignmentCandidate> {
        self.selected.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// True when the search stopped at `max_sets` before finishing.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn pattern_order(&self) -> usize {
        self.pattern_order
    }

    /// Distinct vertex sets among the candidates, ascending.
    pub fn distinct_sets(&self) -> Vec<&[usize]> {
        let mut sets: Vec<&[usize]> = self.candidates.iter().map(|c| c.set()).collect();
        sets.dedup();
        sets
    }
}

/// Number of `m`-subsets of the host inducing a copy of the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyCount {
    pub value: u64,
    /// Witness sets, ascending, when requested.
    pub witnesses: Option<Vec<Vec<usize>>>,
}

struct Search<'a, F> {
    host: &'a Graph,
    pattern: &'a Graph,
    host_degrees: Vec<usize>,
    pattern_degrees: Vec<usize>,
    label_order: Vec<usize>,
    placement: Vec<usize>,
    used: Vec<u64>,
    scratch: Vec<u64>,
    max_nodes: Option<u64>,
    stats: SearchStats,
    /// Branch-and-bound mode: leaves update `best` instead of calling `visit`.
    lexmin: bool,
    best: Option<AlignmentCandidate>,
    visit: F,
}

impl<'a, F> Search<'a, F>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn new(host: &'a Graph, pattern: &'a Graph, max_nodes: Option<u64>, visit: F) -> Self {
        let pattern_degrees = pattern.degrees();
        let mut label_order: Vec<usize> = (0..pattern.order()).collect();
        label_order.sort_by_key(|&l| (std::cmp::Reverse(pattern_degrees[l]), l));
        let words = host.words_per_row();
        Search {
            host,
            pattern,
            host_degrees: host.degrees(),
            pattern_degrees,
            label_order,
            placement: vec![usize::MAX; pattern.order()],
            used: vec![0; words],
            scratch: vec![0; words * pattern.order()],
            max_nodes,
            stats: SearchStats::default(),
            lexmin: false,
            best: None,
            visit,
        }
    }

    /// Whether no completion of the placement up to `depth` can beat `best`:
    /// the smallest `m`-set containing the placed vertices is larger than
    /// `best`'s set, or equal to it with no smaller label sequence possible.
    fn cannot_improve(&self, depth: usize, best: &AlignmentCandidate) -> bool {
        let placed = &self.label_order[..=depth];
        let mut smallest: Vec<usize> = placed.iter().map(|&l| self.placement[l]).collect();
        let need = best.set().len() - smallest.len();
        smallest.extend(
            (0..self.host.order())
                .filter(|&v| self.used[v / 64] & (1 << (v % 64)) == 0)
                .take(need),
        );
        smallest.sort_unstable();
        match smallest.as_slice().cmp(best.set()) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
        // Same set: the greedy completion gives the smallest label sequence.
        let mut free: Vec<usize> = self.label_order[depth + 1..].to_vec();
        free.sort_unstable();
        let mut free = free.into_iter();
        let lower: Vec<usize> = smallest
            .iter()
            .map(|&v| {
                placed
                    .iter()
                    .copied()
                    .find(|&l| self.placement[l] == v)
                    .unwrap_or_else(|| free.next().expect("one free label per free vertex"))
            })
            .collect();
        lower.as_slice() >= best.bijection().image()
    }

    fn run(mut self) -> Result<SearchStats> {
        let start = Instant::now();
        let _ = self.descend(0)?;
        self.stats.elapsed = start.elapsed();
        Ok(self.stats)
    }

    fn descend(&mut self, depth: usize) -> Result<ControlFlow<()>> {
        if depth == self.label_order.len() {
            if self.lexmin {
                let candidate = AlignmentCandidate::from_placement(&self.placement);
                if self.best.as_ref().is_none_or(|b| candidate < *b) {
                    self.best = Some(candidate);
                }
                return Ok(ControlFlow::Continue(()));
            }
            return Ok((self.visit)(&self.placement));
        }
        let label = self.label_order[depth];
        let words = self.host.words_per_row();
        let n = self.host.order();

        let mut cand = std::mem::take(&mut self.scratch);
        let row = &mut cand[depth * words..(depth + 1) * words];
        for (w, slot) in row.iter_mut().enumerate() {
            *slot = !self.used[w];
        }
        if !n.is_multiple_of(64) {
            row[words - 1] &= (1u64 << (n % 64)) - 1;
        }
        let before: u32 = row.iter().map(|w| w.count_ones()).sum();
        for &placed in &self.label_order[..depth] {
            let host_row = self.host.row(self.placement[placed]);
            if self.pattern.has_edge(label, placed) {
                row.iter_mut().zip(host_row).for_each(|(c, h)| *c &= h);
            } else {
                row.iter_mut().zip(host_row).for_each(|(c, h)| *c &= !h);
            }
        }
        let after: u32 = row.iter().map(|w| w.count_ones()).sum();
        self.stats.consistency_prunes += u64::from(before - after);
        let options: Vec<usize> = iter_bits(row).collect();
        self.scratch = cand;

        let need = self.pattern_degrees[label];
        for v in options {
            if self.host_degrees[v] < need {
                self.stats.degree_prunes += 1;
                continue;
            }
            self.stats.nodes_expanded += 1;
            if let Some(cap) = self.max_nodes {
                if self.stats.nodes_expanded > cap {
                    return Err(Error::SearchBudgetExceeded(cap));
                }
            }
            self.placement[label] = v;
            self.used[v / 64] |= 1 << (v % 64);
            if let Some(best) = self.best.as_ref().filter(|_| self.lexmin) {
                if self.cannot_improve(depth, best) {
                    self.stats.bound_prunes += 1;
                    self.used[v / 64] &= !(1 << (v % 64));
                    self.placement[label] = usize::MAX;
                    continue;
                }
            }
            let flow = self.descend(depth + 1)?;
            self.used[v / 64] &= !(1 << (v % 64));
            self.placement[label] = usize::MAX;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn check_orders(host: &Graph, pattern: &Graph) -> Result<()> {
    if pattern.order() > host.order() {
        return Err(Error::PatternTooLarge {
            pattern: pattern.order(),
            host: host.order(),
        });
    }
    Ok(())
}

/// Runs the pruned search, calling `visit` with `placement[label] = vertex`
/// for every embedding in a fixed deterministic order.
pub fn search_embeddings<F>(
    host: &Graph,
    pattern: &Graph,
    max_nodes: Option<u64>,
    visit: F,
) -> Result<SearchStats>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    check_orders(host, pattern)?;
    Search::new(host, pattern, max_nodes, visit).run()
}

/// The estimate alone: the smallest configuration `(S, sigma)` with
/// `sigma(G[S]) == H_pi`, or `None` when `H_pi` does not occur in `g`.
pub fn select_alignment(
    g: &Graph,
    h_pi: &Graph,
    max_nodes: Option<u64>,
) -> Result<(Option<AlignmentCandidate>, SearchStats)> {
    check_orders(g, h_pi)?;
    let mut search = Search::new(g, h_pi, max_nodes, |_: &[usize]| ControlFlow::Continue(()));
    search.lexmin = true;
    let start = Instant::now();
    let _ = search.descend(0)?;
    search.stats.elapsed = start.elapsed();
    Ok((search.best, search.stats))
}

/// All `(S, sigma)` with `sigma(G[S]) == H_pi`. With `limit = Some(k)` the
/// search stops as soon as `k` distinct sets have been seen; the candidates
/// are then those found so far, and the estimate comes from
/// [`select_alignment`].
pub fn enumerate_alignments(g: &Graph, h_pi: &Graph, limit: Option<usize>) -> Result<SolveResult> {
    enumerate_alignments_with(
        g,
        h_pi,
        &SolveOptions {
            max_sets: limit,
            max_nodes: None,
        },
    )
}

pub fn enumerate_alignments_with(
    g: &Graph,
    h_pi: &Graph,
    options: &SolveOptions,
) -> Result<SolveResult> {
    let mut candidates = Vec::new();
    let mut sets: HashSet<Vec<usize>> = HashSet::new();
    let mut truncated = false;
    let stats = search_embeddings(g, h_pi, options.max_nodes, |placement| {
        let candidate = AlignmentCandidate::from_placement(placement);
        if !sets.contains(candidate.set()) {
            sets.insert(candidate.set().to_vec());
        }
        candidates.push(candidate);
        match options.max_sets {
            Some(k) if sets.len() >= k => {
                truncated = true;
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    })?;
    candidates.sort_unstable();
    let selected = if truncated {
        select_alignment(g, h_pi, options.max_nodes)?.0
    } else {
        candidates.first().cloned()
    };
    Ok(SolveResult {
        host_order: g.order(),
        pattern_order: h_pi.order(),
        candidates,
        selected,
        truncated,
        stats,
    })
}

fn collect_copy_sets(g: &Graph, h: &Graph) -> Result<HashSet<Vec<usize>>> {
    let mut sets = HashSet::new();
    search_embeddings(g, h, None, |placement| {
        let mut set = placement.to_vec();
        set.sort_unstable();
        sets.insert(set);
        ControlFlow::Continue(())
    })?;
    Ok(sets)
}

/// `X_H`: the number of vertex subsets of `g` whose induced subgraph is
/// isomorphic to `h`.
pub fn count_induced_copies(g: &Graph, h: &Graph) -> Result<CopyCount> {
    Ok(CopyCount {
        value: collect_copy_sets(g, h)?.len() as u64,
        witnesses: None,
    })
}

pub fn count_induced_copies_with_witnesses(g: &Graph, h: &Graph) -> Result<CopyCount> {
    let mut witnesses: Vec<Vec<usize>> = collect_copy_sets(g, h)?.into_iter().collect();
    witnesses.sort_unstable();
    Ok(CopyCount {
        value: witnesses.len() as u64,
        witnesses: Some(witnesses),
    })
}
