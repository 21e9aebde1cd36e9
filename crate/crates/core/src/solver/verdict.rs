use super::SolveResult;
use crate::error::{Error, Result};
use crate::model::SubgraphPair;

/// How a single trial ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Selected set equals the planted set.
    Correct,
    /// Every candidate shares one set and it is not the planted one.
    WrongSet,
    /// Several candidate sets and the tie-break picked a wrong one.
    TieBreakLoss,
    /// The search returned nothing.
    NoCandidate,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Correct => "correct",
            Outcome::WrongSet => "wrong-set",
            Outcome::TieBreakLoss => "tie-break-loss",
            Outcome::NoCandidate => "no-candidate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub set_unique: bool,
    pub set_correct: bool,
    pub perm_correct: bool,
    /// At least two distinct candidate sets, i.e. `X_H >= 2`.
    pub multi_copy: bool,
    pub candidate_sets: usize,
    pub outcome: Outcome,
}

pub fn judge_recovery(pair: &SubgraphPair, result: &SolveResult) -> Result<Verdict> {
    if result.host_order() != pair.n() || result.pattern_order() != pair.m() {
        return Err(Error::InvalidParams(format!(
            "solve result is for orders ({}, {}) but pair has ({}, {})",
            result.host_order(),
            result.pattern_order(),
            pair.n(),
            pair.m()
        )));
    }
    let candidate_sets = result.distinct_sets().len();
    let Some(selected) = result.selected() else {
        return Ok(Verdict {
            set_unique: false,
            set_correct: false,
            perm_correct: false,
            multi_copy: false,
            candidate_sets: 0,
            outcome: Outcome::NoCandidate,
        });
    };
    let set_correct = selected.set() == pair.chosen_set();
    let perm_correct = set_correct && selected.bijection() == pair.bijection();
    let set_unique = candidate_sets == 1;
    let outcome = match (set_correct, set_unique) {
        (true, _) => Outcome::Correct,
        (false, true) => Outcome::WrongSet,
        (false, false) => Outcome::TieBreakLoss,
    };
    Ok(Verdict {
        set_unique,
        set_correct,
        perm_correct,
        multi_copy: candidate_sets >= 2,
        candidate_sets,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{aut_count, Graph, VertexBijection};
    use crate::model::{sample_pair, ModelParams};
    use crate::solver::enumerate_alignments;

    #[test]
    fn unique_asymmetric_embedding_is_recovered() {
        let base = Graph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 5), (5, 6)])
            .unwrap();
        let pi = VertexBijection::from_parts(vec![0, 1, 2, 3, 4, 5, 6], vec![6, 2, 0, 4, 1, 3, 5])
            .unwrap();
        let pair = SubgraphPair::from_choices(base, pi).unwrap();
        let r = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
        let v = judge_recovery(&pair, &r).unwrap();
        assert!(v.set_unique && v.set_correct && v.perm_correct);
        assert_eq!(v.outcome, Outcome::Correct);
    }

    #[test]
    fn symmetric_pattern_unique_set() {
        // triangle {0,1,2} on the end of a path; G[{0,1,2,3}] is the only
        // triangle-with-pendant, and swapping 0 and 1 is its one automorphism
        let base = Graph::from_edges(
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let set = vec![0, 1, 2, 3];
        let h = base.induced_subgraph(&set).unwrap();
        assert_eq!(aut_count(&h).unwrap(), 2);
        let mut hits = 0;
        let labelings: Vec<Vec<usize>> = itertools::Itertools::permutations(0..4, 4).collect();
        for labels in &labelings {
            let pi = VertexBijection::from_parts(set.clone(), labels.clone()).unwrap();
            let pair = SubgraphPair::from_choices(base.clone(), pi).unwrap();
            let r = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
            assert_eq!(r.candidates().len(), 2);
            let v = judge_recovery(&pair, &r).unwrap();
            assert!(v.set_correct && v.set_unique);
            hits += usize::from(v.perm_correct);
        }
        // exactly one of each automorphism coset of size 2 wins the tie-break
        assert_eq!(hits * 2, labelings.len());
    }

    #[test]
    fn mismatched_inputs() {
        let pair = sample_pair(&ModelParams::new(6, 2, 0.5).unwrap(), 1).unwrap();
        let r =
            enumerate_alignments(&Graph::complete(5).unwrap(), pair.anonymized(), None).unwrap();
        assert!(judge_recovery(&pair, &r).is_err());
    }

    #[test]
    fn no_candidates() {
        let base = Graph::complete(4).unwrap();
        let pair = SubgraphPair::from_parts(
            base.clone(),
            vec![0, 1],
            VertexBijection::from_parts(vec![0, 1], vec![0, 1]).unwrap(),
            Graph::empty(2).unwrap(),
        );
        let r = enumerate_alignments(pair.base(), pair.anonymized(), None).unwrap();
        let v = judge_recovery(&pair, &r).unwrap();
        assert_eq!(v.outcome, Outcome::NoCandidate);
        assert!(!v.set_correct);
    }
}
