//! The eight-vertex pair from the introductory figure: build it, check it,
//! and recover the planted set by exhaustive alignment.

use subalign::graph::edgelist::format_edge_list;
use subalign::model::verify_pair;
use subalign::solver::{enumerate_alignments, judge_recovery};
use subalign::{Graph, SubgraphPair, VertexBijection};

fn main() -> subalign::Result<()> {
    let edges = [
        (1, 5),
        (2, 3),
        (3, 4),
        (3, 6),
        (3, 8),
        (4, 8),
        (5, 7),
        (6, 7),
        (6, 8),
    ];
    let zero_based: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    let g = Graph::from_edges(8, &zero_based)?;

    // S = {3, 4, 6, 8} with 3 -> 1, 4 -> 2, 6 -> 3, 8 -> 4
    let pi = VertexBijection::from_parts(vec![2, 3, 5, 7], vec![0, 1, 2, 3])?;
    let pair = SubgraphPair::from_choices(g, pi)?;
    assert!(verify_pair(&pair));
    println!(
        "anonymized subgraph:\n{}",
        format_edge_list(pair.anonymized())
    );

    let result = enumerate_alignments(pair.base(), pair.anonymized(), None)?;
    for c in result.candidates() {
        let s: Vec<usize> = c.set().iter().map(|v| v + 1).collect();
        let sigma: Vec<usize> = c.bijection().image().iter().map(|l| l + 1).collect();
        println!("S={s:?} sigma={sigma:?}");
    }
    let verdict = judge_recovery(&pair, &result)?;
    println!(
        "outcome={} set_correct={} perm_correct={}",
        verdict.outcome.as_str(),
        verdict.set_correct,
        verdict.perm_correct
    );
    Ok(())
}
