#![allow(dead_code)]

use itertools::Itertools;
use proptest::prelude::*;
use subalign::solver::AlignmentCandidate;
use subalign::{Graph, SubgraphPair, VertexBijection};

/// The eight-vertex pair from the introductory figure, 0-based.
pub fn worked_pair() -> SubgraphPair {
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
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    let g = Graph::from_edges(8, &edges).unwrap();
    let pi = VertexBijection::from_parts(vec![2, 3, 5, 7], vec![0, 1, 2, 3]).unwrap();
    SubgraphPair::from_choices(g, pi).unwrap()
}

/// Every `(S, sigma)` with `relabel(G[S], sigma) == h`, by checking all
/// ordered pairs of every configuration. Ascending.
pub fn naive_alignments(g: &Graph, h: &Graph) -> Vec<AlignmentCandidate> {
    let (n, m) = (g.order(), h.order());
    let mut out = Vec::new();
    for set in (0..n).combinations(m) {
        for labels in (0..m).permutations(m) {
            let ok = (0..m).all(|i| {
                (0..m).all(|j| {
                    i == j || g.has_edge(set[i], set[j]) == h.has_edge(labels[i], labels[j])
                })
            });
            if ok {
                out.push(AlignmentCandidate::new(
                    VertexBijection::from_parts(set.clone(), labels).unwrap(),
                ));
            }
        }
    }
    out.sort();
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Random graph of the given order from an explicit bit per pair.
pub fn graph_with_order(order: usize) -> impl Strategy<Value = Graph> {
    let pairs = order * order.saturating_sub(1) / 2;
    prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
        let mut it = bits.into_iter();
        Graph::from_fn(order, |_, _| it.next().unwrap()).unwrap()
    })
}

pub fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(graph_with_order)
}

/// A permutation of `0..n`.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
