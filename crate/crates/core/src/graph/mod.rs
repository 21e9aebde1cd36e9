//! Simple undirected graphs stored as fixed-width adjacency bit rows.
//!
//! Vertices are `0..order` internally. Text formats (see [`edgelist`]) use
//! 1-based ids.

mod aut;
pub mod edgelist;
mod iso;

use std::fmt;

use crate::error::{Error, Result};

pub use aut::{
    aut_count, aut_count_brute_force, aut_count_refined, aut_count_with, count_relabelings,
    count_relabelings_brute_force, is_asymmetric, is_asymmetric_with, AutConfig,
};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(order: usize) -> usize {
    order.div_ceil(WORD_BITS)
}

/// Iterates the set bits of a bit row in ascending order.
pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * WORD_BITS + tz)
        })
    })
}

/// Undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = words_for(order);
        Ok(Graph {
            order,
            words,
            rows: vec![0; order * words],
            edge_count: 0,
        })
    }

    /// Builds a graph from 0-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(Error::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Builds a graph by querying `adjacent(u, v)` once for every pair `u < v`,
    /// in row-major order.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for u in 0..order {
            for v in (u + 1)..order {
                if adjacent(u, v) {
                    g.insert(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Result<Self> {
        Graph::from_fn(order, |_, _| true)
    }

    /// Path `0 - 1 - ... - (order-1)`.
    pub fn path(order: usize) -> Result<Self> {
        Graph::from_fn(order, |u, v| v == u + 1)
    }

    /// Cycle on `order >= 3` vertices.
    pub fn cycle(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::InvalidParams(format!(
                "cycle needs at least 3 vertices, got {order}"
            )));
        }
        Graph::from_fn(order, |u, v| v == u + 1 || (u == 0 && v == order - 1))
    }

    fn insert(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * w + u / WORD_BITS] |= 1 << (u % WORD_BITS);
        self.edge_count += 1;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of unordered vertex pairs, `C(order, 2)`.
    #[inline]
    pub fn pair_count(&self) -> usize {
        self.order * (self.order - 1) / 2
    }

    /// Adjacency bit row of `v`, `words_per_row` words long.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Graph on the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let mut rows = self.rows.clone();
        let w = self.words;
        for v in 0..self.order {
            let row = &mut rows[v * w..(v + 1) * w];
            for word in row.iter_mut() {
                *word = !*word;
            }
            row[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
            let tail = self.order % WORD_BITS;
            if tail != 0 {
                row[w - 1] &= (1u64 << tail) - 1;
            }
        }
        Graph {
            order: self.order,
            words: w,
            rows,
            edge_count: self.pair_count() - self.edge_count,
        }
    }

    /// `G[S]`, re-indexed by ascending order of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0]));
            }
        }
        if let Some(&last) = sorted.last() {
            if last >= self.order {
                return Err(Error::VertexOutOfRange {
                    vertex: last,
                    order: self.order,
                });
            }
        }
        Ok(self.induced_sorted_unchecked(&sorted))
    }

    pub(crate) fn induced_sorted_unchecked(&self, sorted: &[usize]) -> Graph {
        Graph::from_fn(sorted.len(), |i, j| self.has_edge(sorted[i], sorted[j]))
            .expect("non-empty vertex set")
    }

    /// Applies `b` to a graph whose vertex `i` stands for the `i`-th smallest
    /// element of `b`'s domain (the indexing produced by
    /// [`induced_subgraph`](Self::induced_subgraph)). Vertex `i` becomes
    /// label `b.image()[i]`.
    pub fn relabel(&self, b: &VertexBijection) -> Result<Graph> {
        if b.len() != self.order {
            return Err(Error::DomainMismatch {
                bijection: b.len(),
                order: self.order,
            });
        }
        Ok(self.permute(b.image()))
    }

    /// Moves vertex `i` to position `perm[i]`. `perm` must be a permutation
    /// of `0..order`.
    pub(crate) fn permute(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.order).expect("order >= 1");
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    /// Whether `self` and `other` are isomorphic.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        iso::find_isomorphism(self, other).is_some()
    }

    /// An isomorphism `phi` with `{u, v}` an edge of `self` iff
    /// `{phi[u], phi[v]}` is an edge of `other`, if one exists.
    pub fn find_isomorphism(&self, other: &Graph) -> Option<Vec<usize>> {
        iso::find_isomorphism(self, other)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A bijection from a set of host vertices onto `0..len`.
///
/// Stored as the sorted domain plus `image[i]`, the label of `domain[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexBijection {
    domain: Vec<usize>,
    image: Vec<usize>,
}

impl VertexBijection {
    /// From `(vertex, label)` pairs in any order. Labels must form `0..len`.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        pairs.sort_unstable();
        let (domain, image): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        VertexBijection::from_parts(domain, image)
    }

    /// From a sorted domain and the labels of its elements in that order.
    pub fn from_parts(domain: Vec<usize>, image: Vec<usize>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if domain.len() != image.len() {
            return Err(Error::InvalidBijection(format!(
                "domain has {} vertices but image has {}",
                domain.len(),
                image.len()
            )));
        }
        for pair in domain.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidBijection(
                    "domain must be strictly ascending".into(),
                ));
            }
        }
        let mut seen = vec![false; image.len()];
        for &label in &image {
            if label >= image.len() || std::mem::replace(&mut seen[label], true) {
                return Err(Error::InvalidBijection(format!(
                    "image is not a permutation of 0..{}",
                    image.len()
                )));
            }
        }
        Ok(VertexBijection { domain, image })
    }

    /// A permutation of `0..perm.len()` viewed as a bijection.
    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        VertexBijection::from_parts((0..perm.len()).collect(), perm)
    }

    pub fn identity(len: usize) -> Result<Self> {
        VertexBijection::from_permutation((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Label of host vertex `v`, if `v` is in the domain.
    pub fn forward(&self, v: usize) -> Option<usize> {
        self.domain.binary_search(&v).ok().map(|i| self.image[i])
    }

    /// Host vertex carrying `label`.
    pub fn inverse(&self, label: usize) -> Option<usize> {
        self.image
            .iter()
            .position(|&l| l == label)
            .map(|i| self.domain[i])
    }

    /// Checks every domain vertex is below `order`.
    pub fn check_range(&self, order: usize) -> Result<()> {
        match self.domain.last() {
            Some(&v) if v >= order => Err(Error::VertexOutOfRange { vertex: v, order }),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let c = Graph::complete(4).unwrap().complement();
        assert_eq!(c, Graph::empty(4).unwrap());
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn complement_of_empty_three_is_triangle() {
        let c = Graph::empty(3).unwrap().complement();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c, Graph::complete(3).unwrap());
    }

    #[test]
    fn complement_of_p3_is_single_edge() {
        let c = Graph::path(3).unwrap().complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn complement_masks_tail_bits() {
        for order in [1, 63, 64, 65, 130] {
            let g = Graph::empty(order).unwrap().complement();
            assert_eq!(g.edge_count(), order * (order - 1) / 2);
            assert_eq!(g.degree(0), order - 1);
            assert_eq!(g.complement(), Graph::empty(order).unwrap());
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.induced_subgraph(&[0, 1, 2]).unwrap(),
            Graph::complete(3).unwrap()
        );
        assert_eq!(
            p4().induced_subgraph(&[0, 3]).unwrap(),
            Graph::empty(2).unwrap()
        );
        assert_eq!(
            p4().induced_subgraph(&[2, 1]).unwrap(),
            Graph::complete(2).unwrap()
        );
    }

    #[test]
    fn induced_subgraph_errors() {
        assert!(matches!(
            p4().induced_subgraph(&[]),
            Err(Error::EmptyVertexSet)
        ));
        assert!(matches!(
            p4().induced_subgraph(&[0, 4]),
            Err(Error::VertexOutOfRange {
                vertex: 4,
                order: 4
            })
        ));
        assert!(matches!(
            p4().induced_subgraph(&[1, 1]),
            Err(Error::DuplicateVertex(1))
        ));
    }

    #[test]
    fn relabel_examples() {
        let g = p4();
        let id = VertexBijection::identity(4).unwrap();
        assert_eq!(g.relabel(&id).unwrap(), g);

        let edge = Graph::complete(2).unwrap();
        let swap = VertexBijection::from_permutation(vec![1, 0]).unwrap();
        assert_eq!(edge.relabel(&swap).unwrap(), edge);

        // path 1-2-3 under 1->3, 2->1, 3->2 gives edges {3,1}, {1,2}
        let p3 = Graph::path(3).unwrap();
        let b = VertexBijection::new(vec![(0, 2), (1, 0), (2, 1)]).unwrap();
        let r = p3.relabel(&b).unwrap();
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn relabel_domain_mismatch() {
        let b = VertexBijection::identity(3).unwrap();
        assert!(matches!(
            p4().relabel(&b),
            Err(Error::DomainMismatch {
                bijection: 3,
                order: 4
            })
        ));
    }

    #[test]
    fn bijection_validation() {
        assert!(VertexBijection::from_parts(vec![1, 3], vec![0, 0]).is_err());
        assert!(VertexBijection::from_parts(vec![3, 1], vec![0, 1]).is_err());
        assert!(VertexBijection::from_parts(vec![1, 3], vec![0, 2]).is_err());
        let b = VertexBijection::new(vec![(8, 3), (3, 0), (6, 2), (4, 1)]).unwrap();
        assert_eq!(b.domain(), &[3, 4, 6, 8]);
        assert_eq!(b.image(), &[0, 1, 2, 3]);
        assert_eq!(b.forward(6), Some(2));
        assert_eq!(b.inverse(3), Some(8));
        assert_eq!(b.forward(5), None);
        assert!(b.check_range(9).is_ok());
        assert!(b.check_range(8).is_err());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(matches!(Graph::empty(0), Err(Error::EmptyGraph)));
    }
}
