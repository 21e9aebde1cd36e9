//! Automorphism counting.
//!
//! Two strategies: direct backtracking enumeration of all automorphisms
//! (small orders), and a stabilizer chain over colour-refined partitions
//! that multiplies orbit sizes without listing the group.

use std::collections::HashSet;

use itertools::Itertools;

use super::Graph;
use crate::error::{Error, Result};

/// Limits for [`aut_count_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutConfig {
    /// Orders up to this use direct enumeration.
    pub direct_max: usize,
    /// Hard cap on the order accepted at all.
    pub cap: usize,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig {
            direct_max: 10,
            cap: 20,
        }
    }
}

/// `|Aut(g)|` with the default [`AutConfig`].
pub fn aut_count(g: &Graph) -> Result<u128> {
    aut_count_with(g, &AutConfig::default())
}

pub fn aut_count_with(g: &Graph, config: &AutConfig) -> Result<u128> {
    if g.order() > config.cap {
        return Err(Error::AutCapExceeded {
            order: g.order(),
            cap: config.cap,
        });
    }
    if g.order() <= config.direct_max {
        Ok(aut_count_brute_force(g))
    } else {
        Ok(aut_count_refined(g))
    }
}

/// [`is_asymmetric_with`] under the default [`AutConfig`].
pub fn is_asymmetric(g: &Graph) -> Result<bool> {
    is_asymmetric_with(g, &AutConfig::default())
}

/// Whether the identity is the only automorphism. Direct enumeration stops
/// at the first non-identity automorphism.
pub fn is_asymmetric_with(g: &Graph, config: &AutConfig) -> Result<bool> {
    if g.order() > config.cap {
        return Err(Error::AutCapExceeded {
            order: g.order(),
            cap: config.cap,
        });
    }
    if g.order() <= config.direct_max {
        Ok(count_automorphisms_up_to(g, 2) == 1)
    } else {
        Ok(aut_count_refined(g) == 1)
    }
}

/// Counts automorphisms by enumerating every adjacency-preserving
/// permutation. Exponential; no cap is applied.
pub fn aut_count_brute_force(g: &Graph) -> u128 {
    count_automorphisms_up_to(g, u128::MAX)
}

fn count_automorphisms_up_to(g: &Graph, stop_at: u128) -> u128 {
    let degrees = g.degrees();
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; g.order()];
    enumerate_automorphisms(g, &degrees, 0, &mut map, &mut used, stop_at)
}

fn enumerate_automorphisms(
    g: &Graph,
    degrees: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
    stop_at: u128,
) -> u128 {
    if v == g.order() {
        return 1;
    }
    let mut total = 0;
    for w in 0..g.order() {
        if used[w] || degrees[w] != degrees[v] {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        total += enumerate_automorphisms(g, degrees, v + 1, map, used, stop_at - total);
        used[w] = false;
        if total >= stop_at {
            break;
        }
    }
    total
}

/// Counts automorphisms as a product of orbit sizes along a stabilizer
/// chain. Orbits are found by individualisation and colour refinement.
pub fn aut_count_refined(g: &Graph) -> u128 {
    let mut prefix: Vec<usize> = Vec::new();
    let mut count: u128 = 1;
    loop {
        let colors = refine(g, &prefix);
        let Some(cell) = first_nontrivial_cell(&colors) else {
            return count;
        };
        let x = cell[0];
        let mut target = prefix.clone();
        target.push(x);
        let mut orbit: u128 = 1;
        for &y in &cell[1..] {
            let mut image = prefix.clone();
            image.push(y);
            if extends_to_automorphism(g, &target, &image) {
                orbit += 1;
            }
        }
        count *= orbit;
        prefix = target;
    }
}

/// Stable colouring after individualising `prefix[i]` with colour `i + 1`.
/// Colours are ranks of sorted signatures, so the result is isomorphism
/// invariant given the prefix.
fn refine(g: &Graph, prefix: &[usize]) -> Vec<u32> {
    let n = g.order();
    let mut colors = vec![0u32; n];
    for (i, &v) in prefix.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    let mut classes = colors.iter().unique().count();
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nbr.sort_unstable();
                (colors[v], nbr)
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present") as u32)
            .collect();
        colors = next;
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

/// Vertices (ascending) of the lowest colour class with more than one member.
fn first_nontrivial_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut sizes = vec![0usize; colors.len()];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let color = sizes.iter().position(|&s| s > 1)? as u32;
    Some((0..colors.len()).filter(|&v| colors[v] == color).collect())
}

/// Whether some automorphism maps `source[i]` to `image[i]` for all `i`.
fn extends_to_automorphism(g: &Graph, source: &[usize], image: &[usize]) -> bool {
    let ca = refine(g, source);
    let cb = refine(g, image);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    match first_nontrivial_cell(&ca) {
        None => {
            let mut by_color = vec![0usize; g.order()];
            for (w, &c) in cb.iter().enumerate() {
                by_color[c as usize] = w;
            }
            let phi: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
            g.edges().all(|(u, v)| g.has_edge(phi[u], phi[v]))
        }
        Some(cell) => {
            let x = cell[0];
            let color = ca[x];
            let mut source = source.to_vec();
            source.push(x);
            (0..g.order()).filter(|&y| cb[y] == color).any(|y| {
                let mut next = image.to_vec();
                next.push(y);
                extends_to_automorphism(g, &source, &next)
            })
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of distinct labelled graphs on `0..order` isomorphic to `h`,
/// `order! / |Aut(h)|`.
pub fn count_relabelings(h: &Graph) -> Result<u128> {
    Ok(factorial(h.order()) / aut_count(h)?)
}

/// Same count by applying all `order!` permutations and deduplicating.
pub fn count_relabelings_brute_force(h: &Graph) -> u128 {
    let n = h.order();
    (0..n)
        .permutations(n)
        .map(|perm| h.permute(&perm))
        .collect::<HashSet<_>>()
        .len() as u128
}

#[cfg(test)]
mod tests {
    #[test]
    fn asymmetry_decisions() {
        let asym = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 5), (5, 6)])
            .unwrap();
        assert!(is_asymmetric(&asym).unwrap());
        assert!(!is_asymmetric(&Graph::empty(10).unwrap()).unwrap());
        assert!(!is_asymmetric(&Graph::path(15).unwrap()).unwrap());
        assert!(is_asymmetric(&Graph::empty(1).unwrap()).unwrap());
        assert!(is_asymmetric(&Graph::empty(21).unwrap()).is_err());
    }

    use super::*;

    #[test]
    fn small_aut_counts() {
        assert_eq!(aut_count(&Graph::empty(4).unwrap()).unwrap(), 24);
        assert_eq!(aut_count(&Graph::path(3).unwrap()).unwrap(), 2);
        assert_eq!(aut_count(&Graph::cycle(5).unwrap()).unwrap(), 10);
        assert_eq!(aut_count(&Graph::empty(1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn refined_matches_known_groups() {
        assert_eq!(aut_count_refined(&Graph::empty(4).unwrap()), 24);
        assert_eq!(aut_count_refined(&Graph::cycle(5).unwrap()), 10);
        assert_eq!(aut_count_refined(&Graph::cycle(12).unwrap()), 24);
        assert_eq!(
            aut_count_refined(&Graph::complete(15).unwrap()),
            factorial(15)
        );
        assert_eq!(aut_count_refined(&Graph::empty(20).unwrap()), factorial(20));
        // Petersen graph
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let petersen = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(aut_count_refined(&petersen), 120);
        assert_eq!(aut_count_brute_force(&petersen), 120);
    }

    #[test]
    fn strategy_switch_and_cap() {
        let g = Graph::cycle(11).unwrap();
        assert_eq!(aut_count(&g).unwrap(), 22);
        let big = Graph::empty(21).unwrap();
        assert!(matches!(
            aut_count(&big),
            Err(Error::AutCapExceeded { order: 21, cap: 20 })
        ));
        let cfg = AutConfig {
            direct_max: 0,
            cap: 30,
        };
        assert_eq!(aut_count_with(&Graph::path(25).unwrap(), &cfg).unwrap(), 2);
    }

    #[test]
    fn relabeling_counts() {
        assert_eq!(count_relabelings(&Graph::complete(2).unwrap()).unwrap(), 1);
        assert_eq!(count_relabelings(&Graph::path(3).unwrap()).unwrap(), 3);
        assert_eq!(count_relabelings(&Graph::path(4).unwrap()).unwrap(), 12);
        assert_eq!(count_relabelings_brute_force(&Graph::path(4).unwrap()), 12);
    }
}
