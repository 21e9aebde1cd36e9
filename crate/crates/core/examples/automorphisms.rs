//! Automorphism group orders, by direct enumeration and by refinement.

use subalign::graph::{
    aut_count, aut_count_brute_force, aut_count_refined, count_relabelings, Graph,
};

fn petersen() -> subalign::Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges)
}

fn main() -> subalign::Result<()> {
    let graphs = [
        ("P4", Graph::path(4)?),
        ("C6", Graph::cycle(6)?),
        ("K5", Graph::complete(5)?),
        ("Petersen", petersen()?),
        ("C14", Graph::cycle(14)?),
    ];
    for (name, g) in &graphs {
        let aut = aut_count(g)?;
        println!(
            "{name:<9} |Aut| = {aut:<6} distinct labelings = {}",
            count_relabelings(g)?
        );
        if g.order() <= 10 {
            assert_eq!(aut_count_brute_force(g), aut_count_refined(g));
        }
    }
    Ok(())
}
