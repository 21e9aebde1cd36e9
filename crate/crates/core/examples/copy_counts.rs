//! Induced copy counts in random graphs against their closed-form mean.

use subalign::analysis::expected_copy_count;
use subalign::experiments::validate_expectation;
use subalign::graph::Graph;
use subalign::model::sample_er;
use subalign::solver::count_induced_copies_with_witnesses;

fn main() -> subalign::Result<()> {
    let g = sample_er(8, 0.4, 3)?;
    let p3 = Graph::path(3)?;
    let count = count_induced_copies_with_witnesses(&g, &p3)?;
    println!(
        "G has {} edges and {} induced P3",
        g.edge_count(),
        count.value
    );
    for w in count.witnesses.unwrap_or_default().iter().take(5) {
        println!("  {w:?}");
    }

    let shapes = [
        ("K2", Graph::complete(2)?),
        ("P3", Graph::path(3)?),
        ("K3", Graph::complete(3)?),
        ("C4", Graph::cycle(4)?),
    ];
    for (name, h) in &shapes {
        for p in [0.2, 0.5] {
            let e = expected_copy_count(8, h, p)?;
            let r = validate_expectation(8, h, p, 20_000, 11)?;
            println!(
                "{name} p={p}: expected {:.4}, observed {:.4} ± {:.4} (z = {:+.2})",
                e.value.unwrap_or(f64::INFINITY),
                r.mean,
                r.std_err,
                r.z_score()
            );
        }
    }
    Ok(())
}
