//! Recovery margins, region labels and entropy bounds.

use subalign::analysis::{
    classify_region, converse_entropy_gap, margin_gap, margins, structural_entropy_bounds,
    Criterion,
};
use subalign::ModelParams;

fn main() -> subalign::Result<()> {
    println!(
        "{:>5} {:>4} {:>5} {:>9} {:>9} {:>9}  set / perm",
        "n", "m", "p", "ach", "conv", "perm"
    );
    for (n, m, p) in [
        (100, 50, 0.5),
        (12, 10, 0.5),
        (12, 3, 0.02),
        (1000, 20, 0.3),
        (1000, 8, 0.1),
    ] {
        let params = ModelParams::new(n, m, p)?;
        let mg = margins(&params);
        println!(
            "{n:>5} {m:>4} {p:>5} {:>9.4} {:>9.4} {:>9.4}  {} / {}",
            mg.ach,
            mg.conv,
            mg.perm,
            classify_region(&params, Criterion::Set).region,
            classify_region(&params, Criterion::Permutation).region,
        );
    }

    let params = ModelParams::new(100, 50, 0.1)?;
    let gap = margin_gap(&params)?;
    println!(
        "\nat (100, 50, 0.1): ach = old_ach + gap = {:.4} + {:.4}",
        gap.old_ach, gap.ach_gap
    );
    let ce = converse_entropy_gap(&params);
    println!(
        "C(m,2)h(p) = {:.3}, m ln(n/m) = {:.3}, ln C(n,m) = {:.3}",
        ce.subgraph_info, ce.source_entropy_lb, ce.source_entropy_exact
    );
    let se = structural_entropy_bounds(10, 0.5)?;
    println!(
        "structural entropy n=10 p=0.5: upper {:.4}, asymptotic {:.4}",
        se.upper, se.asymptotic
    );
    Ok(())
}
