//! Atypical edge counts against the Chernoff bound, and how often ER(m, p)
//! is asymmetric.

use subalign::experiments::{validate_typicality, validate_wright};

fn main() -> subalign::Result<()> {
    for (m, p, eps) in [(20, 0.5, 0.2), (30, 0.3, 0.15), (40, 0.25, 0.3)] {
        let r = validate_typicality(m, p, Some(eps), 20_000, 5)?;
        println!(
            "m={m} p={p} eps={eps}: atypical {:.4} ± {:.4}, bound {:.4}",
            r.rate, r.std_err, r.bound
        );
    }
    for (m, p) in [(8, 0.5), (15, 0.5), (15, 0.15), (15, 0.0)] {
        let r = validate_wright(m, p, 1_000, 9)?;
        println!(
            "m={m} p={p}: trivial Aut in {:.3} ± {:.3} (m p - ln m = {:+.3})",
            r.rate, r.ci_half_width, r.margin
        );
    }
    Ok(())
}
