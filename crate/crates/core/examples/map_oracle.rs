//! The exhaustive posterior agrees with the pruned search on small pairs.

use subalign::model::{sample_pair, ModelParams};
use subalign::solver::{enumerate_alignments, map_posterior_oracle, DEFAULT_ORACLE_CAP};

fn main() -> subalign::Result<()> {
    let params = ModelParams::new(6, 3, 0.4)?;
    for seed in 0..5 {
        let pair = sample_pair(&params, seed)?;
        let table =
            map_posterior_oracle(pair.base(), pair.anonymized(), &params, DEFAULT_ORACLE_CAP)?;
        let top = table.argmax();
        let search = enumerate_alignments(pair.base(), pair.anonymized(), None)?;
        assert_eq!(top.as_slice(), search.candidates());
        let truth = table
            .entries
            .iter()
            .find(|(c, _)| c.bijection() == pair.bijection())
            .map(|&(_, w)| w)
            .unwrap_or(0.0);
        println!(
            "seed {seed}: {} MAP configurations of {}, posterior of the truth {truth:.4}",
            top.len(),
            table.entries.len()
        );
    }
    Ok(())
}
