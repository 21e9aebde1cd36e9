//! Sample pairs from the model and see how often the estimator recovers S.
//!
//! cargo run --example solve_alignment -- 12 6 0.5 20

use subalign::model::{sample_pair, ModelParams};
use subalign::solver::{enumerate_alignments_with, judge_recovery, SolveOptions};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() -> subalign::Result<()> {
    let params = ModelParams::new(arg(1, 12), arg(2, 6), arg(3, 0.5))?;
    let trials: u64 = arg(4, 20);
    let options = SolveOptions::default();

    let mut recovered = 0;
    for seed in 0..trials {
        let pair = sample_pair(&params, seed)?;
        let result = enumerate_alignments_with(pair.base(), pair.anonymized(), &options)?;
        let v = judge_recovery(&pair, &result)?;
        println!(
            "seed={seed:<3} candidates={:<4} sets={:<3} nodes={:<6} {}",
            result.candidates().len(),
            v.candidate_sets,
            result.stats().nodes_expanded,
            v.outcome.as_str()
        );
        recovered += u64::from(v.set_correct);
    }
    println!("set recovered in {recovered}/{trials} trials");
    Ok(())
}
