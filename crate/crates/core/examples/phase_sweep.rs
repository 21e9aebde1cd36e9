//! A small recovery sweep across p at fixed (n, m), written as CSV.
//!
//! cargo run --release --example phase_sweep -- out.csv

use subalign::experiments::{parse_axis, run_sweep, GridPoint, SweepSpec};

fn main() -> subalign::Result<()> {
    let points = parse_axis::<f64>("0.02,0.05:0.5:0.05")?
        .into_iter()
        .map(|p| GridPoint { n: 14, m: 6, p })
        .collect();
    let report = run_sweep(&SweepSpec::new(points, 200, 2024))?;
    match std::env::args().nth(1) {
        Some(path) => {
            let manifest = report.write_files(&path)?;
            println!("wrote {path} and {}", manifest.display());
        }
        None => print!("{}", report.to_csv_string()?),
    }
    Ok(())
}
