//! Seeded Monte Carlo campaigns.
//!
//! A trial samples one pair, runs the alignment search and judges the
//! estimate. Trials at a point use seeds `derive_seed(point_seed, t)` and a
//! sweep gives point `i` the seed `derive_seed(master_seed, i)`, so results do
//! not depend on how work is spread over threads. Per-trial records are
//! reduced with integer sums in trial order.

pub mod config;
mod validate;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::analysis::{classify_margins, margins, Criterion, Margins, Region};
use crate::error::{Error, Result};
use crate::graph::{is_asymmetric_with, AutConfig};
use crate::model::{sample_pair, ModelParams};
use crate::rng::derive_seed;
use crate::solver::{enumerate_alignments_with, judge_recovery, Outcome, SolveOptions};

pub use config::{parse_axis, parse_sweep_config, AxisValue, GridPoint, SweepConfig};
pub use validate::{
    validate_complement_density, validate_expectation, validate_typicality, validate_wright,
    DensityReport, ExpectationReport, TypicalityReport, WrightReport,
};

pub const CSV_HEADER: [&str; 17] = [
    "n",
    "m",
    "p",
    "trials",
    "master_seed",
    "set_recovery_rate",
    "perm_recovery_rate",
    "multi_copy_rate",
    "trivial_aut_rate",
    "mean_candidate_sets",
    "ach_margin",
    "conv_margin",
    "perm_margin",
    "region_set",
    "region_perm",
    "errors",
    "elapsed_ms",
];

/// Per-trial resource limits and optional statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialCaps {
    /// Stop each search at this many distinct candidate sets. `Some(2)`
    /// suffices for recovery and `X_H >= 2` statistics.
    pub candidate_limit: Option<usize>,
    pub max_nodes: Option<u64>,
    /// Measure `|Aut(H)| == 1` for each trial.
    pub collect_aut: bool,
    pub aut: AutConfig,
}

impl Default for TrialCaps {
    fn default() -> Self {
        TrialCaps {
            candidate_limit: Some(2),
            max_nodes: None,
            collect_aut: true,
            aut: AutConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct TrialRecord {
    outcome: Outcome,
    perm_correct: bool,
    multi_copy: bool,
    candidate_sets: usize,
    trivial_aut: Option<bool>,
}

fn run_trial(params: &ModelParams, seed: u64, caps: &TrialCaps) -> Result<TrialRecord> {
    let pair = sample_pair(params, seed)?;
    let options = SolveOptions {
        max_sets: caps.candidate_limit,
        max_nodes: caps.max_nodes,
    };
    let result = enumerate_alignments_with(pair.base(), pair.anonymized(), &options)?;
    let verdict = judge_recovery(&pair, &result)?;
    let trivial_aut = if caps.collect_aut && params.m() <= caps.aut.cap {
        Some(is_asymmetric_with(pair.anonymized(), &caps.aut)?)
    } else {
        None
    };
    Ok(TrialRecord {
        outcome: verdict.outcome,
        perm_correct: verdict.perm_correct,
        multi_copy: verdict.multi_copy,
        candidate_sets: verdict.candidate_sets,
        trivial_aut,
    })
}

/// Aggregated outcomes at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub params: ModelParams,
    pub trials: u64,
    pub seed: u64,
    /// Trials that failed (e.g. node budget exceeded); excluded from rates.
    pub errors: u64,
    pub correct: u64,
    pub wrong_set: u64,
    pub tie_break_losses: u64,
    pub no_candidate: u64,
    pub perm_correct: u64,
    pub multi_copy: u64,
    pub trivial_aut: u64,
    pub aut_measured: u64,
    pub candidate_sets_total: u64,
    pub margins: Margins,
    pub region_set: Region,
    pub region_perm: Region,
    pub elapsed_ms: Option<u128>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl TrialStats {
    pub fn completed(&self) -> u64 {
        self.trials - self.errors
    }

    pub fn set_recovery_rate(&self) -> Option<f64> {
        ratio(self.correct, self.completed())
    }

    pub fn perm_recovery_rate(&self) -> Option<f64> {
        ratio(self.perm_correct, self.completed())
    }

    /// Empirical `P(X_H >= 2)`.
    pub fn multi_copy_rate(&self) -> Option<f64> {
        ratio(self.multi_copy, self.completed())
    }

    pub fn trivial_aut_rate(&self) -> Option<f64> {
        ratio(self.trivial_aut, self.aut_measured)
    }

    /// Mean number of distinct candidate sets (capped at the candidate limit
    /// when one is set).
    pub fn mean_candidate_sets(&self) -> Option<f64> {
        ratio(self.candidate_sets_total, self.completed())
    }

    /// Sum of the per-outcome counts; equals [`completed`](Self::completed).
    pub fn outcome_total(&self) -> u64 {
        self.correct + self.wrong_set + self.tie_break_losses + self.no_candidate
    }
}

/// Runs `trials` independent trials at `params`. Uses the ambient rayon pool.
pub fn run_point(
    params: &ModelParams,
    trials: u64,
    seed: u64,
    caps: &TrialCaps,
) -> Result<TrialStats> {
    run_point_timed(params, trials, seed, caps, false)
}

fn run_point_timed(
    params: &ModelParams,
    trials: u64,
    seed: u64,
    caps: &TrialCaps,
    record_timing: bool,
) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let records: Vec<Result<TrialRecord>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(params, derive_seed(seed, t), caps))
        .collect();

    let mg = margins(params);
    let mut stats = TrialStats {
        params: *params,
        trials,
        seed,
        errors: 0,
        correct: 0,
        wrong_set: 0,
        tie_break_losses: 0,
        no_candidate: 0,
        perm_correct: 0,
        multi_copy: 0,
        trivial_aut: 0,
        aut_measured: 0,
        candidate_sets_total: 0,
        margins: mg,
        region_set: classify_margins(&mg, Criterion::Set).region,
        region_perm: classify_margins(&mg, Criterion::Permutation).region,
        elapsed_ms: None,
    };
    for record in records {
        let r = match record {
            Ok(r) => r,
            Err(e) if e.is_cap() => {
                stats.errors += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match r.outcome {
            Outcome::Correct => stats.correct += 1,
            Outcome::WrongSet => stats.wrong_set += 1,
            Outcome::TieBreakLoss => stats.tie_break_losses += 1,
            Outcome::NoCandidate => stats.no_candidate += 1,
        }
        stats.perm_correct += u64::from(r.perm_correct);
        stats.multi_copy += u64::from(r.multi_copy);
        stats.candidate_sets_total += r.candidate_sets as u64;
        if let Some(trivial) = r.trivial_aut {
            stats.aut_measured += 1;
            stats.trivial_aut += u64::from(trivial);
        }
    }
    if record_timing {
        stats.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(stats)
}

/// A full campaign description.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub points: Vec<GridPoint>,
    pub trials_per_point: u64,
    pub master_seed: u64,
    pub caps: TrialCaps,
    /// Worker threads; 0 means rayon's default.
    pub workers: usize,
    /// Fill `elapsed_ms`. Off by default since it breaks byte-identical output.
    pub record_timing: bool,
}

impl SweepSpec {
    pub fn new(points: Vec<GridPoint>, trials_per_point: u64, master_seed: u64) -> Self {
        SweepSpec {
            points,
            trials_per_point,
            master_seed,
            caps: TrialCaps::default(),
            workers: 0,
            record_timing: false,
        }
    }
}

/// One CSV row: statistics, or the reason the point could not run.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepRow {
    Stats(TrialStats),
    Failed { point: GridPoint, message: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    if spec.trials_per_point == 0 {
        return Err(Error::InvalidParams(
            "trials_per_point must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        spec.points
            .par_iter()
            .enumerate()
            .map(|(i, point)| {
                let seed = derive_seed(spec.master_seed, i as u64);
                let outcome = ModelParams::new(point.n, point.m, point.p).and_then(|params| {
                    run_point_timed(
                        &params,
                        spec.trials_per_point,
                        seed,
                        &spec.caps,
                        spec.record_timing,
                    )
                });
                match outcome {
                    Ok(stats) => SweepRow::Stats(stats),
                    Err(e) => SweepRow::Failed {
                        point: *point,
                        message: e.to_string(),
                    },
                }
            })
            .collect()
    });
    Ok(SweepReport {
        spec: spec.clone(),
        rows,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl SweepReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        let seed = self.spec.master_seed.to_string();
        for row in &self.rows {
            let record: Vec<String> = match row {
                SweepRow::Stats(s) => vec![
                    s.params.n().to_string(),
                    s.params.m().to_string(),
                    s.params.p().to_string(),
                    s.trials.to_string(),
                    seed.clone(),
                    opt(s.set_recovery_rate()),
                    opt(s.perm_recovery_rate()),
                    opt(s.multi_copy_rate()),
                    opt(s.trivial_aut_rate()),
                    opt(s.mean_candidate_sets()),
                    s.margins.ach.to_string(),
                    s.margins.conv.to_string(),
                    s.margins.perm.to_string(),
                    s.region_set.to_string(),
                    s.region_perm.to_string(),
                    s.errors.to_string(),
                    s.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
                ],
                SweepRow::Failed { point, .. } => {
                    let mut r = vec![
                        point.n.to_string(),
                        point.m.to_string(),
                        point.p.to_string(),
                        self.spec.trials_per_point.to_string(),
                        seed.clone(),
                    ];
                    r.extend(std::iter::repeat_n(String::new(), 10));
                    r.push(self.spec.trials_per_point.to_string());
                    r.push(String::new());
                    r
                }
            };
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// `key=value` description of the run: tool version, spec, point errors.
    pub fn manifest(&self) -> String {
        let spec = &self.spec;
        let mut out = String::new();
        let fmt_opt = |x: Option<String>| x.unwrap_or_else(|| "none".into());
        writeln!(out, "tool=subalign").unwrap();
        writeln!(out, "version={}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(out, "master_seed={}", spec.master_seed).unwrap();
        writeln!(out, "trials={}", spec.trials_per_point).unwrap();
        writeln!(out, "workers={}", spec.workers).unwrap();
        writeln!(
            out,
            "candidate_limit={}",
            fmt_opt(spec.caps.candidate_limit.map(|v| v.to_string()))
        )
        .unwrap();
        writeln!(
            out,
            "max_nodes={}",
            fmt_opt(spec.caps.max_nodes.map(|v| v.to_string()))
        )
        .unwrap();
        writeln!(out, "collect_aut={}", spec.caps.collect_aut).unwrap();
        writeln!(out, "aut_direct_max={}", spec.caps.aut.direct_max).unwrap();
        writeln!(out, "aut_cap={}", spec.caps.aut.cap).unwrap();
        writeln!(out, "timing={}", spec.record_timing).unwrap();
        for p in &spec.points {
            writeln!(out, "point={},{},{}", p.n, p.m, p.p).unwrap();
        }
        for row in &self.rows {
            if let SweepRow::Failed { point, message } = row {
                writeln!(
                    out,
                    "point_error={},{},{}: {}",
                    point.n, point.m, point.p, message
                )
                .unwrap();
            }
        }
        out
    }

    /// Writes the CSV to `path` and the manifest next to it as
    /// `<path>.manifest`. Returns the manifest path.
    pub fn write_files(&self, path: impl AsRef<Path>) -> Result<PathBuf> {
        let path = path.as_ref();
        self.write_csv(std::fs::File::create(path)?)?;
        let mut manifest = path.as_os_str().to_owned();
        manifest.push(".manifest");
        let manifest = PathBuf::from(manifest);
        std::fs::write(&manifest, self.manifest())?;
        Ok(manifest)
    }
}

/// Normal-approximation standard error of a proportion.
pub fn proportion_std_error(rate: f64, trials: u64) -> f64 {
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(n: usize, m: usize, p: f64) -> GridPoint {
        GridPoint { n, m, p }
    }

    #[test]
    fn empty_grid_is_header_only() {
        let report = run_sweep(&SweepSpec::new(vec![], 5, 1)).unwrap();
        assert_eq!(
            report.to_csv_string().unwrap(),
            format!("{}\n", CSV_HEADER.join(","))
        );
    }

    #[test]
    fn invalid_point_becomes_error_row() {
        let spec = SweepSpec::new(vec![point(5, 5, 0.5), point(6, 2, 0.5)], 10, 3);
        let report = run_sweep(&spec).unwrap();
        let csv = report.to_csv_string().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "5,5,0.5,10,3,,,,,,,,,,,10,");
        assert!(matches!(report.rows[1], SweepRow::Stats(_)));
        assert!(report
            .manifest()
            .contains("point_error=5,5,0.5: invalid model parameters"));
    }

    #[test]
    fn rates_are_consistent() {
        let params = ModelParams::new(8, 3, 0.3).unwrap();
        let s = run_point(&params, 300, 9, &TrialCaps::default()).unwrap();
        assert_eq!(s.outcome_total(), s.completed());
        assert!(s.perm_recovery_rate().unwrap() <= s.set_recovery_rate().unwrap());
        for r in [
            s.set_recovery_rate(),
            s.multi_copy_rate(),
            s.trivial_aut_rate(),
        ] {
            let r = r.unwrap();
            assert!((0.0..=1.0).contains(&r));
        }
        assert_eq!(s.wrong_set, 0);
        assert_eq!(s.no_candidate, 0);
    }

    #[test]
    fn node_budget_errors_are_counted() {
        let params = ModelParams::new(10, 5, 0.0).unwrap();
        let caps = TrialCaps {
            max_nodes: Some(3),
            ..TrialCaps::default()
        };
        let s = run_point(&params, 20, 1, &caps).unwrap();
        assert_eq!(s.errors, 20);
        assert_eq!(s.set_recovery_rate(), None);
    }

    #[test]
    fn zero_trials_rejected() {
        let params = ModelParams::new(5, 2, 0.5).unwrap();
        assert!(run_point(&params, 0, 1, &TrialCaps::default()).is_err());
    }

    #[test]
    fn files_written() {
        let dir = tempfile::tempdir().unwrap();
        let report = run_sweep(&SweepSpec::new(vec![point(6, 2, 0.5)], 20, 4)).unwrap();
        let csv_path = dir.path().join("sweep.csv");
        let manifest = report.write_files(&csv_path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&csv_path).unwrap(),
            report.to_csv_string().unwrap()
        );
        let text = std::fs::read_to_string(manifest).unwrap();
        assert!(text.contains(&format!("version={}", env!("CARGO_PKG_VERSION"))));
    }
}
