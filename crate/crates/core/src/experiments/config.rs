//! Flat `key = value` sweep configuration.
//!
//! ```text
//! # grid as a product of axes
//! n = 12
//! m = 3,6:10:2
//! p = 0.05:0.5:0.05
//! # or explicit points (repeatable), not mixed with axes
//! point = 12,10,0.5
//! trials = 1000
//! seed = 42
//! candidate_limit = 2      # or none
//! max_nodes = 1000000      # or none
//! collect_aut = true
//! timing = false
//! workers = 4
//! ```

use std::str::FromStr;

use super::{SweepSpec, TrialCaps};
use crate::error::{Error, Result};

/// One `(n, m, p)` grid point, not yet validated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub n: usize,
    pub m: usize,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub points: Vec<GridPoint>,
    pub trials: u64,
    pub seed: Option<u64>,
    pub caps: TrialCaps,
    pub workers: Option<usize>,
    pub timing: bool,
}

impl SweepConfig {
    pub fn into_spec(self, master_seed: u64) -> SweepSpec {
        SweepSpec {
            points: self.points,
            trials_per_point: self.trials,
            master_seed,
            caps: self.caps,
            workers: self.workers.unwrap_or(0),
            record_timing: self.timing,
        }
    }
}

/// Element type of a grid axis.
pub trait AxisValue: Copy + FromStr {
    fn steps(start: Self, stop: Self, step: Self) -> Option<Vec<Self>>;
}

impl AxisValue for usize {
    fn steps(start: usize, stop: usize, step: usize) -> Option<Vec<usize>> {
        (step > 0).then(|| (start..=stop).step_by(step).collect())
    }
}

impl AxisValue for f64 {
    fn steps(start: f64, stop: f64, step: f64) -> Option<Vec<f64>> {
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
            return None;
        }
        let count = ((stop - start) / step + 1e-9).floor();
        if count < 0.0 {
            return Some(Vec::new());
        }
        Some(
            (0..=count as u64)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect(),
        )
    }
}

fn axis<T: AxisValue>(text: &str) -> std::result::Result<Vec<T>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let parse = |s: &str| {
            s.trim()
                .parse::<T>()
                .map_err(|_| format!("bad axis value {s:?}"))
        };
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse(v)?),
            [a, b, c] => out.extend(
                T::steps(parse(a)?, parse(b)?, parse(c)?)
                    .ok_or_else(|| format!("bad range {item:?}"))?,
            ),
            _ => return Err(format!("bad axis item {item:?}")),
        }
    }
    Ok(out)
}

/// Parses a comma list whose items are values or inclusive `start:stop:step`
/// ranges, e.g. `0.1,0.2:0.4:0.1`.
pub fn parse_axis<T: AxisValue>(text: &str) -> Result<Vec<T>> {
    axis::<T>(text).map_err(|msg| Error::parse(0, msg))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn parse_optional<T: FromStr>(s: &str) -> Option<Option<T>> {
    if s == "none" {
        Some(None)
    } else {
        s.parse().ok().map(Some)
    }
}

pub fn parse_sweep_config(text: &str) -> Result<SweepConfig> {
    let mut ns: Option<Vec<usize>> = None;
    let mut ms: Option<Vec<usize>> = None;
    let mut ps: Option<Vec<f64>> = None;
    let mut points = Vec::new();
    let mut trials = None;
    let mut config = SweepConfig {
        points: Vec::new(),
        trials: 0,
        seed: None,
        caps: TrialCaps::default(),
        workers: None,
        timing: false,
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || Error::parse(line_no, format!("bad value for {key}: {value:?}"));
        let ax = |msg: String| Error::parse(line_no, msg);
        match key {
            "n" => ns = Some(axis(value).map_err(ax)?),
            "m" => ms = Some(axis(value).map_err(ax)?),
            "p" => ps = Some(axis(value).map_err(ax)?),
            "point" => {
                let f: Vec<&str> = value.split(',').map(str::trim).collect();
                let [n, m, p] = f.as_slice() else {
                    return Err(bad());
                };
                points.push(GridPoint {
                    n: n.parse().map_err(|_| bad())?,
                    m: m.parse().map_err(|_| bad())?,
                    p: p.parse().map_err(|_| bad())?,
                });
            }
            "trials" => trials = Some(value.parse().map_err(|_| bad())?),
            "seed" => config.seed = Some(value.parse().map_err(|_| bad())?),
            "candidate_limit" => {
                config.caps.candidate_limit = parse_optional(value).ok_or_else(bad)?
            }
            "max_nodes" => config.caps.max_nodes = parse_optional(value).ok_or_else(bad)?,
            "collect_aut" => config.caps.collect_aut = parse_bool(value).ok_or_else(bad)?,
            "timing" => config.timing = parse_bool(value).ok_or_else(bad)?,
            "workers" => config.workers = Some(value.parse().map_err(|_| bad())?),
            _ => return Err(Error::parse(line_no, format!("unknown key {key:?}"))),
        }
    }

    let any_axis = ns.is_some() || ms.is_some() || ps.is_some();
    if any_axis && !points.is_empty() {
        return Err(Error::parse(
            0,
            "use either n/m/p axes or point lines, not both",
        ));
    }
    if any_axis {
        let (Some(ns), Some(ms), Some(ps)) = (ns, ms, ps) else {
            return Err(Error::parse(0, "axes n, m and p must all be given"));
        };
        for &n in &ns {
            for &m in &ms {
                for &p in &ps {
                    points.push(GridPoint { n, m, p });
                }
            }
        }
    }
    config.points = points;
    config.trials = trials.ok_or_else(|| Error::parse(0, "missing key trials"))?;
    Ok(config)
}
