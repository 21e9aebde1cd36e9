//! The `subalign` command line.
//!
//! Exit codes: 0 success, 1 domain error (or an invalid pair / failed
//! validation), 2 I/O, parse or usage error, 3 resource cap exceeded. Errors
//! are one line on stderr, prefixed `error: `.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    atypicality_bound, classify_margins, converse_advisory, converse_entropy_gap, default_epsilon,
    margin_gap, margins, structural_entropy_bounds, Criterion,
};
use crate::error::{Error, Result};
use crate::experiments::{
    parse_axis, parse_sweep_config, run_sweep, validate_complement_density, validate_expectation,
    validate_typicality, validate_wright, GridPoint, SweepConfig, TrialCaps,
};
use crate::graph::edgelist::parse_edge_list;
use crate::graph::{aut_count, count_relabelings, Graph, VertexBijection};
use crate::model::bundle::{format_bundle, parse_bundle};
use crate::model::{sample_pair, verify_pair, ModelParams, SubgraphPair};
use crate::solver::{
    count_induced_copies, count_induced_copies_with_witnesses, enumerate_alignments_with,
    judge_recovery, SolveOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "subalign",
    version,
    about = "Subgraph alignment in Erdős–Rényi graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Human,
    Csv,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.m, self.p)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a subgraph pair and print it as a bundle.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Omit to draw a seed; it is then printed as `# seed=<u64>` first.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the bundle here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every alignment of the pattern into the host.
    Solve {
        /// Host graph: edge-list file or shape (K5, P4, C6, E3).
        #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
        host: Option<String>,
        /// Anonymized graph: edge-list file or shape.
        #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
        pattern: Option<String>,
        /// Bundle from `gen`; also prints the recovery verdict.
        #[arg(long)]
        pair: Option<PathBuf>,
        /// Stop after this many distinct vertex sets.
        #[arg(long)]
        limit: Option<usize>,
        /// Abort (exit 3) after this many search nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Count induced copies of a pattern in a host.
    Count {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        /// Also list each copy's vertex set.
        #[arg(long)]
        witnesses: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Automorphism group order and number of distinct labelings.
    Aut {
        /// Edge-list file or shape.
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check that a bundle's anonymized graph matches its base graph.
    Verify {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Achievability, converse and permutation margins.
    Margins {
        #[command(flatten)]
        params: ParamArgs,
        /// Replace p by min(p, 1-p) first.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Margins and region labels over a grid. Axes take lists and
    /// `start:stop:step` ranges.
    Region {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Entropy quantities and the typicality bound.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        /// Typicality tolerance; defaults to (m sqrt(p))^(-1/2).
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Monte Carlo recovery sweep writing CSV and a manifest.
    Sweep(SweepArgs),
    /// Monte Carlo checks of closed-form predictions.
    Validate {
        #[command(subcommand)]
        check: ValidateCommand,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Flat `key = value` file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Candidate-set limit per search; `none` enumerates everything.
    #[arg(long)]
    candidate_limit: Option<String>,
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Fill the elapsed_ms column (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    /// CSV path; the manifest goes to `<out>.manifest`. Omit for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ValidateCommand {
    /// Empirical mean of X_H against its expectation.
    Expectation {
        #[arg(long)]
        n: usize,
        /// Edge-list file or shape.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rate of trivial automorphism groups in ER(m, p).
    Wright {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Atypicality rate against the Chernoff bound.
    Typicality {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Complement edge density against 1 - p.
    Density {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Runs the CLI with stdout/stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against arbitrary writers and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            e.exit_code()
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn shape(spec: &str) -> Option<Result<Graph>> {
    let kind = spec.chars().next()?;
    let order: usize = spec.get(1..)?.parse().ok()?;
    Some(match kind {
        'K' => Graph::complete(order),
        'P' => Graph::path(order),
        'C' => Graph::cycle(order),
        'E' => Graph::empty(order),
        _ => return None,
    })
}

/// An existing file wins over a shape name.
fn load_graph(spec: &str) -> Result<Graph> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(g) = shape(spec) {
            return g;
        }
    }
    parse_edge_list(&read_text(path)?)
}

fn resolve_seed(seed: Option<u64>, out: &mut dyn Write) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            let s = rand::random::<u64>();
            writeln!(out, "# seed={s}")?;
            Ok(s)
        }
    }
}

fn one_based(ids: &[usize]) -> String {
    let items: Vec<String> = ids.iter().map(|v| (v + 1).to_string()).collect();
    format!("[{}]", items.join(","))
}

fn alignment_line(b: &VertexBijection) -> String {
    format!("S={} sigma={}", one_based(b.domain()), one_based(b.image()))
}

fn emit(out: &mut dyn Write, format: Format, fields: &[(&str, String)]) -> Result<()> {
    match format {
        Format::Human => {
            for (k, v) in fields {
                writeln!(out, "{k}={v}")?;
            }
        }
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            writeln!(out, "{}", header.join(","))?;
            let row: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(out, "{}", row.join(","))?;
        }
    }
    Ok(())
}

fn emit_table(
    out: &mut dyn Write,
    format: Format,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    let sep = match format {
        Format::Human => "\t",
        Format::Csv => ",",
    };
    writeln!(out, "{}", header.join(sep))?;
    for row in rows {
        writeln!(out, "{}", row.join(sep))?;
    }
    Ok(())
}

fn maybe_normalize(params: ModelParams, normalize: bool) -> (ModelParams, bool) {
    if normalize {
        params.normalized()
    } else {
        (params, false)
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen {
            params,
            seed,
            out: path,
        } => {
            let params = params.params()?;
            let seed = resolve_seed(seed, out)?;
            let bundle = format_bundle(&sample_pair(&params, seed)?);
            match path {
                Some(path) => std::fs::write(&path, bundle).map_err(|e| {
                    Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
                })?,
                None => write!(out, "{bundle}")?,
            }
        }
        Command::Solve {
            host,
            pattern,
            pair,
            limit,
            max_nodes,
        } => {
            let pair: Option<SubgraphPair> =
                pair.map(|p| parse_bundle(&read_text(&p)?)).transpose()?;
            let (g, h) = match &pair {
                Some(pair) => (pair.base().clone(), pair.anonymized().clone()),
                None => (
                    load_graph(host.as_deref().expect("required by clap"))?,
                    load_graph(pattern.as_deref().expect("required by clap"))?,
                ),
            };
            let options = SolveOptions {
                max_sets: limit,
                max_nodes,
            };
            let result = enumerate_alignments_with(&g, &h, &options)?;
            for c in result.candidates() {
                writeln!(out, "{}", alignment_line(c.bijection()))?;
            }
            let stats = result.stats();
            let selected = result
                .selected()
                .map(|c| {
                    format!(
                        " selected_S={} selected_sigma={}",
                        one_based(c.set()),
                        one_based(c.bijection().image())
                    )
                })
                .unwrap_or_default();
            writeln!(
                out,
                "# summary candidates={} distinct_sets={} truncated={}{} nodes_expanded={} degree_prunes={} consistency_prunes={}",
                result.candidates().len(),
                result.distinct_sets().len(),
                result.truncated(),
                selected,
                stats.nodes_expanded,
                stats.degree_prunes,
                stats.consistency_prunes,
            )?;
            if let Some(pair) = pair {
                let v = judge_recovery(&pair, &result)?;
                writeln!(
                    out,
                    "# verdict outcome={} set_correct={} perm_correct={} set_unique={} multi_copy={}",
                    v.outcome.as_str(), v.set_correct, v.perm_correct, v.set_unique, v.multi_copy
                )?;
            }
        }
        Command::Count {
            host,
            pattern,
            witnesses,
            format,
        } => {
            let (g, h) = (load_graph(&host)?, load_graph(&pattern)?);
            if witnesses {
                let count = count_induced_copies_with_witnesses(&g, &h)?;
                emit(out, format, &[("count", count.value.to_string())])?;
                for w in count.witnesses.unwrap_or_default() {
                    writeln!(out, "S={}", one_based(&w))?;
                }
            } else {
                emit(
                    out,
                    format,
                    &[("count", count_induced_copies(&g, &h)?.value.to_string())],
                )?;
            }
        }
        Command::Aut { graph, format } => {
            let g = load_graph(&graph)?;
            emit(
                out,
                format,
                &[
                    ("order", g.order().to_string()),
                    ("edges", g.edge_count().to_string()),
                    ("aut", aut_count(&g)?.to_string()),
                    ("relabelings", count_relabelings(&g)?.to_string()),
                ],
            )?;
        }
        Command::Verify { pair } => {
            let pair = parse_bundle(&read_text(&pair)?)?;
            if verify_pair(&pair) {
                writeln!(out, "valid")?;
            } else {
                writeln!(out, "invalid")?;
                return Ok(1);
            }
        }
        Command::Margins {
            params,
            normalize,
            format,
        } => {
            let (params, flipped) = maybe_normalize(params.params()?, normalize);
            let mg = margins(&params);
            emit(
                out,
                format,
                &[
                    ("n", params.n().to_string()),
                    ("m", params.m().to_string()),
                    ("p", params.p().to_string()),
                    ("complemented", flipped.to_string()),
                    ("ach", mg.ach.to_string()),
                    ("conv", mg.conv.to_string()),
                    ("perm", mg.perm.to_string()),
                ],
            )?;
        }
        Command::Region {
            n,
            m,
            p,
            normalize,
            format,
        } => {
            let (ns, ms, ps) = (
                parse_axis::<usize>(&n)?,
                parse_axis::<usize>(&m)?,
                parse_axis::<f64>(&p)?,
            );
            let mut rows = Vec::new();
            for &n in &ns {
                for &m in &ms {
                    for &p in &ps {
                        let (params, flipped) =
                            maybe_normalize(ModelParams::new(n, m, p)?, normalize);
                        let mg = margins(&params);
                        let adv = converse_advisory(&params);
                        rows.push(vec![
                            n.to_string(),
                            m.to_string(),
                            params.p().to_string(),
                            flipped.to_string(),
                            mg.ach.to_string(),
                            mg.conv.to_string(),
                            mg.perm.to_string(),
                            classify_margins(&mg, Criterion::Set).region.to_string(),
                            classify_margins(&mg, Criterion::Permutation)
                                .region
                                .to_string(),
                            adv.log_ratio.to_string(),
                            adv.perm_margin_positive.to_string(),
                        ]);
                    }
                }
            }
            let header = [
                "n",
                "m",
                "p",
                "complemented",
                "ach_margin",
                "conv_margin",
                "perm_margin",
                "region_set",
                "region_perm",
                "log_m_over_log_n",
                "perm_margin_positive",
            ];
            emit_table(out, format, &header, &rows)?;
        }
        Command::Bounds {
            params,
            eps,
            normalize,
            format,
        } => {
            let (params, flipped) = maybe_normalize(params.params()?, normalize);
            let (n, m, p) = (params.n(), params.m(), params.p());
            let se = structural_entropy_bounds(n, p)?;
            let gap = converse_entropy_gap(&params);
            let mgap = margin_gap(&params).ok();
            let eps = eps.unwrap_or_else(|| default_epsilon(m, p));
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            emit(
                out,
                format,
                &[
                    ("n", n.to_string()),
                    ("m", m.to_string()),
                    ("p", p.to_string()),
                    ("complemented", flipped.to_string()),
                    ("structural_upper", se.upper.to_string()),
                    ("structural_asymptotic", se.asymptotic.to_string()),
                    ("structural_valid", se.asymptotic_valid.to_string()),
                    ("subgraph_info", gap.subgraph_info.to_string()),
                    ("source_entropy_lb", gap.source_entropy_lb.to_string()),
                    ("source_entropy_exact", gap.source_entropy_exact.to_string()),
                    ("converse_infeasible", gap.infeasible.to_string()),
                    ("ach_gap", opt(mgap.map(|g| g.ach_gap))),
                    ("old_ach", opt(mgap.map(|g| g.old_ach))),
                    ("eps", eps.to_string()),
                    (
                        "atypicality_bound",
                        atypicality_bound(m, p, eps).to_string(),
                    ),
                ],
            )?;
        }
        Command::Sweep(args) => return sweep(args, out),
        Command::Validate { check } => return validate(check, out),
    }
    Ok(0)
}

fn sweep(args: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = match &args.config {
        Some(path) => parse_sweep_config(&read_text(path)?)?,
        None => SweepConfig {
            points: Vec::new(),
            trials: 0,
            seed: None,
            caps: TrialCaps::default(),
            workers: None,
            timing: false,
        },
    };
    match (&args.n, &args.m, &args.p) {
        (Some(n), Some(m), Some(p)) => {
            let (ns, ms, ps) = (
                parse_axis::<usize>(n)?,
                parse_axis::<usize>(m)?,
                parse_axis::<f64>(p)?,
            );
            config.points.clear();
            for &n in &ns {
                for &m in &ms {
                    for &p in &ps {
                        config.points.push(GridPoint { n, m, p });
                    }
                }
            }
        }
        (None, None, None) => {}
        _ => {
            return Err(Error::InvalidParams(
                "--n, --m and --p must be given together".into(),
            ))
        }
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if config.trials == 0 {
        return Err(Error::InvalidParams(
            "trials must be given and at least 1".into(),
        ));
    }
    if let Some(w) = args.workers {
        config.workers = Some(w);
    }
    if let Some(limit) = &args.candidate_limit {
        config.caps.candidate_limit = match limit.as_str() {
            "none" => None,
            s => Some(
                s.parse()
                    .map_err(|_| Error::InvalidParams(format!("bad candidate limit {s:?}")))?,
            ),
        };
    }
    if args.max_nodes.is_some() {
        config.caps.max_nodes = args.max_nodes;
    }
    config.timing |= args.timing;
    let seed = resolve_seed(args.seed.or(config.seed), out)?;
    let report = run_sweep(&config.into_spec(seed))?;
    match args.out {
        Some(path) => {
            let manifest = report.write_files(&path)?;
            writeln!(out, "wrote {} and {}", path.display(), manifest.display())?;
        }
        None => report.write_csv(&mut *out)?,
    }
    Ok(0)
}

fn validate(check: ValidateCommand, out: &mut dyn Write) -> Result<i32> {
    let pass = match check {
        ValidateCommand::Expectation {
            n,
            pattern,
            p,
            trials,
            seed,
            format,
        } => {
            let h = load_graph(&pattern)?;
            let seed = resolve_seed(seed, out)?;
            let r = validate_expectation(n, &h, p, trials, seed)?;
            emit(
                out,
                format,
                &[
                    ("n", r.n.to_string()),
                    ("pattern", pattern),
                    ("p", r.p.to_string()),
                    ("trials", r.trials.to_string()),
                    ("seed", seed.to_string()),
                    ("expected", r.expected.to_string()),
                    ("mean", r.mean.to_string()),
                    ("std_err", r.std_err.to_string()),
                    ("z", r.z_score().to_string()),
                    ("pass", r.pass.to_string()),
                ],
            )?;
            r.pass
        }
        ValidateCommand::Wright {
            m,
            p,
            trials,
            seed,
            format,
        } => {
            let seed = resolve_seed(seed, out)?;
            let r = validate_wright(m, p, trials, seed)?;
            emit(
                out,
                format,
                &[
                    ("m", r.m.to_string()),
                    ("p", r.p.to_string()),
                    ("trials", r.trials.to_string()),
                    ("seed", seed.to_string()),
                    ("trivial", r.trivial.to_string()),
                    ("rate", r.rate.to_string()),
                    ("ci_half_width", r.ci_half_width.to_string()),
                    ("margin", r.margin.to_string()),
                ],
            )?;
            true
        }
        ValidateCommand::Typicality {
            m,
            p,
            eps,
            trials,
            seed,
            format,
        } => {
            let seed = resolve_seed(seed, out)?;
            let r = validate_typicality(m, p, eps, trials, seed)?;
            emit(
                out,
                format,
                &[
                    ("m", r.m.to_string()),
                    ("p", r.p.to_string()),
                    ("eps", r.eps.to_string()),
                    ("trials", r.trials.to_string()),
                    ("seed", seed.to_string()),
                    ("atypical", r.atypical.to_string()),
                    ("rate", r.rate.to_string()),
                    ("std_err", r.std_err.to_string()),
                    ("bound", r.bound.to_string()),
                    ("pass", r.pass.to_string()),
                ],
            )?;
            r.pass
        }
        ValidateCommand::Density {
            n,
            p,
            trials,
            seed,
            format,
        } => {
            let seed = resolve_seed(seed, out)?;
            let r = validate_complement_density(n, p, trials, seed)?;
            emit(
                out,
                format,
                &[
                    ("n", r.n.to_string()),
                    ("p", r.p.to_string()),
                    ("trials", r.trials.to_string()),
                    ("seed", seed.to_string()),
                    ("mean", r.mean.to_string()),
                    ("std_err", r.std_err.to_string()),
                    ("expected", r.expected.to_string()),
                    ("pass", r.pass.to_string()),
                ],
            )?;
            r.pass
        }
    };
    Ok(if pass { 0 } else { 1 })
}
