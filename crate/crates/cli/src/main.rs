//! `mf1`: compare the two macro-F1 formulas from the command line.
//!
//! Confusion matrices are always read row-major with rows = predicted class
//! and columns = gold class.

mod labels;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use mf1_core::simulation::{
    csv, run_trials, sweep_grid, ClassifierSpec, ExperimentConfig, SweepMode, SweepSpec,
};
use mf1_core::{extremal_matrix, macro_report, supremum_bound, ConfusionMatrix};

#[derive(Debug, Parser)]
#[command(name = "mf1", version, about = "Averaged F1 vs. F1 of averages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score an n x n confusion matrix given row-major (rows = predicted, columns = gold).
    Matrix {
        n: usize,
        #[arg(allow_negative_numbers = true, required = true)]
        cells: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Score gold/predicted label files.
    Eval {
        /// One gold label per line.
        #[arg(long, requires = "pred", conflicts_with = "tsv")]
        gold: Option<PathBuf>,
        /// One predicted label per line, aligned with --gold.
        #[arg(long, requires = "gold", conflicts_with = "tsv")]
        pred: Option<PathBuf>,
        /// Two columns per line: gold<TAB>predicted.
        #[arg(long, required_unless_present = "gold")]
        tsv: Option<PathBuf>,
        /// Fix the label vocabulary (comma separated); other labels are rejected.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Least upper bound of the gap for n classes.
    Bound {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the near-extremal matrix for n classes and skew z, with its scores.
    Extremal {
        n: usize,
        z: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded simulation and write CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Experiment {
    /// Repeated trials with a uniform random classifier.
    Fig1,
    /// Accuracy x label-distribution skew grid.
    SweepLabels,
    /// Accuracy x error-distribution skew grid (balanced labels).
    SweepErrors,
}

#[derive(Debug, clap::Args)]
struct SimulateArgs {
    experiment: Experiment,
    /// Class count [fig1: 2, sweeps: 4].
    #[arg(long)]
    n: Option<usize>,
    /// Samples per dataset [fig1: 1000, sweeps: 2000].
    #[arg(long)]
    size: Option<usize>,
    /// Trials (fig1) or trials per grid cell (sweeps) [1000 / 5].
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Label distribution for fig1, comma separated [0.95,0.05 for n=2, else uniform].
    #[arg(long, value_delimiter = ',')]
    dist: Option<Vec<f64>>,
    /// Sweep grid as XxY [21x21].
    #[arg(long)]
    grid: Option<String>,
    /// CSV destination; stdout when absent (the summary then goes to stderr).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cmd_matrix(n: usize, cells: &[i64], json: bool) -> Result<()> {
    if n == 0 {
        usage_error(ErrorKind::InvalidValue, "class count must be at least 1");
    }
    if cells.len() != n * n {
        usage_error(
            ErrorKind::WrongNumberOfValues,
            format!("expected {} cells for a {n}x{n} matrix, got {}", n * n, cells.len()),
        );
    }
    let cells = cells
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            u64::try_from(c)
                .map_err(|_| anyhow::anyhow!("cell ({}, {}) is negative: {c}", k / n, k % n))
        })
        .collect::<Result<Vec<_>>>()?;
    let cm = ConfusionMatrix::from_row_major(n, cells)?;
    let report = macro_report(&cm);
    if json {
        emit_json(&render::MatrixJson { matrix: &cm, report })
    } else {
        print!("{}", render::report_lines(&report));
        Ok(())
    }
}

fn cmd_eval(
    gold: Option<PathBuf>,
    pred: Option<PathBuf>,
    tsv: Option<PathBuf>,
    vocab: Option<Vec<String>>,
    json: bool,
) -> Result<()> {
    let samples = match (gold, pred, tsv) {
        (Some(g), Some(p), None) => labels::from_two_files(&g, &p, vocab.as_deref())?,
        (None, None, Some(t)) => labels::from_tsv(&t, vocab.as_deref())?,
        _ => usage_error(ErrorKind::MissingRequiredArgument, "give --gold and --pred, or --tsv"),
    };
    if samples.is_empty() {
        eprintln!("warning: no samples; every score is 0");
    }
    let cm = samples.confusion_matrix();
    let report = cm.as_ref().map(macro_report).unwrap_or_default();
    let classes = render::class_rows(&samples, cm.as_ref());
    if json {
        emit_json(&render::EvalJson {
            samples: samples.gold.len(),
            classes,
            report,
        })
    } else {
        print!("{}", render::class_table(&classes));
        print!("{}", render::report_lines(&report));
        Ok(())
    }
}

fn cmd_bound(n: usize, json: bool) -> Result<()> {
    let bound = supremum_bound(n)?;
    if json {
        emit_json(&serde_json::json!({ "n": n, "supremum": bound }))
    } else {
        println!("{}", render::num(bound));
        Ok(())
    }
}

fn cmd_extremal(n: usize, z: u64, json: bool) -> Result<()> {
    let cm = extremal_matrix(n, z)?;
    let report = macro_report(&cm);
    if json {
        emit_json(&render::MatrixJson { matrix: &cm, report })
    } else {
        print!("{}", render::matrix_block(&cm));
        print!("{}", render::report_lines(&report));
        println!("supremum: {}", render::num(supremum_bound(n)?));
        Ok(())
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let (x, y) = s
        .split_once(['x', 'X'])
        .with_context(|| format!("grid {s:?} is not of the form XxY"))?;
    let x: usize = x.trim().parse().with_context(|| format!("bad grid width in {s:?}"))?;
    let y: usize = y.trim().parse().with_context(|| format!("bad grid height in {s:?}"))?;
    if x == 0 || y == 0 {
        bail!("grid dimensions must be positive");
    }
    Ok((x, y))
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let mut csv_buf = Vec::new();
    let summary = match args.experiment {
        Experiment::Fig1 => {
            if args.grid.is_some() {
                bail!("--grid applies to sweeps only");
            }
            let mut cfg = ExperimentConfig::binary_imbalanced(args.seed);
            cfg.n = args.n.unwrap_or(2);
            cfg.class_distribution = match (args.dist, cfg.n) {
                (Some(d), _) => d,
                (None, 2) => cfg.class_distribution,
                (None, n) => vec![1.0 / n as f64; n],
            };
            cfg.dataset_size = args.size.unwrap_or(cfg.dataset_size);
            cfg.trials = args.trials.unwrap_or(cfg.trials);
            cfg.classifier = ClassifierSpec::UniformRandom;
            let stats = run_trials(&cfg)?;
            csv::write_trials(&mut csv_buf, &stats)?;
            render::trial_summary(&cfg, &stats)
        }
        Experiment::SweepLabels | Experiment::SweepErrors => {
            if args.dist.is_some() {
                bail!("--dist applies to fig1 only");
            }
            let mode = match args.experiment {
                Experiment::SweepLabels => SweepMode::LabelSkew,
                _ => SweepMode::ErrorSkew,
            };
            let (gx, gy) = match &args.grid {
                Some(g) => parse_grid(g)?,
                None => (SweepSpec::DEFAULT_GRID, SweepSpec::DEFAULT_GRID),
            };
            let mut spec = SweepSpec::grid(args.n.unwrap_or(4), mode, gx, gy, args.seed);
            spec.dataset_size = args.size.unwrap_or(spec.dataset_size);
            spec.trials_per_cell = args.trials.unwrap_or(spec.trials_per_cell);
            let res = sweep_grid(&spec)?;
            csv::write_sweep(&mut csv_buf, &res)?;
            render::sweep_summary(&spec, &res)
        }
    };
    match &args.out {
        Some(path) => {
            let mut f = BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            );
            f.write_all(&csv_buf)?;
            f.flush()?;
            println!("{summary}");
        }
        None => {
            io::stdout().write_all(&csv_buf)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Matrix { n, cells, json } => cmd_matrix(n, &cells, json),
        Command::Eval {
            gold,
            pred,
            tsv,
            labels,
            json,
        } => cmd_eval(gold, pred, tsv, labels, json),
        Command::Bound { n, json } => cmd_bound(n, json),
        Command::Extremal { n, z, json } => cmd_extremal(n, z, json),
        Command::Simulate(args) => match args.threads {
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build()?;
                pool.install(|| cmd_simulate(args))
            }
            None => cmd_simulate(args),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
