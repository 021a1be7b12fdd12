//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p mf1-cli --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mf1_core::corpus::{corpus, CorpusSpec, Family};
use mf1_core::simulation::{run_trials, sweep_grid, ExperimentConfig, SweepMode, SweepSpec};
use mf1_core::{
    averaged_f1, delta_direct, divergence_condition, extremal_matrix, f1_of_averages,
    macro_report, opposing_skew_pair, supremum_bound, ConfusionMatrix,
};

// Tolerances and bands, fixed here for every criterion.
const TABLE1_AVERAGED_F1: (f64, f64) = (0.4857, 1e-4);
const TABLE2_F1_OF_AVERAGES: (f64, f64) = (0.5548, 1e-3);
const TABLE2_AVERAGED_F1: (f64, f64) = (0.479, 1e-3);
const CORPUS_SIZE: usize = 10_000;
const CORPUS_SEED: u64 = 20_260_101;
const THEOREM1_SLACK: f64 = -1e-12;
const LEMMA_TOLERANCE: f64 = 1e-9;
const DIVERGENCE_THRESHOLD: f64 = 1e-9;
const CORPUS_BUDGET: Duration = Duration::from_secs(10);
const EXTREMAL_TOLERANCE: f64 = 1e-5;
const FIG1_RMSD: (f64, f64) = (0.10, 0.16);
const FIG1_PEARSON: (f64, f64) = (0.60, 0.85);
const FIG1_SPEARMAN: (f64, f64) = (0.55, 0.80);
const FIG1_MAX_F1_OF_AVERAGES: (f64, f64) = (0.50, 0.62);
const FIG1_MAX_AVERAGED_F1: (f64, f64) = (0.35, 0.47);
const FIG1_BUDGET: Duration = Duration::from_secs(30);
const LABEL_SKEW_MAX: (f64, f64) = (0.005, 0.035);
const ERROR_SKEW_MAX_N4: (f64, f64) = (0.004, 0.015);
const ERROR_SKEW_MAX_N13: (f64, f64) = (0.008, 0.03);
const GRID_BUDGET: Duration = Duration::from_secs(120);
const SEED: u64 = 42;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(v: f64, (lo, hi): (f64, f64)) -> bool {
    (lo..=hi).contains(&v)
}

fn near(v: f64, (target, tol): (f64, f64)) -> bool {
    (v - target).abs() <= tol
}

fn mf1(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mf1"))
        .args(args)
        .output()
        .expect("run mf1");
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

fn cm(rows: &[&[u64]]) -> ConfusionMatrix {
    ConfusionMatrix::from_rows(rows).unwrap()
}

fn golden_cli() -> Outcome {
    let cases = [
        (
            ["matrix", "2", "100", "10000", "0", "100"],
            "macroF1 benevolent: 0.504950495049505\n\
             macroF1 non-benevolent: 0.0196078431372549\n\
             delta: 0.48534265191225007\n\
             delta calculated: 0.48534265191225007\n",
        ),
        (
            ["matrix", "2", "100", "5000", "5000", "100"],
            "macroF1 benevolent: 0.0196078431372549\n\
             macroF1 non-benevolent: 0.0196078431372549\n\
             delta: 0.0\n\
             delta calculated: 0.0\n",
        ),
    ];
    for (args, expected) in cases {
        let (ok, out) = mf1(&args);
        if !ok || out != expected {
            return Outcome::new(false, format!("`mf1 {}` printed {out:?}", args.join(" ")));
        }
    }
    Outcome::new(true, "both matrices match to the last printed digit")
}

fn golden_tables() -> Outcome {
    let t1 = cm(&[&[5, 10], &[5, 10]]);
    let t2 = cm(&[&[1, 1], &[9, 19]]);
    let (big1, small1) = (f1_of_averages(&t1), averaged_f1(&t1));
    let (big2, small2) = (f1_of_averages(&t2), averaged_f1(&t2));
    let values_ok = big1 == 0.5
        && near(small1, TABLE1_AVERAGED_F1)
        && near(big2, TABLE2_F1_OF_AVERAGES)
        && near(small2, TABLE2_AVERAGED_F1);
    let flip = big2 > big1 && small1 > small2;
    Outcome::new(
        values_ok && flip,
        format!(
            "table 1: F1-of-averages {big1:.4}, averaged F1 {small1:.4}; table 2: {big2:.4}, {small2:.4}; ranking flip {flip}"
        ),
    )
}

fn theorem_suite() -> Outcome {
    let start = Instant::now();
    // cells uniform in 0..=1000, n uniform in 2..=13
    let spec = CorpusSpec {
        families: vec![Family::Dense],
        ..CorpusSpec::default()
    };
    let matrices = corpus(&spec, CORPUS_SEED, CORPUS_SIZE);
    let (mut t1, mut lemma, mut bound, mut t2) = (0, 0, 0, 0);
    let mut t2_zero_diagonal = 0;
    let mut positive_diagonal = 0;
    let mut first_t2 = None;
    for m in &matrices {
        let r = macro_report(m);
        if r.delta_direct < THEOREM1_SLACK {
            t1 += 1;
        }
        if (r.delta_direct - r.delta_closed_form).abs() > LEMMA_TOLERANCE {
            lemma += 1;
        }
        if r.delta_direct >= supremum_bound(m.n()).unwrap() {
            bound += 1;
        }
        let gap = r.delta_direct > DIVERGENCE_THRESHOLD;
        let some_unequal = divergence_condition(m);
        let opposing = opposing_skew_pair(m).is_some();
        if (0..m.n()).all(|i| m.get(i, i) > 0) {
            positive_diagonal += 1;
        }
        if gap != some_unequal || some_unequal != opposing {
            t2 += 1;
            if (0..m.n()).any(|i| m.get(i, i) == 0) {
                t2_zero_diagonal += 1;
            }
            first_t2.get_or_insert_with(|| m.clone());
        }
    }
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{CORPUS_SIZE} matrices in {elapsed:.2?}; violations: theorem 1 {t1}, lemma {lemma}, bound {bound}, theorem 2 {t2}"
    );
    if let Some(m) = first_t2 {
        detail += &format!(
            " ({t2_zero_diagonal} of them have a zero diagonal cell, {} among the {positive_diagonal} positive-diagonal matrices; first: {:?}, gap {:e}, some P != R {}, opposing pair {})",
            t2 - t2_zero_diagonal,
            m.rows().collect::<Vec<_>>(),
            delta_direct(&m),
            divergence_condition(&m),
            opposing_skew_pair(&m).is_some()
        );
    }
    Outcome::new(
        t1 == 0 && lemma == 0 && bound == 0 && t2 == 0 && elapsed < CORPUS_BUDGET,
        detail,
    )
}

fn extremal_convergence() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2usize, 3, 4, 13] {
        let bound = supremum_bound(n).unwrap();
        let deltas: Vec<f64> = (0..=6)
            .map(|k| delta_direct(&extremal_matrix(n, 10u64.pow(k)).unwrap()))
            .collect();
        let monotone = deltas.windows(2).all(|w| w[1] >= w[0]);
        let last = *deltas.last().unwrap();
        let close = (bound - last).abs() <= EXTREMAL_TOLERANCE;
        pass &= monotone && close;
        parts.push(format!("n={n}: {last:.7} vs {bound:.7} monotone={monotone}"));
    }
    Outcome::new(pass, parts.join("; "))
}

fn fig1_reproduction() -> Outcome {
    let start = Instant::now();
    let stats = run_trials(&ExperimentConfig::binary_imbalanced(SEED)).unwrap();
    let elapsed = start.elapsed();
    let pearson = stats.pearson.unwrap_or(f64::NAN);
    let spearman = stats.spearman.unwrap_or(f64::NAN);
    let max_big = stats.max_f1_of_averages();
    let max_small = stats.max_averaged_f1();
    let pass = within(stats.rmsd, FIG1_RMSD)
        && within(pearson, FIG1_PEARSON)
        && within(spearman, FIG1_SPEARMAN)
        && within(max_big, FIG1_MAX_F1_OF_AVERAGES)
        && within(max_small, FIG1_MAX_AVERAGED_F1)
        && elapsed < FIG1_BUDGET;
    Outcome::new(
        pass,
        format!(
            "rmsd {:.4}, pearson {pearson:.4}, spearman {spearman:.4}, max F1-of-averages {max_big:.4}, max averaged F1 {max_small:.4} in {elapsed:.2?}",
            stats.rmsd
        ),
    )
}

fn sweep_reproduction() -> Outcome {
    let cases = [
        (4, SweepMode::LabelSkew, LABEL_SKEW_MAX),
        (13, SweepMode::LabelSkew, LABEL_SKEW_MAX),
        (4, SweepMode::ErrorSkew, ERROR_SKEW_MAX_N4),
        (13, SweepMode::ErrorSkew, ERROR_SKEW_MAX_N13),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, mode, band) in cases {
        let start = Instant::now();
        let res = sweep_grid(&SweepSpec::default_grid(n, mode, SEED)).unwrap();
        let elapsed = start.elapsed();
        let max = res.max_mean_delta_below_perfect();
        let perfect = res.perfect_column();
        let zero_edge = !perfect.is_empty() && perfect.iter().all(|&d| d == 0.0);
        pass &= within(max, band) && zero_edge && elapsed < GRID_BUDGET;
        parts.push(format!(
            "n={n} {mode:?}: max {max:.4} in [{}, {}], x=1 zero {zero_edge}, {elapsed:.2?}",
            band.0, band.1
        ));
    }
    Outcome::new(pass, parts.join("; "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["simulate", "fig1"],
        &["simulate", "sweep-labels", "--n", "4"],
        &["simulate", "sweep-errors", "--n", "13"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for (k, threads) in ["1", "1", "4"].iter().enumerate() {
            let path = dir.path().join(format!("run{k}.csv"));
            let path_str = path.to_str().unwrap();
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--seed", "7", "--threads", threads, "--out", path_str]);
            let (ok, _) = mf1(&full);
            if !ok {
                return Outcome::new(false, format!("`mf1 {}` failed", full.join(" ")));
            }
            outputs.push(std::fs::read(Path::new(&path)).unwrap());
        }
        if outputs.iter().any(|o| o != &outputs[0]) || outputs[0].is_empty() {
            return Outcome::new(false, format!("`mf1 {}` output differs between runs", args.join(" ")));
        }
    }
    Outcome::new(true, "fig1, sweep-labels and sweep-errors byte-identical across repeats and 1 vs 4 threads")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden CLI output", golden_cli),
        ("golden tables and ranking flip", golden_tables),
        ("theorem property suite", theorem_suite),
        ("extremal convergence", extremal_convergence),
        ("binary imbalanced random-classifier reproduction", fig1_reproduction),
        ("accuracy x skew sweeps", sweep_reproduction),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
