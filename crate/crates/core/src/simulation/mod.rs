//! Seeded Monte-Carlo experiments with synthetic classifiers.
//!
//! Two experiment shapes are supported:
//!
//! * [`run_trials`]: repeat "sample a dataset, classify it, score it" for a
//!   fixed configuration and summarise the paired macro-F1 values.
//! * [`sweep_grid`]: mean `Δ` over a grid of classifier accuracy `x` and a
//!   skew parameter `y`, where `y` skews either the label distribution or the
//!   distribution of errors.
//!
//! Each trial draws from its own generator derived from `(seed, index)`
//! (see [`seed`]), and results are reduced in index order, so output is
//! identical whether trials run on one thread or many.

pub mod csv;
pub mod sampling;
pub mod seed;
pub mod stats;

use serde::Serialize;

use crate::confusion::ConfusionMatrix;
use crate::error::{Error, Result};
use crate::metrics::MacroReport;

pub use sampling::{
    sample_gold_labels, skewed_label_distribution, uniform_random_classifier,
    AccuracyBiasedClassifier, ClassifierSpec, LabelDistribution,
};
pub use seed::{child_rng, rng_from_seed, sub_seed, SimRng};
pub use stats::{fractional_ranks, pearson, rmsd, spearman};

#[cfg(feature = "parallel")]
fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

/// One repeated-trial experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub dataset_size: usize,
    pub trials: usize,
    pub class_distribution: Vec<f64>,
    pub classifier: ClassifierSpec,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Binary task, 95% / 5% labels, uniform random classifier,
    /// 1000 trials of 1000 samples.
    pub fn binary_imbalanced(seed: u64) -> Self {
        Self {
            n: 2,
            dataset_size: 1000,
            trials: 1000,
            class_distribution: vec![0.95, 0.05],
            classifier: ClassifierSpec::UniformRandom,
            seed,
        }
    }

    fn label_distribution(&self) -> Result<LabelDistribution> {
        if self.class_distribution.len() != self.n {
            return Err(Error::Distribution(format!(
                "{} probabilities for {} classes",
                self.class_distribution.len(),
                self.n
            )));
        }
        LabelDistribution::new(self.class_distribution.clone())
    }
}

enum Classifier {
    Uniform(usize),
    Biased(AccuracyBiasedClassifier),
}

impl Classifier {
    fn new(n: usize, spec: ClassifierSpec) -> Result<Self> {
        match spec {
            ClassifierSpec::UniformRandom => Ok(Self::Uniform(n)),
            ClassifierSpec::AccuracyBiased {
                accuracy,
                error_skew,
            } => AccuracyBiasedClassifier::new(n, accuracy, error_skew).map(Self::Biased),
        }
    }

    fn predict(&self, gold: &[usize], rng: &mut SimRng) -> Vec<usize> {
        match self {
            Self::Uniform(n) => uniform_random_classifier(gold, *n, rng),
            Self::Biased(c) => c.predict_all(gold, rng),
        }
    }
}

fn run_one(
    dist: &LabelDistribution,
    classifier: &Classifier,
    size: usize,
    rng: &mut SimRng,
) -> MacroReport {
    let gold = sample_gold_labels(dist, size, rng);
    let predicted = classifier.predict(&gold, rng);
    let cm = ConfusionMatrix::from_predictions(&predicted, &gold, dist.n())
        .expect("labels are drawn from [0, n)");
    MacroReport::new(&cm)
}

/// Per-trial reports plus summary statistics.
///
/// `rmsd` compares F1 of averages with averaged F1 across trials; the
/// correlations are `None` when either series has zero variance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub reports: Vec<MacroReport>,
    pub rmsd: f64,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
}

impl TrialStats {
    pub fn from_reports(reports: Vec<MacroReport>) -> Result<Self> {
        let pairs: Vec<(f64, f64)> = reports
            .iter()
            .map(|r| (r.f1_of_averages, r.averaged_f1))
            .collect();
        let rmsd = stats::rmsd(&pairs)?;
        let (of_averages, averaged): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let defined = |r: Result<f64>| match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::ZeroVariance | Error::TooFewSamples { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        Ok(Self {
            pearson: defined(stats::pearson(&of_averages, &averaged))?,
            spearman: defined(stats::spearman(&of_averages, &averaged))?,
            reports,
            rmsd,
        })
    }

    pub fn max_averaged_f1(&self) -> f64 {
        self.reports.iter().map(|r| r.averaged_f1).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_f1_of_averages(&self) -> f64 {
        self.reports.iter().map(|r| r.f1_of_averages).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_delta(&self) -> f64 {
        self.reports.iter().map(|r| r.delta_direct).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Runs `cfg.trials` independent trials.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<TrialStats> {
    if cfg.trials == 0 {
        return Err(Error::TooFewSamples { min: 1, got: 0 });
    }
    let dist = cfg.label_distribution()?;
    let classifier = Classifier::new(cfg.n, cfg.classifier)?;
    let reports = map_indexed(cfg.trials, |k| {
        let mut rng = child_rng(cfg.seed, k as u64);
        run_one(&dist, &classifier, cfg.dataset_size, &mut rng)
    });
    TrialStats::from_reports(reports)
}

/// What the `y` axis of a sweep controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// `y` skews the gold label distribution; errors are spread evenly.
    LabelSkew,
    /// Labels are uniform; `y` skews where the errors go.
    ErrorSkew,
}

/// `count` evenly spaced points from `start` to `end`, both included.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count)
            .map(|k| {
                if k == count - 1 {
                    end
                } else {
                    start + (end - start) * k as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub n: usize,
    pub dataset_size: usize,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub mode: SweepMode,
    pub trials_per_cell: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub const DEFAULT_GRID: usize = 21;
    pub const DEFAULT_TRIALS_PER_CELL: usize = 5;
    pub const DEFAULT_DATASET_SIZE: usize = 2000;

    /// `x` from `1/n` to 1 in `x_steps` points, `y` from 0 to 1 in `y_steps`.
    pub fn grid(
        n: usize,
        mode: SweepMode,
        x_steps: usize,
        y_steps: usize,
        seed: u64,
    ) -> Self {
        Self {
            n,
            dataset_size: Self::DEFAULT_DATASET_SIZE,
            x_values: linspace(1.0 / n as f64, 1.0, x_steps),
            y_values: linspace(0.0, 1.0, y_steps),
            mode,
            trials_per_cell: Self::DEFAULT_TRIALS_PER_CELL,
            seed,
        }
    }

    pub fn default_grid(n: usize, mode: SweepMode, seed: u64) -> Self {
        Self::grid(n, mode, Self::DEFAULT_GRID, Self::DEFAULT_GRID, seed)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooFewClasses { n: self.n, min: 2 });
        }
        if self.x_values.is_empty() || self.y_values.is_empty() {
            return Err(Error::Parameter("empty sweep grid".into()));
        }
        if self.trials_per_cell == 0 {
            return Err(Error::Parameter("trials_per_cell must be positive".into()));
        }
        Ok(())
    }
}

/// Cell means of a sweep. Matrices are indexed `[y_index][x_index]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub n: usize,
    pub mode: SweepMode,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub mean_delta: Vec<Vec<f64>>,
    pub mean_averaged_f1: Vec<Vec<f64>>,
    pub mean_f1_of_averages: Vec<Vec<f64>>,
}

impl SweepResult {
    /// Largest mean `Δ` among cells with `x < 1`.
    pub fn max_mean_delta_below_perfect(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for row in &self.mean_delta {
            for (xi, &d) in row.iter().enumerate() {
                if self.x_values[xi] < 1.0 {
                    best = best.max(d);
                }
            }
        }
        best
    }

    pub fn max_mean_delta(&self) -> f64 {
        self.mean_delta
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Mean `Δ` of every cell in the `x == 1` column(s).
    pub fn perfect_column(&self) -> Vec<f64> {
        let cols: Vec<usize> = (0..self.x_values.len())
            .filter(|&i| self.x_values[i] == 1.0)
            .collect();
        self.mean_delta
            .iter()
            .flat_map(|row| cols.iter().map(move |&c| row[c]))
            .collect()
    }
}

struct CellMeans {
    delta: f64,
    averaged_f1: f64,
    f1_of_averages: f64,
}

/// Mean `Δ` and both macro means for every `(x, y)` cell of `spec`.
pub fn sweep_grid(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let nx = spec.x_values.len();
    let ny = spec.y_values.len();

    // Build and validate every cell's inputs before any sampling.
    let mut cells = Vec::with_capacity(nx * ny);
    for &y in &spec.y_values {
        for &x in &spec.x_values {
            let (dist, classifier) = match spec.mode {
                SweepMode::LabelSkew => (
                    skewed_label_distribution(spec.n, y)?,
                    AccuracyBiasedClassifier::new(spec.n, x, 0.0)?,
                ),
                SweepMode::ErrorSkew => {
                    if !(0.0..=1.0).contains(&y) {
                        return Err(Error::Parameter(format!("skew y={y} outside [0, 1]")));
                    }
                    (
                        LabelDistribution::uniform(spec.n)?,
                        AccuracyBiasedClassifier::new(spec.n, x, y)?,
                    )
                }
            };
            cells.push((dist, Classifier::Biased(classifier)));
        }
    }

    let trials = spec.trials_per_cell;
    let means = map_indexed(cells.len(), |cell| {
        let (dist, classifier) = &cells[cell];
        let cell_seed = sub_seed(spec.seed, cell as u64);
        let (mut d, mut a, mut f) = (0.0, 0.0, 0.0);
        for t in 0..trials {
            let mut rng = child_rng(cell_seed, t as u64);
            let r = run_one(dist, classifier, spec.dataset_size, &mut rng);
            d += r.delta_direct;
            a += r.averaged_f1;
            f += r.f1_of_averages;
        }
        let t = trials as f64;
        CellMeans {
            delta: d / t,
            averaged_f1: a / t,
            f1_of_averages: f / t,
        }
    });

    let shape = |pick: fn(&CellMeans) -> f64| -> Vec<Vec<f64>> {
        means.chunks(nx).map(|row| row.iter().map(pick).collect()).collect()
    };
    Ok(SweepResult {
        n: spec.n,
        mode: spec.mode,
        x_values: spec.x_values.clone(),
        y_values: spec.y_values.clone(),
        mean_delta: shape(|m| m.delta),
        mean_averaged_f1: shape(|m| m.averaged_f1),
        mean_f1_of_averages: shape(|m| m.f1_of_averages),
    })
}
