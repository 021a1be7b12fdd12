//! Label distributions and the synthetic classifiers.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Slack for parameters computed on float grids (e.g. `x = 1/n`).
const PARAM_SLACK: f64 = 1e-12;

/// Probabilities must sum to 1 within this tolerance.
pub const DISTRIBUTION_SUM_TOLERANCE: f64 = 1e-9;

/// Validated categorical distribution over class indices.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelDistribution {
    probs: Vec<f64>,
    sampler: WeightedIndex<f64>,
}

impl LabelDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Distribution("no classes".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Distribution(format!("bad probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > DISTRIBUTION_SUM_TOLERANCE {
            return Err(Error::Distribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        let sampler =
            WeightedIndex::new(&probs).map_err(|e| Error::Distribution(e.to_string()))?;
        Ok(Self { probs, sampler })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewClasses { n, min: 1 });
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sampler.sample(rng)
    }
}

/// Draws `size` independent gold labels from `dist`.
pub fn sample_gold_labels<R: Rng + ?Sized>(
    dist: &LabelDistribution,
    size: usize,
    rng: &mut R,
) -> Vec<usize> {
    (0..size).map(|_| dist.sample(rng)).collect()
}

/// Predicts uniformly at random, ignoring the gold labels.
pub fn uniform_random_classifier<R: Rng + ?Sized>(
    gold: &[usize],
    n: usize,
    rng: &mut R,
) -> Vec<usize> {
    gold.iter().map(|_| rng.gen_range(0..n)).collect()
}

fn triangular(n: usize) -> f64 {
    (n * (n + 1) / 2) as f64
}

/// Label distribution moving linearly from uniform (`y = 0`) to
/// `p_i = i / (n(n+1)/2)` with 1-based `i` (`y = 1`).
pub fn skewed_label_distribution(n: usize, y: f64) -> Result<LabelDistribution> {
    if n == 0 {
        return Err(Error::TooFewClasses { n, min: 1 });
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::Parameter(format!("skew y={y} outside [0, 1]")));
    }
    let total = triangular(n);
    let probs = (1..=n)
        .map(|i| (1.0 - y) / n as f64 + y * i as f64 / total)
        .collect();
    LabelDistribution::new(probs)
}

/// Which synthetic classifier a trial uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierSpec {
    UniformRandom,
    /// Correct with probability `accuracy`; errors spread according to
    /// `error_skew` (see [`AccuracyBiasedClassifier`]).
    AccuracyBiased { accuracy: f64, error_skew: f64 },
}

/// Classifier that returns the gold label with probability `x`.
///
/// The remaining mass `1 - x` goes to the wrong classes `j != i`, linearly
/// interpolated between an even split `(1-x)/(n-1)` at `y = 0` and weights
/// proportional to the 1-based class number, `j (1-x) / (n(n+1)/2 - i)`, at
/// `y = 1`. Both endpoints sum to `1 - x` over the wrong classes.
#[derive(Debug, Clone)]
pub struct AccuracyBiasedClassifier {
    accuracy: f64,
    error_skew: f64,
    rows: Vec<Vec<f64>>,
    samplers: Vec<WeightedIndex<f64>>,
}

impl AccuracyBiasedClassifier {
    pub fn new(n: usize, accuracy: f64, error_skew: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewClasses { n, min: 1 });
        }
        let min_accuracy = 1.0 / n as f64;
        if !(accuracy >= min_accuracy - PARAM_SLACK && accuracy <= 1.0) {
            return Err(Error::Parameter(format!(
                "accuracy x={accuracy} outside [1/{n}, 1]"
            )));
        }
        if !(0.0..=1.0).contains(&error_skew) {
            return Err(Error::Parameter(format!(
                "error skew y={error_skew} outside [0, 1]"
            )));
        }
        let total = triangular(n);
        let wrong = 1.0 - accuracy;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|gold| {
                let i = (gold + 1) as f64;
                (0..n)
                    .map(|j| {
                        if j == gold {
                            accuracy
                        } else {
                            let even = wrong / (n - 1) as f64;
                            let proportional = (j + 1) as f64 * wrong / (total - i);
                            (1.0 - error_skew) * even + error_skew * proportional
                        }
                    })
                    .collect()
            })
            .collect();
        let samplers = rows
            .iter()
            .map(|r| WeightedIndex::new(r).map_err(|e| Error::Parameter(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(Self {
            accuracy,
            error_skew,
            rows,
            samplers,
        })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    pub fn error_skew(&self) -> f64 {
        self.error_skew
    }

    /// Prediction probabilities for gold label `gold`.
    pub fn probabilities(&self, gold: usize) -> &[f64] {
        &self.rows[gold]
    }

    pub fn predict<R: Rng + ?Sized>(&self, gold: usize, rng: &mut R) -> usize {
        if self.accuracy == 1.0 {
            return gold;
        }
        self.samplers[gold].sample(rng)
    }

    pub fn predict_all<R: Rng + ?Sized>(&self, gold: &[usize], rng: &mut R) -> Vec<usize> {
        gold.iter().map(|&g| self.predict(g, rng)).collect()
    }
}
