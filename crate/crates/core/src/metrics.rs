//! The two macro-F1 aggregations and the gap between them.
//!
//! * **averaged F1** – arithmetic mean of per-class F1 scores.
//! * **F1 of averages** – harmonic mean of mean precision and mean recall.
//!
//! F1 of averages is never smaller. The gap `Δ` is available both as the plain
//! difference and through an independent pairwise closed form, which serves as
//! a cross-check. Summation order follows a fixed left-to-right fold over
//! classes (and over class pairs `x < y`), so results are reproducible to the
//! last bit.

use serde::Serialize;

use crate::confusion::{harmonic_mean, ConfusionMatrix};
use crate::error::{Error, Result};

/// `Δ` above this value counts as divergence in [`MacroReport::diverges`].
pub const DIVERGENCE_TOLERANCE: f64 = 1e-12;

fn precisions_and_recalls(cm: &ConfusionMatrix) -> (Vec<f64>, Vec<f64>) {
    (0..cm.n())
        .map(|i| (cm.precision_unchecked(i), cm.recall_unchecked(i)))
        .unzip()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, v| acc + v) / values.len() as f64
}

/// Arithmetic mean of the per-class F1 scores over all `n` classes.
pub fn averaged_f1(cm: &ConfusionMatrix) -> f64 {
    let (p, r) = precisions_and_recalls(cm);
    let f1: Vec<f64> = p.iter().zip(&r).map(|(&p, &r)| harmonic_mean(p, r)).collect();
    mean(&f1)
}

/// Harmonic mean of mean precision and mean recall.
pub fn f1_of_averages(cm: &ConfusionMatrix) -> f64 {
    let (p, r) = precisions_and_recalls(cm);
    harmonic_mean(mean(&p), mean(&r))
}

/// `f1_of_averages(cm) - averaged_f1(cm)`.
pub fn delta_direct(cm: &ConfusionMatrix) -> f64 {
    f1_of_averages(cm) - averaged_f1(cm)
}

/// The gap evaluated pairwise:
///
/// ```text
///            1                 (P_x R_y - P_y R_x)^2
/// Δ = ------------------  Σ   -----------------------
///     n Σ_x (P_x + R_x)  x,y  (P_x + R_x)(P_y + R_y)
/// ```
///
/// over ordered pairs of classes with `P + R > 0`. The diagonal terms vanish,
/// so the sum is taken as twice the sum over `x < y`. Returns 0 when every
/// class has `P + R = 0`.
pub fn delta_closed_form(cm: &ConfusionMatrix) -> f64 {
    let (p, r) = precisions_and_recalls(cm);
    let n = cm.n() as f64;
    let pr_total = p.iter().zip(&r).fold(0.0, |acc, (p, r)| acc + (p + r));
    if pr_total == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for x in 0..p.len() {
        let sx = p[x] + r[x];
        if sx == 0.0 {
            continue;
        }
        for y in x + 1..p.len() {
            let sy = p[y] + r[y];
            if sy == 0.0 {
                continue;
            }
            let d = p[x] * r[y] - p[y] * r[x];
            sum += (2.0 * (d * d)) / (n * sx * sy * pr_total);
        }
    }
    sum
}

/// True iff some class has `P_i != R_i`, decided on exact integer counts.
pub fn divergence_condition(cm: &ConfusionMatrix) -> bool {
    (0..cm.n()).any(|i| cm.precision_cmp_recall_unchecked(i).is_ne())
}

/// A pair of classes `(i, j)` with `P_i < R_i` and `P_j > R_j`, if one exists.
///
/// Exists exactly when [`divergence_condition`] holds.
pub fn opposing_skew_pair(cm: &ConfusionMatrix) -> Option<(usize, usize)> {
    let mut under = None;
    let mut over = None;
    for i in 0..cm.n() {
        match cm.precision_cmp_recall_unchecked(i) {
            std::cmp::Ordering::Less if under.is_none() => under = Some(i),
            std::cmp::Ordering::Greater if over.is_none() => over = Some(i),
            _ => {}
        }
    }
    under.zip(over)
}

/// Least upper bound of `Δ` over all `n`-class confusion matrices:
/// `0.5` for even `n`, `0.5 - 1/(2n²)` for odd `n`. Never attained.
pub fn supremum_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewClasses { n, min: 2 });
    }
    if n.is_multiple_of(2) {
        Ok(0.5)
    } else {
        let n = n as f64;
        Ok(0.5 - 1.0 / (2.0 * n * n))
    }
}

/// Limit profile where `r` classes have `(P, R) = (0, 1)` and `s` classes have
/// `(P, R) = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtremalConfig {
    r: usize,
    s: usize,
    n: usize,
}

impl ExtremalConfig {
    pub fn new(r: usize, s: usize, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewClasses { n, min: 2 });
        }
        if r + s != n {
            return Err(Error::ExtremalConfig { r, s, n });
        }
        Ok(Self { r, s, n })
    }

    /// The split that maximises `Δ`: `r = ⌊n/2⌋`, `s = ⌈n/2⌉`.
    pub fn balanced(n: usize) -> Result<Self> {
        Self::new(n / 2, n - n / 2, n)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `Δ = 2rs / n²` of an extremal profile (averaged F1 is 0 there).
pub fn extremal_delta(cfg: &ExtremalConfig) -> f64 {
    let n = cfg.n as f64;
    2.0 * cfg.r as f64 * cfg.s as f64 / (n * n)
}

/// Confusion matrix whose precision/recall profile tends to the maximising
/// extremal configuration as `z` grows.
///
/// Even `n`: block diagonal of `[[1, 0], [z, 1]]`, giving per-class profile
/// `(1, 1/(1+z)), (1/(1+z), 1), ...`.
/// Odd `n`: the same 2×2 blocks followed by a final 3×3 block
/// `[[1, 0, 0], [z, 1, z], [0, 0, 1]]`, whose classes have profile
/// `(1, 1/(1+z)), (1/(1+2z), 1), (1, 1/(1+z))`.
pub fn extremal_matrix(n: usize, z: u64) -> Result<ConfusionMatrix> {
    if n < 2 {
        return Err(Error::TooFewClasses { n, min: 2 });
    }
    let mut cells = vec![0u64; n * n];
    let mut set = |i: usize, j: usize, v: u64| cells[i * n + j] = v;
    let pair_blocks = if n.is_multiple_of(2) { n / 2 } else { (n - 3) / 2 };
    for b in 0..pair_blocks {
        let k = 2 * b;
        set(k, k, 1);
        set(k + 1, k, z);
        set(k + 1, k + 1, 1);
    }
    if n % 2 == 1 {
        let k = n - 3;
        set(k, k, 1);
        set(k + 1, k, z);
        set(k + 1, k + 1, 1);
        set(k + 1, k + 2, z);
        set(k + 2, k + 2, 1);
    }
    ConfusionMatrix::from_row_major(n, cells)
}

/// Both macro-F1 values and the gap between them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MacroReport {
    pub averaged_f1: f64,
    pub f1_of_averages: f64,
    pub delta_direct: f64,
    pub delta_closed_form: f64,
    pub diverges: bool,
}

impl MacroReport {
    pub fn new(cm: &ConfusionMatrix) -> Self {
        let averaged_f1 = averaged_f1(cm);
        let f1_of_averages = f1_of_averages(cm);
        let delta_direct = f1_of_averages - averaged_f1;
        Self {
            averaged_f1,
            f1_of_averages,
            delta_direct,
            delta_closed_form: delta_closed_form(cm),
            diverges: delta_direct > DIVERGENCE_TOLERANCE,
        }
    }
}

pub fn macro_report(cm: &ConfusionMatrix) -> MacroReport {
    MacroReport::new(cm)
}
