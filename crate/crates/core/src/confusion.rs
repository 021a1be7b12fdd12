//! Confusion matrices and per-class precision, recall and F1.
//!
//! Orientation is fixed: rows are **predicted** classes, columns are **gold**
//! classes. Cell `(i, j)` counts samples predicted as `i` whose gold label is
//! `j`. Precision of class `i` therefore divides by the row sum, recall by the
//! column sum. Any metric whose denominator is zero is defined as 0, so an
//! all-zero matrix is a legal (empty) dataset.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

/// Harmonic mean `2xy / (x + y)`, with `H(0, 0) = 0`.
///
/// Equal arguments return the argument itself, so `H(p, p) == p` holds
/// bit-for-bit.
pub fn harmonic_mean(x: f64, y: f64) -> f64 {
    if x == y {
        return x;
    }
    let sum = x + y;
    if sum == 0.0 {
        0.0
    } else {
        (x * y / sum) * 2.0
    }
}

/// Square matrix of exact integer counts, rows = predicted, columns = gold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConfusionMatrix {
    n: usize,
    cells: Vec<u64>,
}

impl ConfusionMatrix {
    /// All-zero `n`×`n` matrix.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewClasses { n, min: 1 });
        }
        Ok(Self {
            n,
            cells: vec![0; n * n],
        })
    }

    /// Builds a matrix from `n * n` cells in row-major order.
    pub fn from_row_major(n: usize, cells: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewClasses { n, min: 1 });
        }
        let expected = n * n;
        if cells.len() != expected {
            return Err(Error::CellCount {
                n,
                expected,
                got: cells.len(),
            });
        }
        Ok(Self { n, cells })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::RaggedRow {
                    row,
                    got: r.len(),
                    n,
                });
            }
            cells.extend_from_slice(r);
        }
        Self::from_row_major(n, cells)
    }

    /// Counts `(predicted, gold)` pairs into an `n`×`n` matrix.
    pub fn from_pairs(pairs: &[(usize, usize)], n: usize) -> Result<Self> {
        let mut cm = Self::zeros(n)?;
        for (position, &(predicted, gold)) in pairs.iter().enumerate() {
            if predicted >= n || gold >= n {
                return Err(Error::PairOutOfRange {
                    position,
                    predicted,
                    gold,
                    n,
                });
            }
            cm.cells[predicted * n + gold] += 1;
        }
        Ok(cm)
    }

    /// Like [`from_pairs`](Self::from_pairs) but with predictions and gold
    /// labels in two aligned slices.
    pub fn from_predictions(predicted: &[usize], gold: &[usize], n: usize) -> Result<Self> {
        if predicted.len() != gold.len() {
            return Err(Error::LengthMismatch {
                left: predicted.len(),
                right: gold.len(),
            });
        }
        let mut cm = Self::zeros(n)?;
        for (position, (&p, &g)) in predicted.iter().zip(gold).enumerate() {
            if p >= n || g >= n {
                return Err(Error::PairOutOfRange {
                    position,
                    predicted: p,
                    gold: g,
                    n,
                });
            }
            cm.cells[p * n + g] += 1;
        }
        Ok(cm)
    }

    /// Identity matrix: one correct prediction per class.
    pub fn identity(n: usize) -> Result<Self> {
        let mut cm = Self::zeros(n)?;
        for i in 0..n {
            cm.cells[i * n + i] = 1;
        }
        Ok(cm)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, predicted: usize, gold: usize) -> u64 {
        self.cells[predicted * self.n + gold]
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.cells.chunks_exact(self.n)
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.cells[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    /// True when every diagonal cell is zero.
    pub fn is_hollow(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[j * n + i] = self.cells[i * n + j];
            }
        }
        Self { n, cells }
    }

    /// Relabels classes so that old class `k` becomes class `perm[k]`, applied
    /// to rows and columns simultaneously.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Parameter(format!(
                "permutation has {} entries, expected {n}",
                perm.len()
            )));
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parameter(format!("{perm:?} is not a permutation")));
            }
        }
        let mut cells = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[perm[i] * n + perm[j]] = self.cells[i * n + j];
            }
        }
        Ok(Self { n, cells })
    }

    /// Multiplies every cell by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self {
            n: self.n,
            cells: self.cells.iter().map(|&c| c * factor).collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::ClassIndex {
                index: i,
                n: self.n,
            })
        }
    }

    pub(crate) fn precision_unchecked(&self, i: usize) -> f64 {
        let row = self.row_sum(i);
        if row == 0 {
            0.0
        } else {
            self.get(i, i) as f64 / row as f64
        }
    }

    pub(crate) fn recall_unchecked(&self, i: usize) -> f64 {
        let col = self.col_sum(i);
        if col == 0 {
            0.0
        } else {
            self.get(i, i) as f64 / col as f64
        }
    }

    /// `m_ii / Σ_x m_ix`, or 0 when class `i` was never predicted.
    pub fn precision(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.precision_unchecked(i))
    }

    /// `m_ii / Σ_x m_xi`, or 0 when class `i` never occurs in the gold labels.
    pub fn recall(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.recall_unchecked(i))
    }

    /// Harmonic mean of precision and recall for class `i`.
    pub fn f1(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        Ok(harmonic_mean(
            self.precision_unchecked(i),
            self.recall_unchecked(i),
        ))
    }

    pub fn class_metrics(&self, i: usize) -> Result<ClassMetrics> {
        self.check_index(i)?;
        Ok(self.class_metrics_unchecked(i))
    }

    fn class_metrics_unchecked(&self, i: usize) -> ClassMetrics {
        let precision = self.precision_unchecked(i);
        let recall = self.recall_unchecked(i);
        ClassMetrics {
            class_index: i,
            precision,
            recall,
            f1: harmonic_mean(precision, recall),
        }
    }

    pub fn per_class_metrics(&self) -> Vec<ClassMetrics> {
        (0..self.n).map(|i| self.class_metrics_unchecked(i)).collect()
    }

    /// Compares `P_i` with `R_i` exactly, by cross-multiplying integer counts.
    ///
    /// Classes with a zero row or column sum have `P_i = R_i = 0` and compare
    /// equal, matching the zero-denominator convention.
    pub fn precision_cmp_recall(&self, i: usize) -> Result<Ordering> {
        self.check_index(i)?;
        Ok(self.precision_cmp_recall_unchecked(i))
    }

    pub(crate) fn precision_cmp_recall_unchecked(&self, i: usize) -> Ordering {
        // P = d/row, R = d/col. With d > 0 both sums are positive and
        // P < R  <=>  col < row. With d = 0 both are 0.
        let d = self.get(i, i) as u128;
        let row = self.row_sum(i) as u128;
        let col = self.col_sum(i) as u128;
        (d * col).cmp(&(d * row))
    }
}

/// Precision, recall and F1 of one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub class_index: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}
