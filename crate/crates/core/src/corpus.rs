//! Seeded random confusion matrices for checking the metric identities.
//!
//! Item `k` is generated from its own sub-seed, so any subset of the corpus
//! can be regenerated independently. Families rotate with `k`.

use rand::Rng;

use crate::confusion::ConfusionMatrix;
use crate::simulation::seed::{child_rng, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Every cell uniform in `0..=max_cell`.
    Dense,
    /// Uniform cells mirrored across the diagonal, so every class has `P = R`.
    Symmetric,
    /// Uniform diagonal; off-diagonal cells are zero 60% of the time.
    SparseOffDiagonal,
    /// Dense, then each diagonal cell zeroed with probability 1/2.
    ZeroedDiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub min_classes: usize,
    pub max_classes: usize,
    pub max_cell: u64,
    pub families: Vec<Family>,
}

impl Default for CorpusSpec {
    /// 2 to 13 classes, cells up to 1000, dense/symmetric/sparse rotation.
    fn default() -> Self {
        Self {
            min_classes: 2,
            max_classes: 13,
            max_cell: 1000,
            families: vec![Family::Dense, Family::Symmetric, Family::SparseOffDiagonal],
        }
    }
}

/// Item `index` of the corpus under `seed`.
pub fn corpus_matrix(spec: &CorpusSpec, seed: u64, index: u64) -> ConfusionMatrix {
    let mut rng = child_rng(seed, index);
    let n = rng.gen_range(spec.min_classes..=spec.max_classes);
    let cell = |rng: &mut SimRng| rng.gen_range(0..=spec.max_cell);
    let mut cells = vec![0u64; n * n];
    let family = spec.families[index as usize % spec.families.len()];
    match family {
        Family::Dense => cells.iter_mut().for_each(|c| *c = cell(&mut rng)),
        Family::Symmetric => {
            for i in 0..n {
                for j in i..n {
                    let v = cell(&mut rng);
                    cells[i * n + j] = v;
                    cells[j * n + i] = v;
                }
            }
        }
        Family::SparseOffDiagonal => {
            for i in 0..n {
                for j in 0..n {
                    if i == j || rng.gen_bool(0.4) {
                        cells[i * n + j] = cell(&mut rng);
                    }
                }
            }
        }
        Family::ZeroedDiagonal => {
            cells.iter_mut().for_each(|c| *c = cell(&mut rng));
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    cells[i * n + i] = 0;
                }
            }
        }
    }
    ConfusionMatrix::from_row_major(n, cells).expect("n >= 1 and n*n cells")
}

pub fn corpus(spec: &CorpusSpec, seed: u64, count: usize) -> Vec<ConfusionMatrix> {
    (0..count as u64).map(|k| corpus_matrix(spec, seed, k)).collect()
}
