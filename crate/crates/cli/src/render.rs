use std::fmt::Write;

use mf1_core::simulation::{ExperimentConfig, SweepResult, SweepSpec, TrialStats};
use mf1_core::{ConfusionMatrix, MacroReport};
use serde::Serialize;

use crate::labels::LabelledSamples;

/// Shortest decimal that round-trips, always with a fractional part (`0.0`).
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn report_lines(r: &MacroReport) -> String {
    format!(
        "macroF1 benevolent: {}\nmacroF1 non-benevolent: {}\ndelta: {}\ndelta calculated: {}\n",
        num(r.f1_of_averages),
        num(r.averaged_f1),
        num(r.delta_direct),
        num(r.delta_closed_form)
    )
}

pub fn matrix_block(cm: &ConfusionMatrix) -> String {
    let width = cm.cells().iter().map(|c| c.to_string().len()).max().unwrap_or(1);
    let mut out = String::from("# rows = predicted, columns = gold\n");
    for row in cm.rows() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn class_rows(samples: &LabelledSamples, cm: Option<&ConfusionMatrix>) -> Vec<ClassRow> {
    let Some(cm) = cm else { return Vec::new() };
    samples
        .display_order
        .iter()
        .map(|&i| {
            let m = cm.class_metrics(i).expect("display order indexes the vocabulary");
            ClassRow {
                label: samples.vocabulary[i].clone(),
                precision: m.precision,
                recall: m.recall,
                f1: m.f1,
            }
        })
        .collect()
}

pub fn class_table(rows: &[ClassRow]) -> String {
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(5);
    let mut out = String::new();
    writeln!(out, "{:<width$}  {:>20}  {:>20}  {:>20}", "class", "precision", "recall", "f1").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<width$}  {:>20}  {:>20}  {:>20}",
            r.label,
            num(r.precision),
            num(r.recall),
            num(r.f1)
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct MatrixJson<'a> {
    pub matrix: &'a ConfusionMatrix,
    pub report: MacroReport,
}

#[derive(Serialize)]
pub struct EvalJson {
    pub samples: usize,
    pub classes: Vec<ClassRow>,
    pub report: MacroReport,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), num)
}

pub fn trial_summary(cfg: &ExperimentConfig, stats: &TrialStats) -> String {
    format!(
        "trials={} size={} n={} seed={} rmsd={} pearson={} spearman={} max_f1_of_averages={} max_averaged_f1={}",
        cfg.trials,
        cfg.dataset_size,
        cfg.n,
        cfg.seed,
        num(stats.rmsd),
        opt(stats.pearson),
        opt(stats.spearman),
        num(stats.max_f1_of_averages()),
        num(stats.max_averaged_f1()),
    )
}

pub fn sweep_summary(spec: &SweepSpec, res: &SweepResult) -> String {
    let perfect_max = res.perfect_column().into_iter().fold(0.0, f64::max);
    format!(
        "mode={:?} n={} grid={}x{} size={} trials_per_cell={} seed={} max_mean_delta={} max_mean_delta_below_perfect={} max_mean_delta_at_x1={}",
        spec.mode,
        spec.n,
        spec.x_values.len(),
        spec.y_values.len(),
        spec.dataset_size,
        spec.trials_per_cell,
        spec.seed,
        num(res.max_mean_delta()),
        num(res.max_mean_delta_below_perfect()),
        num(perfect_max),
    )
}
