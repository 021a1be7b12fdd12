//! Gold/prediction label files.
//!
//! Either two files with one label per line (aligned by line number), or a
//! single TSV file with `gold<TAB>predicted` per line. Class indices follow
//! the sorted order of the label strings; display order is first-seen order.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mf1_core::ConfusionMatrix;

/// Labelled samples resolved against a shared vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledSamples {
    /// Index-ordered (sorted) class names.
    pub vocabulary: Vec<String>,
    /// Class indices in first-seen order.
    pub display_order: Vec<usize>,
    pub gold: Vec<usize>,
    pub predicted: Vec<usize>,
}

impl LabelledSamples {
    pub fn is_empty(&self) -> bool {
        self.gold.is_empty()
    }

    /// `None` when there are no classes at all.
    pub fn confusion_matrix(&self) -> Option<ConfusionMatrix> {
        if self.vocabulary.is_empty() {
            return None;
        }
        Some(
            ConfusionMatrix::from_predictions(&self.predicted, &self.gold, self.vocabulary.len())
                .expect("indices come from the vocabulary"),
        )
    }
}

/// One label as read from a file, with its origin for diagnostics.
struct Label<'a> {
    text: &'a str,
    file: &'a str,
    line: usize,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn non_blank_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub fn from_two_files(gold: &Path, pred: &Path, vocabulary: Option<&[String]>) -> Result<LabelledSamples> {
    let gold_text = read(gold)?;
    let pred_text = read(pred)?;
    let gold_name = gold.display().to_string();
    let pred_name = pred.display().to_string();
    let g: Vec<_> = non_blank_lines(&gold_text).collect();
    let p: Vec<_> = non_blank_lines(&pred_text).collect();
    if g.len() != p.len() {
        let line = g.len().min(p.len()) + 1;
        bail!(
            "length mismatch: {gold_name} has {} labels, {pred_name} has {} (first unmatched label #{line})",
            g.len(),
            p.len()
        );
    }
    let pairs = g
        .iter()
        .zip(&p)
        .map(|(&(gl, gt), &(pl, pt))| {
            (
                Label { text: gt.trim(), file: &gold_name, line: gl },
                Label { text: pt.trim(), file: &pred_name, line: pl },
            )
        })
        .collect();
    resolve(pairs, vocabulary)
}

pub fn from_tsv(path: &Path, vocabulary: Option<&[String]>) -> Result<LabelledSamples> {
    let text = read(path)?;
    let name = path.display().to_string();
    let mut pairs = Vec::new();
    for (line, l) in non_blank_lines(&text) {
        let cols: Vec<&str> = l.split('\t').collect();
        if cols.len() != 2 {
            bail!("{name}:{line}: expected 2 tab-separated columns (gold, predicted), found {}", cols.len());
        }
        pairs.push((
            Label { text: cols[0].trim(), file: &name, line },
            Label { text: cols[1].trim(), file: &name, line },
        ));
    }
    resolve(pairs, vocabulary)
}

fn resolve(pairs: Vec<(Label<'_>, Label<'_>)>, vocabulary: Option<&[String]>) -> Result<LabelledSamples> {
    let vocabulary: Vec<String> = match vocabulary {
        Some(v) => {
            let set: BTreeSet<&String> = v.iter().collect();
            if set.len() != v.len() {
                bail!("duplicate entry in --labels");
            }
            set.into_iter().cloned().collect()
        }
        None => pairs
            .iter()
            .flat_map(|(g, p)| [g.text, p.text])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(String::from)
            .collect(),
    };
    let index = |l: &Label<'_>| -> Result<usize> {
        vocabulary
            .binary_search_by(|v| v.as_str().cmp(l.text))
            .map_err(|_| anyhow::anyhow!("{}:{}: unknown label {:?}", l.file, l.line, l.text))
    };
    let mut gold = Vec::with_capacity(pairs.len());
    let mut predicted = Vec::with_capacity(pairs.len());
    let mut display_order = Vec::new();
    let mut seen = vec![false; vocabulary.len()];
    let mut note = |i: usize, order: &mut Vec<usize>| {
        if !std::mem::replace(&mut seen[i], true) {
            order.push(i);
        }
    };
    for (g, p) in &pairs {
        let gi = index(g)?;
        let pi = index(p)?;
        note(gi, &mut display_order);
        note(pi, &mut display_order);
        gold.push(gi);
        predicted.push(pi);
    }
    // declared but unseen classes go last, in sorted order
    for i in 0..vocabulary.len() {
        note(i, &mut display_order);
    }
    Ok(LabelledSamples {
        vocabulary,
        display_order,
        gold,
        predicted,
    })
}
