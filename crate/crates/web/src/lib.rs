//! Browser bindings for `mf1-core`. Every export returns a JSON string.
//!
//! The `*_json` functions hold the logic and are plain Rust so they can be
//! tested on the host; the `#[wasm_bindgen]` wrappers only convert errors.

use mf1_core::simulation::{sweep_grid, SweepMode, SweepSpec};
use mf1_core::{extremal_matrix, macro_report, supremum_bound, ConfusionMatrix};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Upper limit on grid cells so a slider typo cannot freeze the tab.
pub const MAX_SWEEP_CELLS: usize = 2_500;

/// Parse whitespace, comma or semicolon separated counts into a square matrix.
pub fn parse_matrix(text: &str) -> Result<ConfusionMatrix, String> {
    let cells = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("{t:?} is not a non-negative integer")))
        .collect::<Result<Vec<_>, _>>()?;
    let n = (cells.len() as f64).sqrt().round() as usize;
    if n * n != cells.len() || n == 0 {
        return Err(format!("{} numbers do not form a square matrix", cells.len()));
    }
    ConfusionMatrix::from_row_major(n, cells).map_err(|e| e.to_string())
}

pub fn score_json(text: &str) -> Result<String, String> {
    let cm = parse_matrix(text)?;
    Ok(json!({
        "matrix": cm,
        "classes": cm.per_class_metrics(),
        "report": macro_report(&cm),
    })
    .to_string())
}

pub fn extremal_json(n: usize, z: u64) -> Result<String, String> {
    let cm = extremal_matrix(n, z).map_err(|e| e.to_string())?;
    let bound = supremum_bound(n).map_err(|e| e.to_string())?;
    Ok(json!({
        "matrix": cm,
        "report": macro_report(&cm),
        "supremum": bound,
    })
    .to_string())
}

pub fn sweep_json(
    n: usize,
    error_skew: bool,
    grid: usize,
    trials: usize,
    size: usize,
    seed: u64,
) -> Result<String, String> {
    if grid * grid > MAX_SWEEP_CELLS {
        return Err(format!("grid too large (at most {MAX_SWEEP_CELLS} cells)"));
    }
    let mode = if error_skew { SweepMode::ErrorSkew } else { SweepMode::LabelSkew };
    let mut spec = SweepSpec::grid(n, mode, grid, grid, seed);
    spec.trials_per_cell = trials;
    spec.dataset_size = size;
    let res = sweep_grid(&spec).map_err(|e| e.to_string())?;
    Ok(json!({
        "result": res,
        "max_mean_delta": res.max_mean_delta(),
        "max_mean_delta_below_perfect": res.max_mean_delta_below_perfect(),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Scores a matrix typed as text, rows = predicted, columns = gold.
#[wasm_bindgen]
pub fn score(text: &str) -> Result<String, JsError> {
    js(score_json(text))
}

#[wasm_bindgen]
pub fn extremal(n: usize, z: f64) -> Result<String, JsError> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(JsError::new("z must be a non-negative number"));
    }
    js(extremal_json(n, z as u64))
}

#[wasm_bindgen]
pub fn sweep(
    n: usize,
    error_skew: bool,
    grid: usize,
    trials: usize,
    size: usize,
    seed: u32,
) -> Result<String, JsError> {
    js(sweep_json(n, error_skew, grid, trials, size, seed.into()))
}
