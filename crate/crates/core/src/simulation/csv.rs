//! CSV output for trial and sweep results.
//!
//! Trial rows: `trial_id,averaged_f1,f1_of_averages,delta`.
//! Cell rows: `x,y,mean_delta,mean_averaged_f1,mean_f1_of_averages`.
//! Numbers use 17 significant digits (`%.17g` style), enough to round-trip
//! every `f64`.

use std::io::{self, Write};

use super::{SweepResult, TrialStats};

pub const TRIAL_HEADER: &str = "trial_id,averaged_f1,f1_of_averages,delta";
pub const SWEEP_HEADER: &str = "x,y,mean_delta,mean_averaged_f1,mean_f1_of_averages";

/// Formats `v` like C's `%.17g`.
pub fn format_sig17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub fn write_trials<W: Write>(mut w: W, stats: &TrialStats) -> io::Result<()> {
    writeln!(w, "{TRIAL_HEADER}")?;
    for (k, r) in stats.reports.iter().enumerate() {
        writeln!(
            w,
            "{k},{},{},{}",
            format_sig17(r.averaged_f1),
            format_sig17(r.f1_of_averages),
            format_sig17(r.delta_direct)
        )?;
    }
    Ok(())
}

/// One row per cell, `y` outer and `x` inner.
pub fn write_sweep<W: Write>(mut w: W, res: &SweepResult) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for (yi, &y) in res.y_values.iter().enumerate() {
        for (xi, &x) in res.x_values.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{}",
                format_sig17(x),
                format_sig17(y),
                format_sig17(res.mean_delta[yi][xi]),
                format_sig17(res.mean_averaged_f1[yi][xi]),
                format_sig17(res.mean_f1_of_averages[yi][xi])
            )?;
        }
    }
    Ok(())
}
