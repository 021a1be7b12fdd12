//! Two ways to compute "macro F1" and how far apart they can be.
//!
//! [`confusion`] holds the confusion matrix and per-class metrics,
//! [`metrics`] the two macro aggregations, their gap and its bounds, and
//! [`simulation`] a seeded Monte-Carlo harness for random classifiers.

pub mod confusion;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod simulation;

pub use confusion::{harmonic_mean, ClassMetrics, ConfusionMatrix};
pub use error::{Error, Result};
pub use metrics::{
    averaged_f1, delta_closed_form, delta_direct, divergence_condition, extremal_delta,
    extremal_matrix, f1_of_averages, macro_report, opposing_skew_pair, supremum_bound,
    ExtremalConfig, MacroReport, DIVERGENCE_TOLERANCE,
};
