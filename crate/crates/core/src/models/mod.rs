//! Builders and two-stage drivers for the DEA linear programs.

mod bcc;
mod rdse;
mod unified;

use serde::Serialize;

pub use bcc::{solve_bcc_input, solve_bcc_output, BccResult};
pub use rdse::{solve_rdse, Direction, RdseResult, RdseSolution};
pub use unified::{build_unified, solve_unified, solve_unified_with_rule, UnifiedOutcome, UnifiedSolution};

pub(crate) use rdse::{solve_rdse_stages, SlackStage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Input,
    Output,
}

/// Snaps values within `tol` of `target` onto it.
pub(crate) fn snap(value: f64, target: f64, tol: f64) -> f64 {
    if (value - target).abs() <= tol {
        target
    } else {
        value
    }
}
