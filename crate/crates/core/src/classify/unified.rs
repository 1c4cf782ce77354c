use rayon::prelude::*;

use super::{FullClassification, LpSolveCounts, OrientedClass, ParetoClass, RouteResult};
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::dominance::n_plus;
use crate::error::Result;
use crate::models::{solve_unified, UnifiedOutcome};

/// Classifies unit `o` from one solve of the dominance program.
pub fn classify_unified(ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<FullClassification> {
    let outcome = solve_unified(ds, o, config)?;
    Ok(from_outcome(ds, o, outcome, config))
}

/// Classifies every unit with exactly one LP solve each.
pub fn classify_all_unified(ds: &Dataset, config: &ToleranceConfig) -> Result<RouteResult> {
    config.validate()?;
    let units = (0..ds.n())
        .into_par_iter()
        .map(|o| classify_unified(ds, o, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(RouteResult {
        units,
        lp_solves: LpSolveCounts {
            stage_one: ds.n(),
            stage_two: 0,
        },
    })
}

pub(crate) fn from_outcome(
    ds: &Dataset,
    o: usize,
    outcome: UnifiedOutcome,
    config: &ToleranceConfig,
) -> FullClassification {
    let oriented = ds.is_nonnegative();
    let (pareto, input, output) = match &outcome {
        UnifiedOutcome::Infeasible => (ParetoClass::E, Some(OrientedClass::E), Some(OrientedClass::E)),
        UnifiedOutcome::Feasible(sol) if sol.total() == 0 => (
            ParetoClass::Eprime,
            Some(OrientedClass::Eprime),
            Some(OrientedClass::Eprime),
        ),
        UnifiedOutcome::Feasible(sol) => {
            let pareto = if sol.total() == ds.m() + ds.s() {
                ParetoClass::NEP
            } else {
                ParetoClass::WEP
            };
            let inefficient = if pareto == ParetoClass::NEP {
                OrientedClass::NN
            } else {
                OrientedClass::NW
            };
            // Only improvements on positive components count: raising an
            // output that is zero says nothing about the observed ones.
            let label = |indicators: &[u8], v: &[f64]| {
                let improved = indicators
                    .iter()
                    .zip(v)
                    .filter(|(&t, &c)| t == 1 && c > config.pos_tol)
                    .count();
                if improved == n_plus(v, config.pos_tol) {
                    inefficient
                } else {
                    OrientedClass::WE
                }
            };
            (
                pareto,
                Some(label(&sol.indicators_minus, ds.x(o))),
                Some(label(&sol.indicators_plus, ds.y(o))),
            )
        }
    };
    FullClassification {
        index: o,
        name: ds.name(o).to_string(),
        pareto,
        input: input.filter(|_| oriented),
        output: output.filter(|_| oriented),
        evidence: Some(outcome),
    }
}
