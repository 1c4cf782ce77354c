use serde::Serialize;

use super::{
    classify_all_rdse_pareto, classify_all_unified, classify_three_pass, LpSolveCounts, OrientedClass,
    ParetoClass, RouteResult,
};
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};

/// Labels assigned to one unit by the two routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabelPair<T> {
    pub unified: T,
    pub rdse: T,
}

impl<T: PartialEq> LabelPair<T> {
    pub fn agrees(&self) -> bool {
        self.unified == self.rdse
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitComparison {
    pub index: usize,
    pub name: String,
    /// `None` for data with negative values.
    pub input: Option<LabelPair<OrientedClass>>,
    pub output: Option<LabelPair<OrientedClass>>,
    pub pareto: LabelPair<ParetoClass>,
}

impl UnitComparison {
    pub fn agrees(&self) -> bool {
        self.pareto.agrees()
            && self.input.as_ref().is_none_or(LabelPair::agrees)
            && self.output.as_ref().is_none_or(LabelPair::agrees)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidationReport {
    pub units: Vec<UnitComparison>,
    pub unified_solves: LpSolveCounts,
    pub rdse_solves: LpSolveCounts,
    /// Whether the oriented labels were compared (nonnegative data only).
    pub oriented_compared: bool,
    #[serde(skip)]
    pub unified: RouteResult,
    #[serde(skip)]
    pub rdse: RouteResult,
}

impl CrossValidationReport {
    pub fn agreement_count(&self) -> usize {
        self.units.iter().filter(|u| u.agrees()).count()
    }

    pub fn passed(&self) -> bool {
        self.agreement_count() == self.units.len()
    }
}

fn pair<T: Copy>(a: Option<T>, b: Option<T>) -> Option<LabelPair<T>> {
    Some(LabelPair {
        unified: a?,
        rdse: b?,
    })
}

/// Runs the dominance-program route and the super-efficiency route and
/// compares their labels unit by unit. Nonnegative data use the three-pass
/// procedure; otherwise only Pareto labels are compared.
pub fn cross_validate(ds: &Dataset, config: &ToleranceConfig) -> Result<CrossValidationReport> {
    let unified = classify_all_unified(ds, config)?;
    let rdse = if ds.is_nonnegative() {
        classify_three_pass(ds, config)?
    } else {
        classify_all_rdse_pareto(ds, config)?
    };
    compare_routes(unified, rdse)
}

/// Pairs up two route results computed on the same dataset.
pub fn compare_routes(unified: RouteResult, rdse: RouteResult) -> Result<CrossValidationReport> {
    if unified.units.len() != rdse.units.len() {
        return Err(DeaError::Dimension(format!(
            "routes classified {} and {} units",
            unified.units.len(),
            rdse.units.len()
        )));
    }
    let units: Vec<UnitComparison> = unified
        .units
        .iter()
        .zip(&rdse.units)
        .map(|(u, r)| UnitComparison {
            index: u.index,
            name: u.name.clone(),
            input: pair(u.input, r.input),
            output: pair(u.output, r.output),
            pareto: LabelPair {
                unified: u.pareto,
                rdse: r.pareto,
            },
        })
        .collect();
    let oriented_compared = units.iter().any(|u| u.input.is_some());
    Ok(CrossValidationReport {
        units,
        unified_solves: unified.lp_solves,
        rdse_solves: rdse.lp_solves,
        oriented_compared,
        unified,
        rdse,
    })
}
