//! Efficiency classifications derived from solver results.
//!
//! Two independent routes produce the same [`FullClassification`] shape:
//! the single-stage dominance program ([`classify_all_unified`]) and the
//! classical three-pass super-efficiency procedure ([`classify_three_pass`]).
//! [`cross_validate`] runs both and compares them unit by unit.

mod crossval;
mod dominator;
mod rdse;
mod unified;

use std::fmt;

use serde::Serialize;

use crate::models::UnifiedOutcome;

pub use crossval::{compare_routes, cross_validate, CrossValidationReport, LabelPair, UnitComparison};
pub use dominator::{
    lift_dominating_point, reconstruct_dominator, unified_system_violation, verify_membership, LiftedSolution,
};
pub use rdse::{
    classify_all_rdse_pareto, classify_rdse_farrell, classify_rdse_pareto, classify_three_pass, FarrellLabel,
};
pub use unified::{classify_all_unified, classify_unified};

/// Oriented (input or output) class of a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrientedClass {
    /// Extreme efficient.
    E,
    /// Efficient but not extreme.
    #[serde(rename = "E'")]
    Eprime,
    /// Weakly but not strongly efficient.
    WE,
    /// Inefficient, on the boundary of the technology.
    NW,
    /// Inefficient, in the interior of the technology.
    NN,
}

impl OrientedClass {
    pub const ALL: [OrientedClass; 5] = [Self::E, Self::Eprime, Self::WE, Self::NW, Self::NN];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::E => "E",
            Self::Eprime => "E'",
            Self::WE => "WE",
            Self::NW => "NW",
            Self::NN => "NN",
        }
    }

    pub fn is_strongly_efficient(self) -> bool {
        matches!(self, Self::E | Self::Eprime)
    }
}

/// Pareto-sense class of a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParetoClass {
    E,
    #[serde(rename = "E'")]
    Eprime,
    /// Weakly but not strongly Pareto efficient.
    WEP,
    /// Pareto inefficient.
    NEP,
}

impl ParetoClass {
    pub const ALL: [ParetoClass; 4] = [Self::E, Self::Eprime, Self::WEP, Self::NEP];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::E => "E",
            Self::Eprime => "E'",
            Self::WEP => "WEP",
            Self::NEP => "NEP",
        }
    }

    pub fn is_strongly_efficient(self) -> bool {
        matches!(self, Self::E | Self::Eprime)
    }
}

impl fmt::Display for OrientedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for ParetoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Labels of one unit in all three senses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullClassification {
    pub index: usize,
    pub name: String,
    pub pareto: ParetoClass,
    /// `None` when the data contain negative values.
    pub input: Option<OrientedClass>,
    pub output: Option<OrientedClass>,
    /// The dominance-program result, for the unified route only.
    pub evidence: Option<UnifiedOutcome>,
}

impl FullClassification {
    /// Strong efficiency must agree across input, output and Pareto labels.
    pub fn is_consistent(&self) -> bool {
        let p = self.pareto.is_strongly_efficient();
        self.input.is_none_or(|c| c.is_strongly_efficient() == p)
            && self.output.is_none_or(|c| c.is_strongly_efficient() == p)
    }
}

/// Stage-level LP solve counts for one route.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LpSolveCounts {
    pub stage_one: usize,
    pub stage_two: usize,
}

impl LpSolveCounts {
    pub fn total(&self) -> usize {
        self.stage_one + self.stage_two
    }
}

/// Labels for every unit, in input order, with the work performed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteResult {
    pub units: Vec<FullClassification>,
    pub lp_solves: LpSolveCounts,
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_requires_matching_strong_efficiency() {
        let mut c = FullClassification {
            index: 0,
            name: "A".into(),
            pareto: ParetoClass::E,
            input: Some(OrientedClass::E),
            output: Some(OrientedClass::E),
            evidence: None,
        };
        assert!(c.is_consistent());
        c.output = Some(OrientedClass::WE);
        assert!(!c.is_consistent());
        c.output = None;
        assert!(c.is_consistent());
    }

    #[test]
    fn labels_render_with_prime() {
        assert_eq!(OrientedClass::Eprime.to_string(), "E'");
        assert_eq!(ParetoClass::NEP.to_string(), "NEP");
        assert_eq!(serde_json::to_string(&ParetoClass::Eprime).unwrap(), "\"E'\"");
    }
}
