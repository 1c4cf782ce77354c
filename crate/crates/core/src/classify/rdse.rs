use rayon::prelude::*;
use serde::Serialize;

use super::{FullClassification, LpSolveCounts, OrientedClass, ParetoClass, RouteResult};
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};
use crate::models::{solve_rdse_stages, Direction, Orientation, RdseResult, SlackStage};

/// Coarse radial classification: efficiency without the boundary/interior split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FarrellLabel {
    E,
    #[serde(rename = "E'")]
    Eprime,
    WE,
    NE,
}

/// Sign-based reading shared by the radial and Pareto directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reading {
    Extreme,
    NonExtreme,
    Weak,
    Inefficient,
}

fn read(result: &RdseResult, ds: &Dataset, config: &ToleranceConfig) -> Reading {
    match result {
        RdseResult::Infeasible => Reading::Extreme,
        RdseResult::Solved(sol) if sol.beta > 0.0 => Reading::Extreme,
        RdseResult::Solved(sol) if sol.beta < 0.0 => Reading::Inefficient,
        RdseResult::Solved(sol) => {
            let null_slack = (ds.m() + ds.s()) as f64 * config.feas_tol;
            if !sol.slacks_maximized || sol.slack_sum() > null_slack {
                Reading::Weak
            } else {
                Reading::NonExtreme
            }
        }
    }
}

fn require_nonnegative(ds: &Dataset) -> Result<()> {
    if ds.is_nonnegative() {
        Ok(())
    } else {
        Err(DeaError::UnsupportedRelation(
            "radial super-efficiency directions require nonnegative data".into(),
        ))
    }
}

fn farrell_direction(ds: &Dataset, o: usize, orientation: Orientation) -> Direction {
    match orientation {
        Orientation::Input => Direction::farrell_input(ds, o),
        Orientation::Output => Direction::farrell_output(ds, o),
    }
}

fn farrell_stages(
    ds: &Dataset,
    o: usize,
    orientation: Orientation,
    config: &ToleranceConfig,
    stage: SlackStage,
) -> Result<(FarrellLabel, usize)> {
    let g = farrell_direction(ds, o, orientation);
    let (result, second) = solve_rdse_stages(ds, o, &g, config, stage)?;
    let label = match read(&result, ds, config) {
        Reading::Extreme => FarrellLabel::E,
        Reading::NonExtreme => FarrellLabel::Eprime,
        Reading::Weak => FarrellLabel::WE,
        Reading::Inefficient => FarrellLabel::NE,
    };
    Ok((label, second))
}

fn pareto_stages(
    ds: &Dataset,
    o: usize,
    config: &ToleranceConfig,
    stage: SlackStage,
) -> Result<(ParetoClass, usize)> {
    let g = Direction::pareto(ds.m(), ds.s());
    let (result, second) = solve_rdse_stages(ds, o, &g, config, stage)?;
    let label = match read(&result, ds, config) {
        Reading::Extreme => ParetoClass::E,
        Reading::NonExtreme => ParetoClass::Eprime,
        Reading::Weak => ParetoClass::WEP,
        Reading::Inefficient => ParetoClass::NEP,
    };
    Ok((label, second))
}

/// Radial super-efficiency label of unit `o` in one orientation, using the
/// direction `(x_o, 0)` for inputs or `(0, y_o)` for outputs.
pub fn classify_rdse_farrell(
    ds: &Dataset,
    o: usize,
    orientation: Orientation,
    config: &ToleranceConfig,
) -> Result<FarrellLabel> {
    require_nonnegative(ds)?;
    farrell_stages(ds, o, orientation, config, SlackStage::WhenBetaZero).map(|(l, _)| l)
}

/// Pareto label of unit `o` from the direction `(1, 1)`; valid for data of any sign.
pub fn classify_rdse_pareto(ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<ParetoClass> {
    pareto_stages(ds, o, config, SlackStage::WhenBetaZero).map(|(l, _)| l)
}

/// Pareto-only classification of every unit; the route used for data with
/// negative values. Oriented labels are left empty.
pub fn classify_all_rdse_pareto(ds: &Dataset, config: &ToleranceConfig) -> Result<RouteResult> {
    config.validate()?;
    let labels = (0..ds.n())
        .into_par_iter()
        .map(|o| pareto_stages(ds, o, config, SlackStage::WhenBetaZero))
        .collect::<Result<Vec<_>>>()?;
    let stage_two = labels.iter().map(|(_, c)| c).sum();
    let units = labels
        .into_iter()
        .enumerate()
        .map(|(o, (pareto, _))| FullClassification {
            index: o,
            name: ds.name(o).to_string(),
            pareto,
            input: None,
            output: None,
            evidence: None,
        })
        .collect();
    Ok(RouteResult {
        units,
        lp_solves: LpSolveCounts {
            stage_one: ds.n(),
            stage_two,
        },
    })
}

fn strong_label(label: FarrellLabel) -> Option<(OrientedClass, ParetoClass)> {
    match label {
        FarrellLabel::E => Some((OrientedClass::E, ParetoClass::E)),
        FarrellLabel::Eprime => Some((OrientedClass::Eprime, ParetoClass::Eprime)),
        _ => None,
    }
}

fn oriented(label: FarrellLabel, pareto: ParetoClass) -> OrientedClass {
    match label {
        FarrellLabel::E => OrientedClass::E,
        FarrellLabel::Eprime => OrientedClass::Eprime,
        FarrellLabel::WE => OrientedClass::WE,
        FarrellLabel::NE if pareto == ParetoClass::NEP => OrientedClass::NN,
        FarrellLabel::NE => OrientedClass::NW,
    }
}

/// Classical three-step procedure:
///
/// 1. radial input label for every unit (slack stage only when `beta* = 0`);
/// 2. radial output label for units weakly efficient or inefficient in inputs;
/// 3. Pareto label for units inefficient in either orientation.
///
/// Steps 2 and 3 only need the sign of `beta*`, so they skip the slack stage.
pub fn classify_three_pass(ds: &Dataset, config: &ToleranceConfig) -> Result<RouteResult> {
    config.validate()?;
    require_nonnegative(ds)?;
    let n = ds.n();
    let mut counts = LpSolveCounts::default();

    let step1 = (0..n)
        .into_par_iter()
        .map(|o| farrell_stages(ds, o, Orientation::Input, config, SlackStage::WhenBetaZero))
        .collect::<Result<Vec<_>>>()?;
    counts.stage_one += n;
    counts.stage_two += step1.iter().map(|(_, c)| c).sum::<usize>();
    let input: Vec<FarrellLabel> = step1.into_iter().map(|(l, _)| l).collect();

    let output = (0..n)
        .into_par_iter()
        .map(|o| match input[o] {
            FarrellLabel::WE | FarrellLabel::NE => {
                farrell_stages(ds, o, Orientation::Output, config, SlackStage::Never).map(|(l, _)| (l, true))
            }
            strong => Ok((strong, false)),
        })
        .collect::<Result<Vec<_>>>()?;
    counts.stage_one += output.iter().filter(|(_, solved)| *solved).count();
    let output: Vec<FarrellLabel> = output.into_iter().map(|(l, _)| l).collect();

    let pareto = (0..n)
        .into_par_iter()
        .map(|o| {
            if let Some((_, p)) = strong_label(input[o]) {
                Ok((p, false))
            } else if input[o] == FarrellLabel::NE || output[o] == FarrellLabel::NE {
                pareto_stages(ds, o, config, SlackStage::Never).map(|(p, _)| (p, true))
            } else {
                // Weakly efficient in both orientations lies on the boundary.
                Ok((ParetoClass::WEP, false))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    counts.stage_one += pareto.iter().filter(|(_, solved)| *solved).count();

    let units = pareto
        .into_iter()
        .enumerate()
        .map(|(o, (pareto, _))| FullClassification {
            index: o,
            name: ds.name(o).to_string(),
            pareto,
            input: Some(oriented(input[o], pareto)),
            output: Some(oriented(output[o], pareto)),
            evidence: None,
        })
        .collect();
    Ok(RouteResult {
        units,
        lp_solves: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_all_unified;
    use crate::classify::fixtures::{table1, table4};

    #[test]
    fn farrell_labels_on_table1() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        let input: Vec<_> = (0..8)
            .map(|o| classify_rdse_farrell(&ds, o, Orientation::Input, &cfg).unwrap())
            .collect();
        use FarrellLabel::*;
        assert_eq!(input, [E, E, E, Eprime, NE, WE, NE, NE]);
        let output: Vec<_> = (0..8)
            .map(|o| classify_rdse_farrell(&ds, o, Orientation::Output, &cfg).unwrap())
            .collect();
        assert_eq!(output, [E, E, E, Eprime, NE, NE, WE, NE]);
    }

    #[test]
    fn pareto_labels_on_both_examples() {
        let cfg = ToleranceConfig::default();
        let ds = table1();
        assert_eq!(classify_rdse_pareto(&ds, 7, &cfg).unwrap(), ParetoClass::NEP);
        assert_eq!(classify_rdse_pareto(&ds, 5, &cfg).unwrap(), ParetoClass::WEP);
        let r = classify_all_rdse_pareto(&table4(), &cfg).unwrap();
        let labels: Vec<&str> = r.units.iter().map(|u| u.pareto.as_str()).collect();
        assert_eq!(labels, ["WEP", "E", "E", "E'", "E", "WEP", "NEP", "NEP"]);
    }

    #[test]
    fn three_pass_matches_unified_and_counts_solves() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        let three = classify_three_pass(&ds, &cfg).unwrap();
        let unified = classify_all_unified(&ds, &cfg).unwrap();
        for (a, b) in three.units.iter().zip(&unified.units) {
            assert_eq!(
                (a.pareto, a.input, a.output),
                (b.pareto, b.input, b.output),
                "unit {}",
                a.name
            );
        }
        // n + |WE_I u NE_I| + |NE_I u NE_O| = 8 + 4 + 4; slack stages for D and F.
        assert_eq!(
            three.lp_solves,
            LpSolveCounts {
                stage_one: 16,
                stage_two: 2
            }
        );
    }

    #[test]
    fn oriented_routes_reject_negative_data() {
        let cfg = ToleranceConfig::default();
        let ds = table4();
        assert!(matches!(
            classify_three_pass(&ds, &cfg),
            Err(DeaError::UnsupportedRelation(_))
        ));
        assert!(classify_rdse_farrell(&ds, 0, Orientation::Input, &cfg).is_err());
    }
}
