use serde::Serialize;

use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::dominance::{n_plus, IoPoint};
use crate::error::{DeaError, Result};
use crate::lp::{self, LpProblem, Relation, Sense};
use crate::models::{build_unified, UnifiedOutcome};

/// Point of the reference technology that dominates unit `o`, read off a
/// feasible dominance-program solution as `(x_o - t-/sigma, y_o + t+/sigma)`.
pub fn reconstruct_dominator(outcome: &UnifiedOutcome, ds: &Dataset, o: usize) -> Result<IoPoint> {
    ds.check_unit(o)?;
    let sol = outcome.solution().ok_or_else(|| {
        DeaError::Precondition(format!(
            "unit {} has no dominating point: the dominance program is infeasible",
            ds.name(o)
        ))
    })?;
    if sol.t_minus.len() != ds.m() || sol.t_plus.len() != ds.s() || sol.delta.len() + 1 != ds.n() {
        return Err(DeaError::Dimension(format!(
            "solution shape does not match dataset for unit {}",
            ds.name(o)
        )));
    }
    if sol.sigma <= 0.0 {
        return Err(DeaError::Precondition(format!(
            "non-positive weight total {}",
            sol.sigma
        )));
    }
    let x = ds
        .x(o)
        .iter()
        .zip(&sol.t_minus)
        .map(|(v, t)| v - t / sol.sigma)
        .collect();
    let y = ds
        .y(o)
        .iter()
        .zip(&sol.t_plus)
        .map(|(v, t)| v + t / sol.sigma)
        .collect();
    Ok(IoPoint::new(x, y))
}

/// Whether `point` lies in the variable-returns technology spanned by every
/// unit except `o`.
pub fn verify_membership(point: &IoPoint, ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<bool> {
    ds.check_unit(o)?;
    if point.x.len() != ds.m() || point.y.len() != ds.s() {
        return Err(DeaError::Dimension(format!(
            "point has {}+{} coordinates, dataset has {}+{}",
            point.x.len(),
            point.y.len(),
            ds.m(),
            ds.s()
        )));
    }
    let reduced = ds.reduced(o)?;
    let k = reduced.len();
    let mut problem = LpProblem::new(Sense::Minimize, vec![0.0; k]);
    for i in 0..ds.m() {
        let row = (0..k).map(|c| reduced.x(c)[i]).collect();
        problem.add_row(row, Relation::Le, point.x[i]);
    }
    for r in 0..ds.s() {
        let row = (0..k).map(|c| reduced.y(c)[r]).collect();
        problem.add_row(row, Relation::Ge, point.y[r]);
    }
    problem.add_row(vec![1.0; k], Relation::Eq, 1.0);
    Ok(lp::solve(&problem, config)?.is_optimal())
}

/// Feasible point of the dominance program built from a dominating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftedSolution {
    pub delta: Vec<f64>,
    pub t_minus: Vec<f64>,
    pub t_plus: Vec<f64>,
    pub sigma: f64,
}

/// Scales the intensity witness `mu` of `point` into a feasible solution of
/// the dominance program for unit `o`, with one indicator per positive slack.
///
/// `mu` ranges over the units other than `o`, in index order.
pub fn lift_dominating_point(
    point: &IoPoint,
    mu: &[f64],
    ds: &Dataset,
    o: usize,
    config: &ToleranceConfig,
) -> Result<LiftedSolution> {
    ds.check_unit(o)?;
    let reduced = ds.reduced(o)?;
    if mu.len() != reduced.len() || point.x.len() != ds.m() || point.y.len() != ds.s() {
        return Err(DeaError::Dimension(format!(
            "witness of length {} or point shape does not match dataset for unit {}",
            mu.len(),
            ds.name(o)
        )));
    }
    let tol = config.feas_tol;
    let scale = |v: &[f64]| tol * (1.0 + v.iter().fold(0.0f64, |a, b| a.max(b.abs())));
    let reject = |what: &str| {
        Err(DeaError::Precondition(format!(
            "point is not a dominating point of unit {}: {what}",
            ds.name(o)
        )))
    };
    if mu.iter().any(|&w| w < -tol) || (mu.iter().sum::<f64>() - 1.0).abs() > tol * (1 + mu.len()) as f64 {
        return reject("witness is not a convex combination");
    }
    let s_minus: Vec<f64> = ds.x(o).iter().zip(&point.x).map(|(a, b)| a - b).collect();
    let s_plus: Vec<f64> = point.y.iter().zip(ds.y(o)).map(|(a, b)| a - b).collect();
    let slack_tol = scale(ds.x(o)).max(scale(ds.y(o)));
    if s_minus.iter().chain(&s_plus).any(|&v| v < -slack_tol) {
        return reject("point is not in the dominance cone");
    }
    for i in 0..ds.m() {
        let used: f64 = (0..reduced.len()).map(|c| mu[c] * reduced.x(c)[i]).sum();
        if used > point.x[i] + scale(&point.x) {
            return reject("witness uses more input than the point");
        }
    }
    for r in 0..ds.s() {
        let made: f64 = (0..reduced.len()).map(|c| mu[c] * reduced.y(c)[r]).sum();
        if made < point.y[r] - scale(&point.y) {
            return reject("witness produces less output than the point");
        }
    }

    let positive = |v: &f64| *v > config.pos_tol;
    let smallest = |v: &[f64]| v.iter().copied().filter(positive).fold(f64::INFINITY, f64::min);
    let sigma = [1.0, 1.0 / smallest(&s_minus), 1.0 / smallest(&s_plus)]
        .into_iter()
        .filter(|v| v.is_finite())
        .fold(1.0f64, f64::max);
    let indicator = |v: &f64| if positive(v) { 1.0 } else { 0.0 };
    let lifted = LiftedSolution {
        delta: mu.iter().map(|w| sigma * w.max(0.0)).collect(),
        t_minus: s_minus.iter().map(indicator).collect(),
        t_plus: s_plus.iter().map(indicator).collect(),
        sigma,
    };
    debug_assert_eq!(
        lifted.t_minus.iter().sum::<f64>() as usize,
        n_plus(&s_minus, config.pos_tol)
    );
    Ok(lifted)
}

/// Largest row or bound violation of `(delta, t_minus, t_plus)` in the
/// dominance program of unit `o`.
pub fn unified_system_violation(
    ds: &Dataset,
    o: usize,
    delta: &[f64],
    t_minus: &[f64],
    t_plus: &[f64],
) -> Result<f64> {
    let problem = build_unified(ds, o)?;
    let mut x = Vec::with_capacity(problem.num_vars());
    x.extend_from_slice(delta);
    x.extend_from_slice(t_minus);
    x.extend_from_slice(t_plus);
    if x.len() != problem.num_vars() {
        return Err(DeaError::Dimension(format!(
            "expected {} variables, got {}",
            problem.num_vars(),
            x.len()
        )));
    }
    Ok(problem.max_violation(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::fixtures::{table1, table4};
    use crate::dominance::{strongly_pareto_dominates, weakly_pareto_dominates};
    use crate::models::solve_unified;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(u, v)| (u - v).abs() < 1e-9)
    }

    #[test]
    fn non_extreme_unit_reconstructs_itself() {
        let ds = table1();
        let outcome = solve_unified(&ds, 3, &cfg()).unwrap();
        let p = reconstruct_dominator(&outcome, &ds, 3).unwrap();
        assert!(close(&p.x, ds.x(3)) && close(&p.y, ds.y(3)));
        assert!(verify_membership(&p, &ds, 3, &cfg()).unwrap());
    }

    #[test]
    fn interior_unit_is_strongly_dominated() {
        let ds = table1();
        let outcome = solve_unified(&ds, 7, &cfg()).unwrap();
        let p = reconstruct_dominator(&outcome, &ds, 7).unwrap();
        assert!(strongly_pareto_dominates(&p, &ds.point(7), 1e-9).unwrap());
        assert!(verify_membership(&p, &ds, 7, &cfg()).unwrap());
    }

    #[test]
    fn negative_data_dominator_reduces_input_only() {
        let ds = table4();
        let outcome = solve_unified(&ds, 5, &cfg()).unwrap();
        let p = reconstruct_dominator(&outcome, &ds, 5).unwrap();
        assert!(p.x[0] < ds.x(5)[0] - 1e-9);
        assert!((p.y[0] - ds.y(5)[0]).abs() < 1e-9);
        assert!(weakly_pareto_dominates(&p, &ds.point(5), 1e-9).unwrap());
        assert!(verify_membership(&p, &ds, 5, &cfg()).unwrap());
    }

    #[test]
    fn infeasible_outcome_has_no_dominator() {
        let ds = table1();
        let outcome = solve_unified(&ds, 0, &cfg()).unwrap();
        assert!(matches!(
            reconstruct_dominator(&outcome, &ds, 0),
            Err(DeaError::Precondition(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let ds = table1();
        assert!(verify_membership(&ds.point(7), &ds, 7, &cfg()).unwrap());
        let far = IoPoint::new(vec![0.0, 0.0], vec![5.0]);
        assert!(!verify_membership(&far, &ds, 7, &cfg()).unwrap());
        let neg = table4();
        assert!(verify_membership(&neg.point(3), &neg, 3, &cfg()).unwrap());
    }

    #[test]
    fn lift_of_strong_dominator() {
        let ds = table1();
        // Unit B as witness for H: reference set excludes H, so B sits at position 1.
        let mut mu = vec![0.0; 7];
        mu[1] = 1.0;
        let lifted = lift_dominating_point(&ds.point(1), &mu, &ds, 7, &cfg()).unwrap();
        assert_eq!(lifted.t_minus, [1.0, 1.0]);
        assert_eq!(lifted.t_plus, [1.0]);
        assert_eq!(lifted.sigma, 1.0);
        let v = unified_system_violation(&ds, 7, &lifted.delta, &lifted.t_minus, &lifted.t_plus).unwrap();
        assert!(v <= 1e-9);
    }

    #[test]
    fn lift_scales_small_slacks() {
        let ds = table1();
        // Half of the way from H to B: slacks (1, 1.5; 0.5), so sigma' = 2.
        let mut mu = vec![0.0; 7];
        mu[1] = 0.5;
        mu[6] = 0.5;
        let p = IoPoint::new(vec![3.0, 2.5], vec![1.5]);
        let lifted = lift_dominating_point(&p, &mu, &ds, 7, &cfg()).unwrap();
        assert_eq!(lifted.sigma, 2.0);
        let v = unified_system_violation(&ds, 7, &lifted.delta, &lifted.t_minus, &lifted.t_plus).unwrap();
        assert!(v <= 1e-9, "violation {v}");
    }

    #[test]
    fn lift_of_observed_point_is_zero() {
        let ds = table1();
        // D = (A + C) / 2; reference set excludes D so C stays at position 2.
        let mut mu = vec![0.0; 7];
        mu[0] = 0.5;
        mu[2] = 0.5;
        let lifted = lift_dominating_point(&ds.point(3), &mu, &ds, 3, &cfg()).unwrap();
        assert_eq!(lifted.sigma, 1.0);
        assert!(lifted.t_minus.iter().chain(&lifted.t_plus).all(|&t| t == 0.0));
    }

    #[test]
    fn lift_rejects_bad_witness() {
        let ds = table1();
        let mut mu = vec![0.0; 7];
        mu[6] = 1.0;
        // G = (4,4;2) cannot produce a point using less input than itself.
        assert!(matches!(
            lift_dominating_point(&ds.point(1), &mu, &ds, 7, &cfg()),
            Err(DeaError::Precondition(_))
        ));
        let p = IoPoint::new(vec![5.0, 5.0], vec![1.0]);
        assert!(lift_dominating_point(&p, &mu, &ds, 7, &cfg()).is_err());
    }
}
