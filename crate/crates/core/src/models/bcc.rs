use serde::Serialize;

use super::{snap, Orientation};
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};
use crate::lp::{self, LpOutcome, LpProblem, Relation, Sense};

/// Two-stage radial VRS efficiency result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BccResult {
    pub orientation: Orientation,
    /// `theta` for input orientation, `phi` for output orientation.
    pub theta_or_phi: f64,
    pub lambda: Vec<f64>,
    pub s_minus: Vec<f64>,
    pub s_plus: Vec<f64>,
}

impl BccResult {
    pub fn slack_sum(&self) -> f64 {
        self.s_minus.iter().chain(&self.s_plus).sum()
    }
}

/// Input-oriented BCC: minimize `theta`, then maximize slacks at `theta*`.
pub fn solve_bcc_input(ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<BccResult> {
    solve_bcc(ds, o, Orientation::Input, config)
}

/// Output-oriented BCC: maximize `phi` with `X lambda + s- = x_o`,
/// `Y lambda - s+ = phi y_o`, `1'lambda = 1`, then maximize slacks.
pub fn solve_bcc_output(ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<BccResult> {
    solve_bcc(ds, o, Orientation::Output, config)
}

// Variable layout: [score, lambda (n), s- (m), s+ (s)].
fn build(ds: &Dataset, o: usize, orientation: Orientation, stage_one: bool) -> LpProblem {
    let (n, m, s) = (ds.n(), ds.m(), ds.s());
    let width = 1 + n + m + s;
    let mut objective = vec![0.0; width];
    let sense = if stage_one {
        objective[0] = 1.0;
        match orientation {
            Orientation::Input => Sense::Minimize,
            Orientation::Output => Sense::Maximize,
        }
    } else {
        for c in objective.iter_mut().skip(1 + n) {
            *c = 1.0;
        }
        Sense::Maximize
    };
    let mut lp = LpProblem::new(sense, objective);
    lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);

    for i in 0..m {
        let mut row = vec![0.0; width];
        for j in 0..n {
            row[1 + j] = ds.x(j)[i];
        }
        row[1 + n + i] = 1.0;
        let rhs = match orientation {
            Orientation::Input => {
                row[0] = -ds.x(o)[i];
                0.0
            }
            Orientation::Output => ds.x(o)[i],
        };
        lp.add_row(row, Relation::Eq, rhs);
    }
    for r in 0..s {
        let mut row = vec![0.0; width];
        for j in 0..n {
            row[1 + j] = ds.y(j)[r];
        }
        row[1 + n + m + r] = -1.0;
        let rhs = match orientation {
            Orientation::Input => ds.y(o)[r],
            Orientation::Output => {
                row[0] = -ds.y(o)[r];
                0.0
            }
        };
        lp.add_row(row, Relation::Eq, rhs);
    }
    let mut convexity = vec![0.0; width];
    for c in convexity.iter_mut().skip(1).take(n) {
        *c = 1.0;
    }
    lp.add_row(convexity, Relation::Eq, 1.0);
    lp
}

fn solve_bcc(
    ds: &Dataset,
    o: usize,
    orientation: Orientation,
    config: &ToleranceConfig,
) -> Result<BccResult> {
    ds.check_unit(o)?;
    if !ds.is_nonnegative() {
        return Err(DeaError::UnsupportedRelation(
            "radial BCC efficiency requires nonnegative data".into(),
        ));
    }
    let radial = match orientation {
        Orientation::Input => ds.x(o),
        Orientation::Output => ds.y(o),
    };
    if radial.iter().all(|&v| v <= config.pos_tol) {
        return Err(DeaError::Precondition(format!(
            "unit {} has no positive {:?} component to scale radially",
            ds.name(o),
            orientation
        )));
    }

    let stage_one = match lp::solve(&build(ds, o, orientation, true), config)? {
        LpOutcome::Optimal(sol) => sol,
        other => {
            return Err(DeaError::Internal(format!(
                "BCC stage one for unit {} returned {:?}",
                ds.name(o),
                other
            )))
        }
    };
    let score = snap(stage_one.x[0], 1.0, config.pos_tol);

    let mut second = build(ds, o, orientation, false);
    second.set_bounds(0, score, score);
    let sol = match lp::solve(&second, config)? {
        LpOutcome::Optimal(sol) => sol,
        other => {
            return Err(DeaError::Internal(format!(
                "BCC stage two for unit {} returned {:?}",
                ds.name(o),
                other
            )))
        }
    };
    let (n, m) = (ds.n(), ds.m());
    Ok(BccResult {
        orientation,
        theta_or_phi: score,
        lambda: sol.x[1..1 + n].to_vec(),
        s_minus: sol.x[1 + n..1 + n + m].to_vec(),
        s_plus: sol.x[1 + n + m..].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> Dataset {
        Dataset::from_matrices(
            "ABCDEFGH".chars().map(String::from).collect(),
            &[
                vec![0.0, 2.0, 0.0, 0.0, 0.0, 2.0, 4.0, 4.0],
                vec![1.0, 1.0, 2.0, 1.5, 4.0, 1.0, 4.0, 4.0],
            ],
            &[vec![1.0, 2.0, 2.0, 1.5, 1.0, 1.0, 2.0, 1.0]],
        )
        .unwrap()
    }

    #[test]
    fn input_orientation_examples() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        let a = solve_bcc_input(&ds, 0, &cfg).unwrap();
        assert_eq!(a.theta_or_phi, 1.0);
        assert!(a.slack_sum() < 1e-9);

        let g = solve_bcc_input(&ds, 6, &cfg).unwrap();
        assert!((g.theta_or_phi - 1.0 / 3.0).abs() < 1e-9);

        let f = solve_bcc_input(&ds, 5, &cfg).unwrap();
        assert_eq!(f.theta_or_phi, 1.0);
        assert!(f.slack_sum() > 1e-6);
    }

    #[test]
    fn output_orientation_examples() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        let b = solve_bcc_output(&ds, 1, &cfg).unwrap();
        assert_eq!(b.theta_or_phi, 1.0);
        assert!(b.slack_sum() < 1e-9);

        let h = solve_bcc_output(&ds, 7, &cfg).unwrap();
        assert!((h.theta_or_phi - 2.0).abs() < 1e-9);

        let g = solve_bcc_output(&ds, 6, &cfg).unwrap();
        assert_eq!(g.theta_or_phi, 1.0);
        assert!(g.s_minus.iter().sum::<f64>() > 1e-6);
    }

    #[test]
    fn lambda_is_a_convex_weight() {
        let ds = table1();
        let r = solve_bcc_input(&ds, 7, &ToleranceConfig::default()).unwrap();
        assert!(r.lambda.iter().all(|&l| l >= -1e-12));
        assert!((r.lambda.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(r.theta_or_phi > 0.0 && r.theta_or_phi <= 1.0);
    }

    #[test]
    fn rejects_degenerate_units() {
        let ds = Dataset::from_units(vec![vec![0.0], vec![1.0]], vec![vec![1.0], vec![0.0]]).unwrap();
        let cfg = ToleranceConfig::default();
        assert!(matches!(
            solve_bcc_input(&ds, 0, &cfg),
            Err(DeaError::Precondition(_))
        ));
        assert!(matches!(
            solve_bcc_output(&ds, 1, &cfg),
            Err(DeaError::Precondition(_))
        ));
        let neg = Dataset::from_units(vec![vec![-1.0]], vec![vec![1.0]]).unwrap();
        assert!(solve_bcc_input(&neg, 0, &cfg).is_err());
    }
}
