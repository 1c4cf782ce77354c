use serde::Serialize;

use super::snap;
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};
use crate::lp::{self, LpOutcome, LpProblem, Relation, Sense};

/// Direction `(g-, g+)` along which inputs expand and outputs contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Direction {
    pub g_minus: Vec<f64>,
    pub g_plus: Vec<f64>,
}

impl Direction {
    pub fn new(g_minus: Vec<f64>, g_plus: Vec<f64>) -> Result<Self> {
        if g_minus
            .iter()
            .chain(&g_plus)
            .any(|&g| !(g >= 0.0 && g.is_finite()))
        {
            return Err(DeaError::Precondition(
                "direction components must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { g_minus, g_plus })
    }

    /// `(x_o, 0)`: radial input super-efficiency.
    pub fn farrell_input(ds: &Dataset, o: usize) -> Self {
        Self {
            g_minus: ds.x(o).to_vec(),
            g_plus: vec![0.0; ds.s()],
        }
    }

    /// `(0, y_o)`: radial output super-efficiency.
    pub fn farrell_output(ds: &Dataset, o: usize) -> Self {
        Self {
            g_minus: vec![0.0; ds.m()],
            g_plus: ds.y(o).to_vec(),
        }
    }

    /// `(1, 1)`: data-independent direction usable with negative data.
    pub fn pareto(m: usize, s: usize) -> Self {
        Self {
            g_minus: vec![1.0; m],
            g_plus: vec![1.0; s],
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.g_minus.iter().chain(&self.g_plus).all(|&g| g <= tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RdseSolution {
    pub beta: f64,
    /// Intensities over the reference set with `o` removed.
    pub mu: Vec<f64>,
    pub s_minus: Vec<f64>,
    pub s_plus: Vec<f64>,
    pub direction: Direction,
    /// False when only the first stage ran; slacks are then arbitrary.
    pub slacks_maximized: bool,
}

impl RdseSolution {
    pub fn slack_sum(&self) -> f64 {
        self.s_minus.iter().chain(&self.s_plus).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RdseResult {
    Infeasible,
    Solved(RdseSolution),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SlackStage {
    Always,
    WhenBetaZero,
    Never,
}

/// Radial directional super-efficiency, driven in two stages: minimize
/// `beta`, then fix `beta*` and maximize the slack sum.
pub fn solve_rdse(ds: &Dataset, o: usize, g: &Direction, config: &ToleranceConfig) -> Result<RdseResult> {
    solve_rdse_stages(ds, o, g, config, SlackStage::Always).map(|(r, _)| r)
}

// Variable layout: [beta, mu (n - 1), s- (m), s+ (s)].
fn build(ds: &Dataset, o: usize, g: &Direction, stage_one: bool) -> LpProblem {
    let (m, s) = (ds.m(), ds.s());
    let k = ds.n() - 1;
    let width = 1 + k + m + s;
    let mut objective = vec![0.0; width];
    let sense = if stage_one {
        objective[0] = 1.0;
        Sense::Minimize
    } else {
        for c in objective.iter_mut().skip(1 + k) {
            *c = 1.0;
        }
        Sense::Maximize
    };
    let mut lp = LpProblem::new(sense, objective);
    lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
    let reference: Vec<usize> = (0..ds.n()).filter(|&j| j != o).collect();

    for i in 0..m {
        let mut row = vec![0.0; width];
        row[0] = -g.g_minus[i];
        for (c, &j) in reference.iter().enumerate() {
            row[1 + c] = ds.x(j)[i];
        }
        row[1 + k + i] = 1.0;
        lp.add_row(row, Relation::Eq, ds.x(o)[i]);
    }
    for r in 0..s {
        let mut row = vec![0.0; width];
        row[0] = g.g_plus[r];
        for (c, &j) in reference.iter().enumerate() {
            row[1 + c] = ds.y(j)[r];
        }
        row[1 + k + m + r] = -1.0;
        lp.add_row(row, Relation::Eq, ds.y(o)[r]);
    }
    let mut convexity = vec![0.0; width];
    for c in convexity.iter_mut().skip(1).take(k) {
        *c = 1.0;
    }
    lp.add_row(convexity, Relation::Eq, 1.0);
    lp
}

/// Returns the result and the number of second-stage solves performed (0 or 1).
pub(crate) fn solve_rdse_stages(
    ds: &Dataset,
    o: usize,
    g: &Direction,
    config: &ToleranceConfig,
    slack_stage: SlackStage,
) -> Result<(RdseResult, usize)> {
    ds.check_unit(o)?;
    if g.g_minus.len() != ds.m() || g.g_plus.len() != ds.s() {
        return Err(DeaError::Dimension("direction does not match dataset".into()));
    }
    if g.is_zero(config.pos_tol) {
        return Err(DeaError::Precondition(format!(
            "direction for unit {} is zero",
            ds.name(o)
        )));
    }
    let (k, m) = (ds.n() - 1, ds.m());
    let unpack = |x: &[f64], beta: f64, slacks_maximized: bool| RdseSolution {
        beta,
        mu: x[1..1 + k].to_vec(),
        s_minus: x[1 + k..1 + k + m].to_vec(),
        s_plus: x[1 + k + m..].to_vec(),
        direction: g.clone(),
        slacks_maximized,
    };

    let first = match lp::solve(&build(ds, o, g, true), config)? {
        LpOutcome::Infeasible { .. } => return Ok((RdseResult::Infeasible, 0)),
        LpOutcome::Unbounded { .. } => {
            return Err(DeaError::Internal(format!(
                "super-efficiency stage one unbounded for unit {}",
                ds.name(o)
            )))
        }
        LpOutcome::Optimal(sol) => sol,
    };
    let beta = snap(first.x[0], 0.0, config.pos_tol);
    let run_second = match slack_stage {
        SlackStage::Always => true,
        SlackStage::WhenBetaZero => beta == 0.0,
        SlackStage::Never => false,
    };
    if !run_second {
        return Ok((RdseResult::Solved(unpack(&first.x, beta, false)), 0));
    }

    let mut second = build(ds, o, g, false);
    second.set_bounds(0, beta, beta);
    match lp::solve(&second, config)? {
        LpOutcome::Optimal(sol) => Ok((RdseResult::Solved(unpack(&sol.x, beta, true)), 1)),
        other => Err(DeaError::Internal(format!(
            "super-efficiency stage two for unit {} returned {:?}",
            ds.name(o),
            other
        ))),
    }
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
    fn extreme_unit_has_positive_beta_or_no_solution() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        match solve_rdse(&ds, 0, &Direction::farrell_input(&ds, 0), &cfg).unwrap() {
            RdseResult::Infeasible => {}
            RdseResult::Solved(sol) => assert!(sol.beta > 0.0),
        }
    }

    #[test]
    fn interior_unit_has_negative_beta() {
        let ds = table1();
        let cfg = ToleranceConfig::default();
        let RdseResult::Solved(sol) = solve_rdse(&ds, 7, &Direction::pareto(2, 1), &cfg).unwrap() else {
            panic!("expected a solution");
        };
        assert!(sol.beta < 0.0);
        assert!((sol.mu.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(sol
            .mu
            .iter()
            .chain(&sol.s_minus)
            .chain(&sol.s_plus)
            .all(|&v| v >= -1e-12));
    }

    #[test]
    fn twin_reproduces_the_unit() {
        let ds = Dataset::from_units(vec![vec![2.0, 3.0]; 2], vec![vec![1.0]; 2]).unwrap();
        let cfg = ToleranceConfig::default();
        for g in [
            Direction::farrell_input(&ds, 0),
            Direction::pareto(2, 1),
            Direction::farrell_output(&ds, 0),
        ] {
            let RdseResult::Solved(sol) = solve_rdse(&ds, 0, &g, &cfg).unwrap() else {
                panic!("expected a solution");
            };
            assert_eq!(sol.beta, 0.0);
            assert!(sol.slack_sum() < 1e-9);
        }
    }

    #[test]
    fn single_unit_is_infeasible() {
        let ds = Dataset::from_units(vec![vec![1.0]], vec![vec![1.0]]).unwrap();
        let res = solve_rdse(&ds, 0, &Direction::pareto(1, 1), &ToleranceConfig::default()).unwrap();
        assert_eq!(res, RdseResult::Infeasible);
    }

    #[test]
    fn zero_direction_is_rejected() {
        let ds = table1();
        let g = Direction::new(vec![0.0, 0.0], vec![0.0]).unwrap();
        assert!(matches!(
            solve_rdse(&ds, 3, &g, &ToleranceConfig::default()),
            Err(DeaError::Precondition(_))
        ));
        assert!(Direction::new(vec![-1.0], vec![0.0]).is_err());
    }
}
