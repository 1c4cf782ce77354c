use serde::Serialize;

use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};
use crate::lp::{self, LpOutcome, LpProblem, PivotRule, Relation, Sense};

/// Optimum of the single-stage dominance program for one unit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnifiedSolution {
    /// Weights over the reference set with `o` removed.
    pub delta: Vec<f64>,
    /// Raw input indicators as returned by the solver.
    pub t_minus: Vec<f64>,
    pub t_plus: Vec<f64>,
    /// Indicators rounded at the binary threshold.
    pub indicators_minus: Vec<u8>,
    pub indicators_plus: Vec<u8>,
    /// `sum(delta)`; at least 1.
    pub sigma: f64,
    pub sum_t_minus: usize,
    pub sum_t_plus: usize,
    pub objective: f64,
}

impl UnifiedSolution {
    pub fn total(&self) -> usize {
        self.sum_t_minus + self.sum_t_plus
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum UnifiedOutcome {
    /// No point of the reduced technology dominates the unit: it is extreme efficient.
    Infeasible,
    Feasible(UnifiedSolution),
}

impl UnifiedOutcome {
    pub fn solution(&self) -> Option<&UnifiedSolution> {
        match self {
            UnifiedOutcome::Feasible(sol) => Some(sol),
            UnifiedOutcome::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, UnifiedOutcome::Feasible(_))
    }

    /// `(sum_t_minus, sum_t_plus)` when feasible.
    pub fn sums(&self) -> Option<(usize, usize)> {
        self.solution().map(|s| (s.sum_t_minus, s.sum_t_plus))
    }
}

/// Builds the program
///
/// ```text
/// max  1't- + 1't+
/// s.t. -X_o d + (1'd) x_o >= t-
///       Y_o d - (1'd) y_o >= t+
///       1'd >= 1
///       d >= 0,  0 <= t- <= 1,  0 <= t+ <= 1
/// ```
///
/// with variables laid out as `[d (n - 1), t- (m), t+ (s)]`. Negative data is
/// admitted unchanged.
pub fn build_unified(ds: &Dataset, o: usize) -> Result<LpProblem> {
    ds.check_unit(o)?;
    let (m, s) = (ds.m(), ds.s());
    let reference: Vec<usize> = (0..ds.n()).filter(|&j| j != o).collect();
    let k = reference.len();
    let width = k + m + s;

    let mut objective = vec![0.0; width];
    for c in objective.iter_mut().skip(k) {
        *c = 1.0;
    }
    let mut lp = LpProblem::new(Sense::Maximize, objective);
    for v in k..width {
        lp.set_bounds(v, 0.0, 1.0);
    }

    let (x_o, y_o) = (ds.x(o), ds.y(o));
    for i in 0..m {
        let mut row = vec![0.0; width];
        for (c, &j) in reference.iter().enumerate() {
            row[c] = x_o[i] - ds.x(j)[i];
        }
        row[k + i] = -1.0;
        lp.add_row(row, Relation::Ge, 0.0);
    }
    for r in 0..s {
        let mut row = vec![0.0; width];
        for (c, &j) in reference.iter().enumerate() {
            row[c] = ds.y(j)[r] - y_o[r];
        }
        row[k + m + r] = -1.0;
        lp.add_row(row, Relation::Ge, 0.0);
    }
    let mut sigma_row = vec![0.0; width];
    for c in sigma_row.iter_mut().take(k) {
        *c = 1.0;
    }
    lp.add_row(sigma_row, Relation::Ge, 1.0);
    Ok(lp)
}

pub fn solve_unified(ds: &Dataset, o: usize, config: &ToleranceConfig) -> Result<UnifiedOutcome> {
    solve_unified_with_rule(ds, o, config, PivotRule::Dantzig)
}

pub fn solve_unified_with_rule(
    ds: &Dataset,
    o: usize,
    config: &ToleranceConfig,
    rule: PivotRule,
) -> Result<UnifiedOutcome> {
    let lp = build_unified(ds, o)?;
    let sol = match lp::solve_with_pivot_rule(&lp, config, rule)? {
        LpOutcome::Infeasible { .. } => return Ok(UnifiedOutcome::Infeasible),
        LpOutcome::Unbounded { .. } => {
            return Err(DeaError::Internal(format!(
                "dominance program unbounded for unit {}",
                ds.name(o)
            )))
        }
        LpOutcome::Optimal(sol) => sol,
    };
    let k = ds.n() - 1;
    let m = ds.m();
    let round = |v: &f64| u8::from(*v > config.binary_threshold);
    let delta = sol.x[..k].to_vec();
    let t_minus = sol.x[k..k + m].to_vec();
    let t_plus = sol.x[k + m..].to_vec();
    let indicators_minus: Vec<u8> = t_minus.iter().map(round).collect();
    let indicators_plus: Vec<u8> = t_plus.iter().map(round).collect();
    Ok(UnifiedOutcome::Feasible(UnifiedSolution {
        sigma: delta.iter().sum(),
        sum_t_minus: indicators_minus.iter().map(|&b| b as usize).sum(),
        sum_t_plus: indicators_plus.iter().map(|&b| b as usize).sum(),
        delta,
        t_minus,
        t_plus,
        indicators_minus,
        indicators_plus,
        objective: sol.objective,
    }))
}
