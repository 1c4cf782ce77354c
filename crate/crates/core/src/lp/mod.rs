//! Dense two-phase primal simplex with individually bounded variables.
//!
//! Variables may carry any combination of finite or infinite lower and upper
//! bounds, so boxed indicators and free variables need no reformulation.

mod simplex;

use crate::config::ToleranceConfig;
use crate::error::{DeaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Entering-variable strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Most negative reduced cost, falling back to Bland after a run of
    /// degenerate pivots.
    Dantzig,
    /// Smallest eligible index for both entering and leaving variables.
    Bland,
}

/// A linear program over bounded variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    sense: Sense,
    objective: Vec<f64>,
    rows: Vec<Row>,
    bounds: Vec<(f64, f64)>,
}

impl LpProblem {
    /// New problem with every variable bounded to `[0, +inf)`.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let bounds = vec![(0.0, f64::INFINITY); objective.len()];
        Self {
            sense,
            objective,
            rows: Vec::new(),
            bounds,
        }
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> &mut Self {
        self.bounds[var] = (lower, upper);
        self
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.bounds.len() != n {
            return Err(DeaError::InvalidProblem(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(DeaError::InvalidProblem(format!(
                    "row {} has {} coefficients, expected {}",
                    i,
                    row.coeffs.len(),
                    n
                )));
            }
            if row.coeffs.iter().any(|c| !c.is_finite()) || !row.rhs.is_finite() {
                return Err(DeaError::InvalidProblem(format!("row {} is not finite", i)));
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(DeaError::InvalidProblem("objective is not finite".into()));
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(DeaError::InvalidProblem(format!(
                    "variable {} has invalid bounds [{}, {}]",
                    j, lo, hi
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (&(lo, hi), &v) in self.bounds.iter().zip(x) {
            worst = worst.max(lo - v).max(v - hi);
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// Sum of artificial values when phase one stopped (0 if phase one was skipped).
    pub phase_one_objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible {
        phase_one_objective: f64,
        iterations: usize,
    },
    Unbounded {
        iterations: usize,
    },
    Optimal(LpSolution),
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn solution(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(sol) => Some(sol),
            _ => None,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            LpOutcome::Infeasible { iterations, .. } | LpOutcome::Unbounded { iterations } => *iterations,
            LpOutcome::Optimal(sol) => sol.iterations,
        }
    }
}

/// Solves with the default rule (Dantzig with a Bland safety net).
pub fn solve(problem: &LpProblem, config: &ToleranceConfig) -> Result<LpOutcome> {
    solve_with_pivot_rule(problem, config, PivotRule::Dantzig)
}

pub fn solve_with_pivot_rule(
    problem: &LpProblem,
    config: &ToleranceConfig,
    rule: PivotRule,
) -> Result<LpOutcome> {
    problem.validate()?;
    config.validate()?;
    simplex::run(problem, config, rule)
}
