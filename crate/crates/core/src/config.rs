use serde::{Deserialize, Serialize};

use crate::error::{DeaError, Result};

/// Numerical tolerances shared by the solver and the classification rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Primal feasibility and reduced-cost tolerance of the simplex solver.
    pub feas_tol: f64,
    /// Threshold above which a value counts as strictly positive.
    pub pos_tol: f64,
    /// Cutoff for reading an indicator as 1.
    pub binary_threshold: f64,
    /// Hard cap on simplex iterations per solve (both phases together).
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            feas_tol: 1e-9,
            pos_tol: 1e-7,
            binary_threshold: 0.5,
            max_iterations: 10_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.feas_tol > 0.0 && self.feas_tol.is_finite()) {
            return Err(DeaError::InvalidConfig(format!(
                "feas_tol must be positive, got {}",
                self.feas_tol
            )));
        }
        if !(self.pos_tol > 0.0 && self.pos_tol.is_finite()) {
            return Err(DeaError::InvalidConfig(format!(
                "pos_tol must be positive, got {}",
                self.pos_tol
            )));
        }
        if !(self.binary_threshold > 0.0 && self.binary_threshold < 1.0) {
            return Err(DeaError::InvalidConfig(format!(
                "binary_threshold must lie in (0, 1), got {}",
                self.binary_threshold
            )));
        }
        if self.max_iterations == 0 {
            return Err(DeaError::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn with_feas_tol(mut self, feas_tol: f64) -> Self {
        self.feas_tol = feas_tol;
        self
    }
}
