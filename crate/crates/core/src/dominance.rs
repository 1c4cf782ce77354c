//! Vector relations and dominance predicates between input-output points.
//!
//! All comparisons are tolerance-aware: `u > v` means `u - v > tol` and
//! equality means `|u - v| <= tol`.

use serde::Serialize;

use crate::error::{DeaError, Result};

/// An input-output combination `(x, y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IoPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl IoPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        Self { x, y }
    }

    fn is_nonnegative(&self, tol: f64) -> bool {
        self.x.iter().chain(&self.y).all(|&v| v >= -tol)
    }
}

/// Number of components strictly above `pos_tol`.
pub fn n_plus(v: &[f64], pos_tol: f64) -> usize {
    v.iter().filter(|&&x| x > pos_tol).count()
}

fn check_len(u: &[f64], v: &[f64]) -> Result<()> {
    if u.len() == v.len() {
        Ok(())
    } else {
        Err(DeaError::Dimension(format!(
            "vectors of length {} and {}",
            u.len(),
            v.len()
        )))
    }
}

fn check_points(a: &IoPoint, b: &IoPoint) -> Result<()> {
    check_len(&a.x, &b.x)?;
    check_len(&a.y, &b.y)
}

/// `u >+ v`: every component is strictly larger, or both are zero.
///
/// Only defined for nonnegative vectors.
pub fn gt_plus(u: &[f64], v: &[f64], tol: f64) -> Result<bool> {
    check_len(u, v)?;
    if u.iter().chain(v).any(|&c| c < -tol) {
        return Err(DeaError::UnsupportedRelation(
            "`>+` requires nonnegative vectors".into(),
        ));
    }
    Ok(u.iter()
        .zip(v)
        .all(|(&a, &b)| a - b > tol || (a.abs() <= tol && b.abs() <= tol)))
}

/// `a` weakly dominates `b` in the Pareto sense: no worse anywhere and
/// different somewhere.
pub fn weakly_pareto_dominates(a: &IoPoint, b: &IoPoint, tol: f64) -> Result<bool> {
    check_points(a, b)?;
    let no_worse = a.x.iter().zip(&b.x).all(|(xa, xb)| *xa <= xb + tol)
        && a.y.iter().zip(&b.y).all(|(ya, yb)| *ya >= yb - tol);
    let differs =
        a.x.iter()
            .zip(&b.x)
            .chain(a.y.iter().zip(&b.y))
            .any(|(p, q)| (p - q).abs() > tol);
    Ok(no_worse && differs)
}

/// `a` strictly improves on `b` in every input and every output.
pub fn strongly_pareto_dominates(a: &IoPoint, b: &IoPoint, tol: f64) -> Result<bool> {
    check_points(a, b)?;
    Ok(a.x.iter().zip(&b.x).all(|(xa, xb)| xb - xa > tol)
        && a.y.iter().zip(&b.y).all(|(ya, yb)| ya - yb > tol))
}

fn require_nonnegative(a: &IoPoint, b: &IoPoint, tol: f64) -> Result<()> {
    if a.is_nonnegative(tol) && b.is_nonnegative(tol) {
        Ok(())
    } else {
        Err(DeaError::UnsupportedRelation(
            "FGL dominance requires nonnegative points".into(),
        ))
    }
}

/// Input-oriented FGL dominance: `x_b >+ x_a` and `y_a >= y_b`.
pub fn fgl_dominates_input(a: &IoPoint, b: &IoPoint, tol: f64) -> Result<bool> {
    check_points(a, b)?;
    require_nonnegative(a, b, tol)?;
    Ok(gt_plus(&b.x, &a.x, tol)? && a.y.iter().zip(&b.y).all(|(ya, yb)| *ya >= yb - tol))
}

/// Output-oriented FGL dominance: `x_b >= x_a` and `y_a >+ y_b`.
pub fn fgl_dominates_output(a: &IoPoint, b: &IoPoint, tol: f64) -> Result<bool> {
    check_points(a, b)?;
    require_nonnegative(a, b, tol)?;
    Ok(a.x.iter().zip(&b.x).all(|(xa, xb)| *xa <= xb + tol) && gt_plus(&a.y, &b.y, tol)?)
}
