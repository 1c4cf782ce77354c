use super::{LpOutcome, LpProblem, LpSolution, PivotRule, Relation, Sense};
use crate::config::ToleranceConfig;
use crate::error::{DeaError, Result};

const PIVOT_TOL: f64 = 1e-9;
const CLEANUP_PIVOT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic,
    AtLower,
    AtUpper,
    /// Nonbasic free variable resting at zero.
    Free,
}

enum Step {
    Optimal,
    Unbounded,
}

/// Full tableau `B^-1 A` over structural, slack and artificial columns.
struct Tableau {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    value: Vec<f64>,
    state: Vec<State>,
    basis: Vec<usize>,
    /// Columns forming the identity at start; `a[:, init_basis]` is `B^-1`.
    init_basis: Vec<usize>,
    /// Right-hand side after the initial row scaling.
    rhs: Vec<f64>,
    first_artificial: usize,
    iterations: usize,
    max_iterations: usize,
    tol: f64,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cols = self.cols;
        let piv = self.a[r * cols + j];
        for k in 0..cols {
            self.a[r * cols + k] /= piv;
        }
        self.a[r * cols + j] = 1.0;
        let (before, rest) = self.a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        for row in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let f = row[j];
            if f != 0.0 {
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= f * p;
                }
                row[j] = 0.0;
            }
        }
    }

    /// Recomputes basic values from `B^-1 b - B^-1 N x_N`.
    fn refresh_basic_values(&mut self) {
        for i in 0..self.rows {
            let mut v: f64 = self
                .init_basis
                .iter()
                .zip(&self.rhs)
                .map(|(&k, b)| self.at(i, k) * b)
                .sum();
            for j in 0..self.cols {
                if self.state[j] != State::Basic && self.value[j] != 0.0 {
                    v -= self.at(i, j) * self.value[j];
                }
            }
            let b = self.basis[i];
            self.value[b] = v;
        }
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.a[i * self.cols..(i + 1) * self.cols];
                for (dj, aij) in d.iter_mut().zip(row) {
                    *dj -= cb * aij;
                }
            }
        }
        d
    }

    /// Direction in which nonbasic `j` would improve the objective, if any.
    fn improving_direction(&self, j: usize, dj: f64) -> Option<f64> {
        if self.lower[j] == self.upper[j] {
            return None;
        }
        match self.state[j] {
            State::Basic => None,
            State::AtLower if dj < -self.tol => Some(1.0),
            State::AtUpper if dj > self.tol => Some(-1.0),
            State::Free if dj.abs() > self.tol => Some(-dj.signum()),
            _ => None,
        }
    }

    fn choose_entering(&self, d: &[f64], bland: bool, limit: usize) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for (j, &dj) in d.iter().enumerate().take(limit) {
            if let Some(dir) = self.improving_direction(j, dj) {
                if bland {
                    return Some((j, dir));
                }
                if dj.abs() > best_score {
                    best_score = dj.abs();
                    best = Some((j, dir));
                }
            }
        }
        best
    }

    /// Minimizes `cost . x` from the current basic feasible solution.
    fn optimize(&mut self, cost: &[f64], rule: PivotRule, entering_limit: usize) -> Result<Step> {
        let degenerate_limit = 3 * (self.rows + self.cols);
        let mut degenerate = 0usize;
        loop {
            let bland = rule == PivotRule::Bland || degenerate >= degenerate_limit;
            let d = self.reduced_costs(cost);
            let Some((j, dir)) = self.choose_entering(&d, bland, entering_limit) else {
                return Ok(Step::Optimal);
            };
            if self.iterations >= self.max_iterations {
                return Err(DeaError::SolverStall {
                    iterations: self.iterations,
                });
            }
            self.iterations += 1;

            // Ratio test. `None` as the leaving row means a bound flip of `j`.
            let mut step = self.upper[j] - self.lower[j];
            let mut leaving: Option<(usize, bool)> = None;
            let mut leaving_alpha = 0.0f64;
            for i in 0..self.rows {
                let alpha = dir * self.at(i, j);
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let b = self.basis[i];
                let (limit, to_lower) = if alpha > 0.0 {
                    if self.lower[b] == f64::NEG_INFINITY {
                        continue;
                    }
                    ((self.value[b] - self.lower[b]).max(0.0) / alpha, true)
                } else {
                    if self.upper[b] == f64::INFINITY {
                        continue;
                    }
                    ((self.upper[b] - self.value[b]).max(0.0) / -alpha, false)
                };
                let tie = 1e-12 * (1.0 + limit.abs());
                let better = match leaving {
                    _ if limit < step - tie => true,
                    Some((r, _)) if limit <= step + tie => {
                        if bland {
                            b < self.basis[r]
                        } else {
                            alpha.abs() > leaving_alpha
                        }
                    }
                    _ => false,
                };
                if better {
                    step = limit.min(step);
                    leaving = Some((i, to_lower));
                    leaving_alpha = alpha.abs();
                }
            }
            if step == f64::INFINITY {
                return Ok(Step::Unbounded);
            }
            if step <= self.tol {
                degenerate += 1;
            }

            if step > 0.0 {
                for i in 0..self.rows {
                    let aij = self.at(i, j);
                    if aij != 0.0 {
                        let b = self.basis[i];
                        self.value[b] -= dir * step * aij;
                    }
                }
                self.value[j] += dir * step;
            }

            match leaving {
                None => {
                    if dir > 0.0 {
                        self.state[j] = State::AtUpper;
                        self.value[j] = self.upper[j];
                    } else {
                        self.state[j] = State::AtLower;
                        self.value[j] = self.lower[j];
                    }
                }
                Some((r, to_lower)) => {
                    let b = self.basis[r];
                    if to_lower {
                        self.state[b] = State::AtLower;
                        self.value[b] = self.lower[b];
                    } else {
                        self.state[b] = State::AtUpper;
                        self.value[b] = self.upper[b];
                    }
                    self.pivot(r, j);
                    self.basis[r] = j;
                    self.state[j] = State::Basic;
                }
            }
        }
    }

    /// Pivots basic artificials out after phase one and pins all
    /// artificials to zero.
    fn retire_artificials(&mut self) {
        for j in self.first_artificial..self.cols {
            self.lower[j] = 0.0;
            self.upper[j] = 0.0;
        }
        for r in 0..self.rows {
            let b = self.basis[r];
            if b < self.first_artificial {
                continue;
            }
            let candidate = (0..self.first_artificial)
                .filter(|&k| self.state[k] != State::Basic)
                .map(|k| (k, self.at(r, k).abs()))
                .filter(|&(_, v)| v > CLEANUP_PIVOT_TOL)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((k, _)) = candidate {
                self.pivot(r, k);
                self.basis[r] = k;
                self.state[k] = State::Basic;
                self.state[b] = State::AtLower;
            }
            self.value[b] = 0.0;
        }
        for j in self.first_artificial..self.cols {
            if self.state[j] != State::Basic {
                self.value[j] = 0.0;
            }
        }
        self.refresh_basic_values();
    }
}

fn initial_value(lower: f64, upper: f64) -> (f64, State) {
    if lower.is_finite() {
        (lower, State::AtLower)
    } else if upper.is_finite() {
        (upper, State::AtUpper)
    } else {
        (0.0, State::Free)
    }
}

pub(super) fn run(problem: &LpProblem, config: &ToleranceConfig, rule: PivotRule) -> Result<LpOutcome> {
    let n = problem.num_vars();
    let tol = config.feas_tol;

    // Presolve: drop rows with no nonzero coefficients.
    let mut rows = Vec::with_capacity(problem.num_rows());
    for row in problem.rows() {
        if row.coeffs.iter().all(|&c| c == 0.0) {
            let violation = match row.relation {
                Relation::Le => -row.rhs,
                Relation::Ge => row.rhs,
                Relation::Eq => row.rhs.abs(),
            };
            if violation > tol {
                return Ok(LpOutcome::Infeasible {
                    phase_one_objective: violation,
                    iterations: 0,
                });
            }
        } else {
            rows.push(row);
        }
    }
    let m = rows.len();

    let mut lower: Vec<f64> = problem.bounds().iter().map(|b| b.0).collect();
    let mut upper: Vec<f64> = problem.bounds().iter().map(|b| b.1).collect();
    let mut value = Vec::with_capacity(n);
    let mut state = Vec::with_capacity(n);
    for &(lo, hi) in problem.bounds() {
        let (v, st) = initial_value(lo, hi);
        value.push(v);
        state.push(st);
    }

    // Slack columns: +1 for <=, -1 for >=.
    let mut slack_of_row: Vec<Option<(usize, f64)>> = Vec::with_capacity(m);
    let mut next = n;
    for row in &rows {
        let sign = match row.relation {
            Relation::Le => Some(1.0),
            Relation::Ge => Some(-1.0),
            Relation::Eq => None,
        };
        slack_of_row.push(sign.map(|s| {
            next += 1;
            (next - 1, s)
        }));
    }
    let first_artificial = next;

    // Residuals with every variable at its starting value.
    let residual: Vec<f64> = rows
        .iter()
        .map(|row| row.rhs - row.coeffs.iter().zip(&value).map(|(a, v)| a * v).sum::<f64>())
        .collect();

    // Pick a starting basic column per row: the slack when it can absorb the
    // residual at a feasible value, otherwise a fresh artificial.
    let mut basic_col = Vec::with_capacity(m);
    let mut row_scale = Vec::with_capacity(m);
    let mut cols = first_artificial;
    for i in 0..m {
        match slack_of_row[i] {
            Some((k, sign)) if residual[i] * sign >= 0.0 => {
                basic_col.push(k);
                row_scale.push(sign);
            }
            _ => {
                basic_col.push(cols);
                row_scale.push(if residual[i] >= 0.0 { 1.0 } else { -1.0 });
                cols += 1;
            }
        }
    }
    for _ in n..cols {
        lower.push(0.0);
        upper.push(f64::INFINITY);
        value.push(0.0);
        state.push(State::AtLower);
    }

    // Assemble the scaled tableau; the starting basis is the identity.
    let mut a = vec![0.0; m * cols];
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let scale = row_scale[i];
        for (j, &c) in row.coeffs.iter().enumerate() {
            a[i * cols + j] = c * scale;
        }
        if let Some((k, sign)) = slack_of_row[i] {
            a[i * cols + k] = sign * scale;
        }
        if basic_col[i] >= first_artificial {
            a[i * cols + basic_col[i]] = 1.0;
        }
        rhs.push(row.rhs * scale);
        value[basic_col[i]] = residual[i] * scale;
        state[basic_col[i]] = State::Basic;
    }

    let mut t = Tableau {
        rows: m,
        cols,
        a,
        lower,
        upper,
        value,
        state,
        basis: basic_col.clone(),
        init_basis: basic_col,
        rhs,
        first_artificial,
        iterations: 0,
        max_iterations: config.max_iterations,
        tol,
    };

    let mut phase_one_objective = 0.0;
    if cols > first_artificial {
        let mut cost = vec![0.0; cols];
        for c in cost.iter_mut().skip(first_artificial) {
            *c = 1.0;
        }
        t.optimize(&cost, rule, cols)?;
        t.refresh_basic_values();
        phase_one_objective = t.value[first_artificial..].iter().map(|v| v.max(0.0)).sum();
        let scale = 1.0 + problem.rows().iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
        if phase_one_objective > tol * scale {
            return Ok(LpOutcome::Infeasible {
                phase_one_objective,
                iterations: t.iterations,
            });
        }
        t.retire_artificials();
    }

    let flip = if problem.sense() == Sense::Maximize {
        -1.0
    } else {
        1.0
    };
    let mut cost = vec![0.0; cols];
    for (c, &obj) in cost.iter_mut().zip(problem.objective()) {
        *c = flip * obj;
    }
    match t.optimize(&cost, rule, first_artificial)? {
        Step::Unbounded => Ok(LpOutcome::Unbounded {
            iterations: t.iterations,
        }),
        Step::Optimal => {
            t.refresh_basic_values();
            let x: Vec<f64> = (0..n).map(|j| t.value[j].clamp(t.lower[j], t.upper[j])).collect();
            Ok(LpOutcome::Optimal(LpSolution {
                objective: problem.objective_value(&x),
                x,
                iterations: t.iterations,
                phase_one_objective,
            }))
        }
    }
}
