//! Test-only oracles and fixtures. Nothing here calls into the simplex code.
#![allow(dead_code, clippy::needless_range_loop)]

use dea_core::Dataset;
use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn q(v: i128) -> Q {
    Q::from_integer(v)
}

pub fn qf(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

pub fn to_f64(v: &Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Table 1: two inputs, one output, units A..H.
pub fn table1() -> Dataset {
    Dataset::from_matrices(
        names("ABCDEFGH"),
        &[
            vec![0.0, 2.0, 0.0, 0.0, 0.0, 2.0, 4.0, 4.0],
            vec![1.0, 1.0, 2.0, 1.5, 4.0, 1.0, 4.0, 4.0],
        ],
        &[vec![1.0, 2.0, 2.0, 1.5, 1.0, 1.0, 2.0, 1.0]],
    )
    .unwrap()
}

/// Table 1 in exact arithmetic, as (inputs, outputs) per unit.
pub fn table1_exact() -> Vec<(Vec<Q>, Vec<Q>)> {
    let h = qf(3, 2);
    vec![
        (vec![q(0), q(1)], vec![q(1)]),
        (vec![q(2), q(1)], vec![q(2)]),
        (vec![q(0), q(2)], vec![q(2)]),
        (vec![q(0), h], vec![h]),
        (vec![q(0), q(4)], vec![q(1)]),
        (vec![q(2), q(1)], vec![q(1)]),
        (vec![q(4), q(4)], vec![q(2)]),
        (vec![q(4), q(4)], vec![q(1)]),
    ]
}

/// Table 4: one input, one output, mixed signs.
pub fn table4() -> Dataset {
    Dataset::from_matrices(
        names("ABCDEFGH"),
        &[vec![-6.0, -6.0, -5.0, -4.0, -2.0, 1.0, -4.0, 2.0]],
        &[vec![-3.0, 0.0, 2.0, 3.0, 5.0, 5.0, 0.0, 1.0]],
    )
    .unwrap()
}

pub fn names(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

pub fn unit(ds: &Dataset, name: &str) -> usize {
    ds.names().iter().position(|n| n == name).unwrap()
}

/// Reduces `[A | b]` to row echelon form, dropping redundant rows.
/// Returns `None` when the system is inconsistent.
fn independent_rows(a: &[Vec<Q>], b: &[Q]) -> Option<(Vec<Vec<Q>>, Vec<Q>)> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != q(0)) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c];
        for k in 0..=cols {
            m[rank][k] /= piv;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != q(0) {
                let f = m[i][c];
                for k in 0..=cols {
                    let v = m[rank][k];
                    m[i][k] -= f * v;
                }
            }
        }
        rank += 1;
    }
    if m[rank..].iter().any(|r| r[cols] != q(0)) {
        return None;
    }
    m.truncate(rank);
    let b = m.iter().map(|r| r[cols]).collect();
    let a = m.into_iter().map(|mut r| {
        r.pop();
        r
    });
    Some((a.collect(), b))
}

/// Solves the square system `B z = b` exactly; `None` if singular.
fn solve_square(bm: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = b.len();
    let mut m: Vec<Vec<Q>> = bm
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(*v);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c] != q(0))?;
        m.swap(c, p);
        let piv = m[c][c];
        for k in c..=n {
            m[c][k] /= piv;
        }
        for i in 0..n {
            if i != c && m[i][c] != q(0) {
                let f = m[i][c];
                for k in c..=n {
                    let v = m[c][k];
                    m[i][k] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Best objective over all basic feasible solutions of
/// `A z = b, z >= 0`, with the optimizing point.
///
/// `None` means no basic feasible solution exists (infeasible). The caller
/// is responsible for the problem being bounded.
pub fn bfs_optimum(a: &[Vec<Q>], b: &[Q], c: &[Q], maximize: bool) -> Option<(Q, Vec<Q>)> {
    let ncols = c.len();
    let (a, b) = independent_rows(a, b)?;
    let rows = a.len();
    if rows == 0 {
        let z = vec![q(0); ncols];
        return Some((q(0), z));
    }
    let mut best: Option<(Q, Vec<Q>)> = None;
    combinations(ncols, rows, &mut |basis| {
        let bm: Vec<Vec<Q>> = a.iter().map(|r| basis.iter().map(|&j| r[j]).collect()).collect();
        if let Some(zb) = solve_square(&bm, &b) {
            if zb.iter().all(|v| *v >= q(0)) {
                let mut z = vec![q(0); ncols];
                for (&j, v) in basis.iter().zip(zb) {
                    z[j] = v;
                }
                let obj: Q = z.iter().zip(c).map(|(x, cc)| *x * *cc).sum();
                let better = match &best {
                    None => true,
                    Some((o, _)) => (maximize && obj > *o) || (!maximize && obj < *o),
                };
                if better {
                    best = Some((obj, z));
                }
            }
        }
    });
    best
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// Optimum of `max/min c.x` subject to `rows`, `0 <= x <= upper`, with all
/// upper bounds finite (so the problem is bounded). Converts to standard form
/// with explicit slack columns and enumerates bases.
pub fn boxed_lp_optimum(
    c: &[i64],
    rows: &[(Vec<i64>, Rel, i64)],
    upper: &[i64],
    maximize: bool,
) -> Option<Q> {
    let n = c.len();
    let mut all_rows: Vec<(Vec<Q>, Rel, Q)> = rows
        .iter()
        .map(|(a, r, b)| (a.iter().map(|&v| q(v as i128)).collect(), *r, q(*b as i128)))
        .collect();
    for (j, &u) in upper.iter().enumerate() {
        let mut a = vec![q(0); n];
        a[j] = q(1);
        all_rows.push((a, Rel::Le, q(u as i128)));
    }
    let slacks = all_rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let total = n + slacks;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut k = n;
    for (coeffs, rel, rhs) in all_rows {
        let mut row = coeffs;
        row.resize(total, q(0));
        match rel {
            Rel::Le => {
                row[k] = q(1);
                k += 1;
            }
            Rel::Ge => {
                row[k] = q(-1);
                k += 1;
            }
            Rel::Eq => {}
        }
        a.push(row);
        b.push(rhs);
    }
    let mut cost: Vec<Q> = c.iter().map(|&v| q(v as i128)).collect();
    cost.resize(total, q(0));
    bfs_optimum(&a, &b, &cost, maximize).map(|(v, _)| v)
}

/// Exact data rows as `(x, y)` per unit.
pub type ExactData = [(Vec<Q>, Vec<Q>)];

/// Radial input score of unit `o` under variable returns, by basis
/// enumeration over `[theta, lambda (n), s- (m), s+ (s)]`.
pub fn bcc_input_exact(data: &ExactData, o: usize) -> Q {
    bcc_exact(data, o, false)
}

/// Radial output score of unit `o`, same layout with `phi` in place of `theta`.
pub fn bcc_output_exact(data: &ExactData, o: usize) -> Q {
    bcc_exact(data, o, true)
}

fn bcc_exact(data: &ExactData, o: usize, output: bool) -> Q {
    let n = data.len();
    let (m, s) = (data[0].0.len(), data[0].1.len());
    let width = 1 + n + m + s;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..m {
        let mut row = vec![q(0); width];
        for (j, (x, _)) in data.iter().enumerate() {
            row[1 + j] = x[i];
        }
        row[1 + n + i] = q(1);
        if output {
            b.push(data[o].0[i]);
        } else {
            row[0] = -data[o].0[i];
            b.push(q(0));
        }
        a.push(row);
    }
    for r in 0..s {
        let mut row = vec![q(0); width];
        for (j, (_, y)) in data.iter().enumerate() {
            row[1 + j] = y[r];
        }
        row[1 + n + m + r] = q(-1);
        if output {
            row[0] = -data[o].1[r];
            b.push(q(0));
        } else {
            b.push(data[o].1[r]);
        }
        a.push(row);
    }
    let mut convex = vec![q(0); width];
    for v in convex.iter_mut().skip(1).take(n) {
        *v = q(1);
    }
    a.push(convex);
    b.push(q(1));
    let mut c = vec![q(0); width];
    c[0] = q(1);
    bfs_optimum(&a, &b, &c, output)
        .expect("radial model is always feasible")
        .0
}

/// Optimal value of the dominance program for unit `o`, or `None` when it is
/// infeasible. Layout `[d (n-1), t- (m), t+ (s), surplus (m+s+1), bound slack (m+s)]`.
pub fn unified_exact(data: &ExactData, o: usize) -> Option<Q> {
    let n = data.len();
    let (m, s) = (data[0].0.len(), data[0].1.len());
    let refs: Vec<usize> = (0..n).filter(|&j| j != o).collect();
    let k = refs.len();
    let t0 = k;
    let sur0 = k + m + s;
    let ub0 = sur0 + m + s + 1;
    let width = ub0 + m + s;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..m {
        let mut row = vec![q(0); width];
        for (c, &j) in refs.iter().enumerate() {
            row[c] = data[o].0[i] - data[j].0[i];
        }
        row[t0 + i] = q(-1);
        row[sur0 + i] = q(-1);
        a.push(row);
        b.push(q(0));
    }
    for r in 0..s {
        let mut row = vec![q(0); width];
        for (c, &j) in refs.iter().enumerate() {
            row[c] = data[j].1[r] - data[o].1[r];
        }
        row[t0 + m + r] = q(-1);
        row[sur0 + m + r] = q(-1);
        a.push(row);
        b.push(q(0));
    }
    let mut sigma = vec![q(0); width];
    for v in sigma.iter_mut().take(k) {
        *v = q(1);
    }
    sigma[sur0 + m + s] = q(-1);
    a.push(sigma);
    b.push(q(1));
    for v in 0..m + s {
        let mut row = vec![q(0); width];
        row[t0 + v] = q(1);
        row[ub0 + v] = q(1);
        a.push(row);
        b.push(q(1));
    }
    let mut c = vec![q(0); width];
    for v in c.iter_mut().skip(t0).take(m + s) {
        *v = q(1);
    }
    bfs_optimum(&a, &b, &c, true).map(|(v, _)| v)
}

/// Converts a dataset with at most six decimals to exact form.
pub fn exact(ds: &Dataset) -> Vec<(Vec<Q>, Vec<Q>)> {
    let conv = |v: &[f64]| {
        v.iter()
            .map(|&c| qf((c * 1e6).round() as i128, 1_000_000))
            .collect()
    };
    (0..ds.n()).map(|j| (conv(ds.x(j)), conv(ds.y(j)))).collect()
}
