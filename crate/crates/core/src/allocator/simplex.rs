//! Dense tableau simplex for `max c·x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! The origin is always feasible, so no phase one is needed. Pivoting uses
//! Bland's rule (lowest-index entering column, lowest-index leaving basic
//! variable on ratio ties), which cannot cycle and makes reruns produce the
//! same vertex bit for bit.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

/// Solves the LP. `a` is row-major with one row per constraint.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::LpShape(format!(
            "{m} constraint rows, {} right-hand sides, {n} objective terms",
            b.len()
        )));
    }
    if b.iter().any(|v| v.is_nan() || *v < 0.0) {
        return Err(Error::LpShape("negative right-hand side".into()));
    }

    // columns: n structural, m slack, 1 rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &rhs))| {
            let mut r = vec![0.0; width];
            r[..n].copy_from_slice(row);
            r[n + i] = 1.0;
            r[width - 1] = rhs;
            r
        })
        .collect();
    // reduced costs: positive entries can still improve the objective
    let mut z = vec![0.0; width];
    z[..n].copy_from_slice(c);
    let mut basis: Vec<usize> = (n..n + m).collect();

    let limit = 10_000 + 100 * (n + m);
    let mut pivots = 0;
    while let Some(enter) = (0..n + m).find(|&j| z[j] > PIVOT_EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            let coef = row[enter];
            if coef <= PIVOT_EPS {
                continue;
            }
            let ratio = row[width - 1] / coef;
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, r)) => {
                    if ratio < r || (ratio == r && basis[i] < basis[best]) {
                        Some((i, ratio))
                    } else {
                        Some((best, r))
                    }
                }
            };
        }
        let (row, _) = leave.ok_or(Error::Unbounded)?;
        pivot(&mut t, &mut z, row, enter);
        basis[row] = enter;
        pivots += 1;
        if pivots > limit {
            return Err(Error::IterationLimit(limit));
        }
    }

    let mut x = vec![0.0; n];
    for (row, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[row][width - 1].max(0.0);
        }
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution {
        x,
        objective,
        pivots,
    })
}

fn pivot(t: &mut [Vec<f64>], z: &mut [f64], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != 0.0 {
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            r[col] = 0.0;
        }
    }
    let f = z[col];
    if f != 0.0 {
        for (v, pv) in z.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        z[col] = 0.0;
    }
}
