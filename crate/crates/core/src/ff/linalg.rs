//! Dense linear algebra over a finite field on row-major `Vec<Vec<FqElem>>`.

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FqElem};

pub type Matrix = Vec<Vec<FqElem>>;

/// Reduced row echelon form in place, pivoting on the leftmost available
/// column and the topmost row holding a nonzero entry there.
/// Returns the pivot columns in increasing order.
pub fn row_reduce(ctx: &FieldCtx, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = ctx.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..cols {
                    let t = ctx.mul(f, m[r][j]);
                    m[i][j] = ctx.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(ctx: &FieldCtx, m: &Matrix) -> usize {
    let mut w = m.clone();
    row_reduce(ctx, &mut w).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn nullspace(ctx: &FieldCtx, m: &Matrix, cols: usize) -> Vec<Vec<FqElem>> {
    let mut w = m.clone();
    let pivots = row_reduce(ctx, &mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ctx.zero(); cols];
            v[f] = ctx.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(w[r][f]);
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`.
pub fn solve(ctx: &FieldCtx, a: &Matrix, b: &[FqElem]) -> Result<Vec<FqElem>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = row_reduce(ctx, &mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::InvariantViolation("singular linear system".into()));
    }
    Ok(aug.iter().map(|r| r[n]).collect())
}
