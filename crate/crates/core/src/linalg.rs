//! Dense Gaussian elimination over exact fields.
//!
//! Works for any `num_traits::Num` field (rationals, Gaussian rationals).
//! Pivots are taken as the first nonzero entry in the column; zero entries in
//! the pivot column are skipped, which keeps the sparse monomial-shaped
//! matrices produced by twisted adjoint actions cheap to reduce.

use num_traits::Num;

use crate::error::{Error, Result};

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Num + Clone>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Determinant by row reduction. The input must be square.
pub fn determinant<T>(mut m: Matrix<T>) -> T
where
    T: Num + Clone,
{
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = T::zero() - det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[col];
            for (c, x) in bottom[0].iter_mut().enumerate().skip(col) {
                if !pivot_row[c].is_zero() {
                    *x = x.clone() - factor.clone() * pivot_row[c].clone();
                }
            }
        }
    }
    det
}

/// Solves `cols · x = rhs` where `cols` are the column vectors of an
/// `n × k` matrix of full column rank.
///
/// Returns `Ok(None)` when the system is inconsistent and
/// [`Error::DependentRoots`] when the columns are linearly dependent.
pub fn solve_columns<T>(cols: &[Vec<T>], rhs: &[T]) -> Result<Option<Vec<T>>>
where
    T: Num + Clone,
{
    let k = cols.len();
    let n = rhs.len();
    if let Some(bad) = cols.iter().find(|c| c.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.len(),
        });
    }
    // augmented rows: [a_{r,0} .. a_{r,k-1} | b_r]
    let mut rows: Matrix<T> = (0..n)
        .map(|r| {
            let mut row: Vec<T> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..k {
        let Some(p) = (pivot_row..n).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::DependentRoots);
        };
        rows.swap(p, pivot_row);
        let pivot = rows[pivot_row][col].clone();
        for c in col..=k {
            rows[pivot_row][c] = rows[pivot_row][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=k {
                let delta = factor.clone() * rows[pivot_row][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|i| rows[i][k].clone()).collect()))
}
