//! Exact Gaussian elimination over the rationals.

use crate::rational::Q;

/// Outcome of solving a square linear system exactly.
pub enum LinSolve {
    Unique(Vec<Q>),
    /// The system is singular (no solution or infinitely many).
    Singular,
}

/// Solves `a * x = b` for a square matrix by Gaussian elimination with exact
/// pivoting (first nonzero pivot; no numeric concerns with rationals).
pub fn solve_square(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> LinSolve {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return LinSolve::Singular,
        };
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..n {
                    a[r][j] = &a[r][j] - &factor * &a[col][j];
                }
                b[r] = &b[r] - &factor * &b[col];
            }
        }
    }
    LinSolve::Unique(b)
}

/// Solves a possibly rectangular system `a * x = b` (rows may be redundant).
/// Returns `Some(x)` only when the solution is unique, i.e. the column rank
/// equals the number of unknowns and the system is consistent.
pub fn solve_unique(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { return None } else { a[0].len() };
    debug_assert!(b.len() == rows);
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let pivot = match (row..rows).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pivot);
        b.swap(row, pivot);
        let inv = a[row][col].recip();
        for j in col..cols {
            a[row][j] = &a[row][j] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..cols {
                    a[r][j] = &a[r][j] - &factor * &a[row][j];
                }
                b[r] = &b[r] - &factor * &b[row];
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    // Consistency: zero rows must have zero right-hand side.
    for r in row..rows {
        if !b[r].is_zero() {
            return None;
        }
    }
    // Uniqueness: every column must carry a pivot.
    let mut x = vec![Q::zero(); cols];
    for col in 0..cols {
        match pivot_of_col[col] {
            Some(r) => x[col] = b[r].clone(),
            None => return None,
        }
    }
    Some(x)
}
