//! Exact-pivot primal simplex with Bland's rule.
//!
//! Solves `maximize c.x subject to A x <= b, x >= 0` for `b >= 0`, so the
//! all-slack basis is feasible and no phase-1 is needed. All pivots are exact
//! rational operations and Bland's rule guarantees termination even on
//! degenerate tableaus.

use crate::error::{domain, internal, Result};
use crate::rational::Q;

pub struct LpSolution {
    pub objective: Q,
    /// Primal optimum, one entry per structural variable.
    pub x: Vec<Q>,
    /// Dual optimum, one entry per constraint row.
    pub dual: Vec<Q>,
}


pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(domain("LP dimensions do not match"));
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(domain("simplex requires a nonnegative right-hand side"));
    }

    // Tableau columns: n structural variables, m slacks, then the RHS.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r = vec![Q::zero(); width];
        r[..n].clone_from_slice(row);
        r[n + i] = Q::one();
        r[width - 1] = b[i].clone();
        t.push(r);
    }
    // Reduced-cost row (cost of slacks is zero) and running objective.
    let mut red = vec![Q::zero(); width];
    red[..n].clone_from_slice(c);
    let mut objective = Q::zero();
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering variable is the lowest-index column with a
        // positive reduced cost.
        let entering = match (0..n + m).find(|&j| red[j].is_positive()) {
            Some(j) => j,
            None => break,
        };
        // Ratio test; ties broken by the smallest basis variable index.
        let mut leaving: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][entering].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][entering];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leaving.ok_or_else(|| internal("unbounded LP in simplex"))?;
        // Pivot.
        let inv = t[pivot_row][entering].recip();
        for v in t[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m {
            if i != pivot_row && !t[i][entering].is_zero() {
                let factor = t[i][entering].clone();
                for j in 0..width {
                    t[i][j] = &t[i][j] - &factor * &t[pivot_row][j];
                }
            }
        }
        if !red[entering].is_zero() {
            let factor = red[entering].clone();
            for j in 0..width {
                red[j] = &red[j] - &factor * &t[pivot_row][j];
            }
            objective = &objective + &factor * &t[pivot_row][width - 1];
        }
        basis[pivot_row] = entering;
    }

    let mut x = vec![Q::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][width - 1].clone();
        }
    }
    // Duals: y_i = -reduced cost of slack i at optimum.
    let dual = (0..m).map(|i| -&red[n + i]).collect();
    Ok(LpSolution { objective, x, dual })
}

/// Computes `max_t { t : exists x in the probability simplex with
/// (A x)_i - t >= b0_i for every row i }` exactly, together with an
/// attaining `x`. Requires at least one row (otherwise t is unbounded).
pub fn max_min_margin(a: &[Vec<Q>], b0: &[Q]) -> Result<(Q, Vec<Q>)> {
    let m = a.len();
    if m == 0 {
        return Err(domain("max_min_margin needs at least one constraint row"));
    }
    let n = a[0].len();
    if n == 0 {
        return Err(domain("empty LP"));
    }
    // Eliminate the equality sum x = 1 by substituting
    // x_n = 1 - x_1 - ... - x_{n-1}, and shift t = s - M with M large enough
    // to make every right-hand side positive; the all-slack basis is then
    // feasible for the plain `maximize` form.
    let last = n - 1;
    let mut big = Q::one();
    for i in 0..m {
        let lo = &b0[i] - &a[i][last];
        if lo >= big {
            big = lo + Q::one();
        }
    }
    // Rows: for each i:  sum_{j<last} (a[i][last] - a[i][j]) x_j + s
    //                      <= M + a[i][last] - b0[i]
    // plus the simplex face sum_{j<last} x_j <= 1.
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    let mut rhs: Vec<Q> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<Q> = (0..last).map(|j| &a[i][last] - &a[i][j]).collect();
        row.push(Q::one());
        rows.push(row);
        rhs.push(&big + &a[i][last] - &b0[i]);
    }
    let mut face = vec![Q::one(); last];
    face.push(Q::zero());
    rows.push(face);
    rhs.push(Q::one());
    let mut c = vec![Q::zero(); last];
    c.push(Q::one());
    let sol = maximize(&c, &rows, &rhs)?;
    let margin = &sol.objective - &big;
    let mut x: Vec<Q> = sol.x[..last].to_vec();
    let used: Q = x.iter().fold(Q::zero(), |acc, v| acc + v);
    x.push(Q::one() - used);
    Ok((margin, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn simple_lp() {
        // maximize x + y s.t. x <= 1, y <= 2 -> 3.
        let c = vec![q(1, 1), q(1, 1)];
        let a = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let b = vec![q(1, 1), q(2, 1)];
        let s = maximize(&c, &a, &b).unwrap();
        assert_eq!(s.objective, q(3, 1));
        assert_eq!(s.x, vec![q(1, 1), q(2, 1)]);
        assert_eq!(s.dual, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Degenerate vertex at the origin side; Bland must still finish.
        let c = vec![q(1, 1), q(1, 1)];
        let a = vec![
            vec![q(1, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1)],
            vec![q(1, 1), q(1, 1)],
        ];
        let b = vec![q(1, 1), q(0, 1), q(1, 1)];
        let s = maximize(&c, &a, &b).unwrap();
        assert_eq!(s.objective, q(1, 1));
    }
}
