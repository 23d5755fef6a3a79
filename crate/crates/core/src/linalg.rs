//! Exact Gaussian elimination over the rationals, plus a symbolic variant
//! for small linear systems whose coefficients are polynomials but whose
//! pivots are nonzero rational constants.
//!
//! There is no numerical tolerance anywhere: a pivot is the first exactly
//! nonzero entry in deterministic column order.

use num_traits::Zero;

use crate::poly::GradedPoly;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Outcome of eliminating an exact linear system `A x = b`.
#[derive(Debug, Clone)]
pub struct Elimination {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Unique solution when the system is consistent and full-rank.
    pub solution: Option<Vec<Scalar>>,
    /// Indices (into the original row list) of the rows used as pivots.
    pub pivotal_rows: Vec<usize>,
    /// For an inconsistent system, the original index of the zero = nonzero
    /// row and of the last pivot row folded into it.
    pub conflict: Option<(usize, usize)>,
    /// Kernel dimension of the coefficient matrix (columns - rank).
    pub kernel_dim: usize,
}

/// Forward elimination with exact arithmetic. Rows keep a link to their
/// original index so failures can be reported against row provenance.
#[allow(clippy::needless_range_loop)]
pub fn eliminate(matrix: &[Vec<Scalar>], rhs: &[Scalar]) -> Elimination {
    assert_eq!(matrix.len(), rhs.len());
    let nrows = matrix.len();
    let ncols = if nrows == 0 { 0 } else { matrix[0].len() };
    // augmented working copy with original indices
    let mut rows: Vec<(usize, Vec<Scalar>, Scalar)> = matrix
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (r, b))| (i, r.clone(), b.clone()))
        .collect();

    let mut pivotal_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r].1[col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot_value = rows[next_row].1[col].clone();
        for r in next_row + 1..rows.len() {
            if rows[r].1[col].is_zero() {
                continue;
            }
            let factor = &rows[r].1[col] / &pivot_value;
            for c in col..ncols {
                let delta = &factor * &rows[next_row].1[c];
                rows[r].1[c] = &rows[r].1[c] - &delta;
            }
            let delta = &factor * &rows[next_row].2;
            rows[r].2 = &rows[r].2 - &delta;
        }
        pivotal_rows.push(rows[next_row].0);
        pivot_cols.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    let rank = next_row;

    // consistency: any residual row 0 = nonzero?
    let mut conflict = None;
    for r in rank..rows.len() {
        if !rows[r].2.is_zero() {
            let last_pivot = pivotal_rows.last().copied().unwrap_or(rows[r].0);
            conflict = Some((rows[r].0, last_pivot));
            break;
        }
    }

    let kernel_dim = ncols - rank;
    let solution = if conflict.is_none() && kernel_dim == 0 {
        // back substitution
        let mut x = vec![Scalar::zero(); ncols];
        for i in (0..rank).rev() {
            let col = pivot_cols[i];
            let mut acc = rows[i].2.clone();
            for c in col + 1..ncols {
                let delta = &rows[i].1[c] * &x[c];
                acc = &acc - &delta;
            }
            x[col] = &acc / &rows[i].1[col];
        }
        Some(x)
    } else {
        None
    };

    Elimination {
        rank,
        solution,
        pivotal_rows,
        conflict,
        kernel_dim,
    }
}

/// Verifies `A x = b` exactly.
pub fn verify_solution(matrix: &[Vec<Scalar>], rhs: &[Scalar], x: &[Scalar]) -> bool {
    matrix.iter().zip(rhs).all(|(row, b)| {
        let mut acc = Scalar::zero();
        for (a, xi) in row.iter().zip(x) {
            acc += a * xi;
        }
        &acc == b
    })
}

/// Solves a small linear system whose coefficients and right-hand sides
/// are polynomials, by Gauss-Jordan elimination that only ever divides by
/// pivots that are nonzero rational constants. Enough for the character
/// conversion systems, whose coefficient matrices are triangularizable
/// with constant pivots even though some entries involve the degree.
#[allow(clippy::needless_range_loop)]
pub fn solve_symbolic(matrix: &[Vec<GradedPoly>], rhs: &[GradedPoly]) -> Result<Vec<GradedPoly>> {
    let nrows = matrix.len();
    assert_eq!(nrows, rhs.len());
    assert!(nrows > 0);
    let ncols = matrix[0].len();
    if nrows < ncols {
        return Err(Error::Underdetermined {
            kernel_dim: ncols - nrows,
            suggestion: "more equations".into(),
        });
    }
    let vars = rhs[0].vars().clone();
    let constant_of = |p: &GradedPoly| -> Option<Scalar> {
        if p.is_zero() {
            return Some(Scalar::zero());
        }
        if p.weighted_degree() == 0 {
            return Some(p.coefficient_of(&vec![0; p.vars().len()]));
        }
        None
    };
    let mut a: Vec<Vec<GradedPoly>> = matrix.to_vec();
    let mut b: Vec<GradedPoly> = rhs.to_vec();
    let mut pivot_rows = Vec::new();
    let mut used = vec![false; nrows];
    for col in 0..ncols {
        // pivot on a row whose entry in this column is a nonzero constant
        let found = (0..nrows).find(|&r| {
            !used[r]
                && matches!(constant_of(&a[r][col]), Some(c) if !c.is_zero())
        });
        let Some(prow) = found else {
            return Err(Error::Underdetermined {
                kernel_dim: 1,
                suggestion: format!("no constant pivot in column {col}"),
            });
        };
        used[prow] = true;
        let pivot = constant_of(&a[prow][col]).expect("constant pivot");
        let pivot_inv = Scalar::from_integer(1.into()) / &pivot;
        for r in 0..nrows {
            if r == prow || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].scale(&pivot_inv);
            for c in 0..ncols {
                let delta = factor.checked_mul(&a[prow][c])?;
                a[r][c] = a[r][c].checked_sub(&delta)?;
            }
            let delta = factor.checked_mul(&b[prow])?;
            b[r] = b[r].checked_sub(&delta)?;
        }
        pivot_rows.push((prow, col));
    }
    for r in 0..nrows {
        if !used[r] && !b[r].is_zero() {
            return Err(Error::InconsistentSystem {
                row_a: format!("row {r}"),
                row_b: "pivot rows".into(),
            });
        }
    }
    let mut out = vec![GradedPoly::zero(&vars); ncols];
    for (row, col) in pivot_rows {
        let pivot = constant_of(&a[row][col]).expect("constant pivot");
        let inv = Scalar::from_integer(1.into()) / &pivot;
        out[col] = b[row].scale(&inv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn solves_a_unique_system() {
        let m = vec![
            vec![int(2), int(1)],
            vec![int(1), int(-1)],
            vec![int(3), int(0)],
        ];
        let b = vec![int(5), int(1), int(6)];
        let e = eliminate(&m, &b);
        assert_eq!(e.rank, 2);
        assert_eq!(e.kernel_dim, 0);
        let x = e.solution.unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(verify_solution(&m, &b, &x));
    }

    #[test]
    fn detects_inconsistency() {
        let m = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        let b = vec![int(1), int(3)];
        let e = eliminate(&m, &b);
        assert!(e.conflict.is_some());
        assert!(e.solution.is_none());
    }

    #[test]
    fn reports_kernel_dimension() {
        let m = vec![vec![int(1), int(2), int(0)]];
        let b = vec![int(1)];
        let e = eliminate(&m, &b);
        assert_eq!(e.rank, 1);
        assert_eq!(e.kernel_dim, 2);
        assert!(e.solution.is_none());
    }

    #[test]
    fn exact_fractions_no_drift() {
        let m = vec![vec![frac(1, 3), frac(1, 7)], vec![frac(2, 5), frac(3, 11)]];
        let b = vec![frac(10, 21), frac(37, 55)];
        let e = eliminate(&m, &b);
        let x = e.solution.unwrap();
        assert!(verify_solution(&m, &b, &x));
        assert_eq!(x, vec![int(1), int(1)]);
    }
}
