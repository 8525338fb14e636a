use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DenseError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize, DenseError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(DenseError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(m: &[Vec<i64>]) -> Result<BigInt, DenseError> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Diagonal of a congruent form `P^T M P`, computed by symmetric Gaussian
/// elimination over the rationals.
///
/// A zero pivot is handled by swapping in a later nonzero diagonal entry, or,
/// when the remaining diagonal is all zero, by adding a row/column with a
/// nonzero off-diagonal entry to create one.
pub fn congruence_diagonal(m: &[Vec<i64>]) -> Result<Vec<BigRational>, DenseError> {
    let n = check_square(m)?;
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(DenseError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(i) = (k + 1..n).find(|&i| !a[k][i].is_zero()) {
                // row_k += row_i, col_k += col_i gives a[k][k] = 2 a[k][i].
                for j in 0..n {
                    let v = a[i][j].clone();
                    a[k][j] += v;
                }
                for j in 0..n {
                    let v = a[j][i].clone();
                    a[j][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            // whole remaining row is zero
            diag.push(pivot);
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
            for j in k..n {
                let v = &f * &a[j][k];
                a[j][i] -= v;
            }
        }
        diag.push(pivot);
    }
    Ok(diag)
}

/// (#positive) - (#negative) entries of a congruence diagonalisation.
pub fn signature_of(m: &[Vec<i64>]) -> Result<i64, DenseError> {
    let d = congruence_diagonal(m)?;
    Ok(d.iter()
        .map(|v| if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[]).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&[vec![2, 1], vec![1, 2]]).unwrap(), BigInt::from(3));
        assert_eq!(
            determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]).unwrap(),
            BigInt::from(-5)
        );
        assert!(determinant(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn hyperbolic_plane_has_signature_zero() {
        // zero diagonal forces the off-diagonal pivot path
        assert_eq!(signature_of(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(signature_of(&[vec![1, 0], vec![0, -1]]).unwrap(), 0);
        assert_eq!(signature_of(&[vec![1, 0], vec![0, 1]]).unwrap(), 2);
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            signature_of(&[vec![1, 2], vec![0, 1]]),
            Err(DenseError::NotSymmetric { row: 1, col: 0 })
        );
    }
}
