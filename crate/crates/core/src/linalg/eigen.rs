use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EigenError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("matrix is not square")]
    NotSquare,
}

#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm drops below this value.
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_sweeps: 100,
        }
    }
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Rotations are applied in a fixed row-major order, so the
/// result is reproducible bit for bit.
pub fn symmetric_eigenvalues(m: &[Vec<f64>], opts: JacobiOptions) -> Result<Vec<f64>, EigenError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(EigenError::NotSquare);
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off < opts.tolerance {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(EigenError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
