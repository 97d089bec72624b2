//! Cyclic Jacobi eigendecomposition for symmetric matrices, and a thin SVD
//! built on it via the eigendecomposition of `A^t A`. Deterministic, no
//! external dependencies; adequate for the dense sizes this crate handles.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `A = Q diag(lambda) Q^t` of a symmetric matrix.
///
/// Eigenvalues are returned in descending order; eigenvectors are the
/// corresponding columns of `Q`, each sign-normalized so its largest-magnitude
/// component is positive.
pub fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_square() {
        return Err(Error::input("eigendecomposition requires a square matrix"));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut q = Matrix::identity(n);
    if n == 0 {
        return Ok((vec![], q));
    }

    let scale: f64 = {
        let mut s = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                s = s.max(m.get(i, j).abs());
            }
        }
        s
    };
    if scale == 0.0 {
        return Ok((vec![0.0; n], q));
    }
    let tol = 1e-15 * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off = off.max(m.get(p, r).abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = m.get(p, r);
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(r, r);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e12 {
                    1.0 / (2.0 * theta)
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, r);
                    m.set(k, p, c * akp - s * akq);
                    m.set(k, r, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(r, k);
                    m.set(p, k, c * apk - s * aqk);
                    m.set(r, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkq = q.get(k, r);
                    q.set(k, p, c * qkp - s * qkq);
                    q.set(k, r, s * qkp + c * qkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    order.sort_by(|&i, &j| eigs[j].partial_cmp(&eigs[i]).unwrap().then(i.cmp(&j)));

    let mut values = Vec::with_capacity(n);
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        values.push(eigs[i]);
        // sign normalization: largest-magnitude component positive
        let mut pivot = 0usize;
        let mut pivot_abs = 0.0f64;
        for k in 0..n {
            let v = q.get(k, i).abs();
            if v > pivot_abs {
                pivot_abs = v;
                pivot = k;
            }
        }
        let sign = if q.get(pivot, i) < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors.set(k, col, sign * q.get(k, i));
        }
    }
    Ok((values, vectors))
}

/// Thin SVD `A = U diag(sigma) V^t` with `r = min(rows, cols)` columns,
/// singular values descending.
///
/// Computed from the Jacobi eigendecomposition of the symmetric embedding
/// `[[0, A], [A^t, 0]]`, whose spectrum is `{+sigma_i, -sigma_i}` padded
/// with zeros; this keeps singular values accurate to machine precision
/// instead of squaring the condition number through `A^t A`. Columns for
/// negligible singular values are zero (callers truncate at a rank
/// threshold first).
pub fn svd(a: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    let (n, m) = (a.rows(), a.cols());
    let r = n.min(m);
    let k = n + m;
    let mut e = Matrix::zeros(k, k);
    for i in 0..n {
        for j in 0..m {
            e.set(i, n + j, a.get(i, j));
            e.set(n + j, i, a.get(i, j));
        }
    }
    let (eigs, w) = jacobi_eigen(&e)?;

    let mut u = Matrix::zeros(n, r);
    let mut v = Matrix::zeros(m, r);
    let mut sigma = vec![0.0; r];
    let scale = eigs.first().copied().unwrap_or(0.0).abs();
    let sqrt2 = 2.0f64.sqrt();
    // eigenvalues are descending, so the +sigma branch comes first
    for (col, j) in (0..k).take(r).enumerate() {
        let lambda = eigs[j];
        if lambda <= scale * 1e-300 {
            break;
        }
        sigma[col] = lambda;
        for i in 0..n {
            u.set(i, col, sqrt2 * w.get(i, j));
        }
        for i in 0..m {
            v.set(i, col, sqrt2 * w.get(n + i, j));
        }
    }
    Ok((u, sigma, v))
}
