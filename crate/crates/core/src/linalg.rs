//! Numerical rank, positive semi-definiteness, coherence, bounded-norm rank
//! factorizations, and the perturbed-identity rank bounds `m(d, eps)` with
//! their simplex lower-bound witnesses.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};

use crate::eigen::{jacobi_eigen, svd};
use crate::error::{Error, Result};
use crate::matrix::{FactorizationPair, Matrix};

/// Relative rank threshold: singular values above `tol * sigma_max` count.
pub fn default_rank_tol(rows: usize, cols: usize) -> f64 {
    1e-9 * rows.max(cols) as f64
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::input("eigenvalues require a square matrix"));
    }
    if a.max_asymmetry() > 1e-9 * (1.0 + a.inf_norm()) {
        return Err(Error::input("matrix is not symmetric"));
    }
    Ok(jacobi_eigen(&a.symmetrized())?.0)
}

/// Number of singular values exceeding `tol * sigma_max`; 0 for the zero
/// matrix. Symmetric inputs use `|lambda|` from the Jacobi solver directly,
/// which avoids squaring the condition number through `A^t A`.
pub fn numerical_rank(a: &Matrix, tol: Option<f64>) -> Result<usize> {
    a.check_finite()?;
    let tol = tol.unwrap_or_else(|| default_rank_tol(a.rows(), a.cols()));
    if tol <= 0.0 {
        return Err(Error::input("rank tolerance must be positive"));
    }
    let sigma = singular_values(a)?;
    let top = sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sigma.iter().filter(|&&s| s > tol * top).count())
}

fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    if a.is_square() && a.max_asymmetry() <= 1e-12 * (1.0 + a.inf_norm()) {
        let (eigs, _) = jacobi_eigen(&a.symmetrized())?;
        let mut s: Vec<f64> = eigs.into_iter().map(f64::abs).collect();
        s.sort_by(|x, y| y.partial_cmp(x).unwrap());
        Ok(s)
    } else {
        let (_, s, _) = svd(a)?;
        Ok(s)
    }
}

/// True iff the minimum eigenvalue is at least `-tol * (spectral radius + 1)`.
/// The input must be symmetric within `tol`; callers symmetrize first.
pub fn is_psd(a: &Matrix, tol: f64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::input("is_psd requires a square matrix"));
    }
    if a.max_asymmetry() > tol {
        return Err(Error::input(format!(
            "matrix asymmetry {} exceeds tol {tol}; symmetrize first",
            a.max_asymmetry()
        )));
    }
    if a.rows() == 0 {
        return Ok(true);
    }
    let (eigs, _) = jacobi_eigen(&a.symmetrized())?;
    let radius = eigs.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(min >= -tol * (radius + 1.0))
}

/// Coherence of the row space of a symmetric matrix:
/// `(n/d) * max_i ||P_U e_i||^2` for the rank-`d` row space `U`.
/// Always lands in `[1, n/d]` up to roundoff.
pub fn coherence(a: &Matrix, rank_tol: Option<f64>) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::input("coherence requires a square matrix"));
    }
    if a.max_asymmetry() > 1e-9 * (1.0 + a.inf_norm()) {
        return Err(Error::input("coherence requires a symmetric matrix"));
    }
    let n = a.rows();
    let (eigs, q) = jacobi_eigen(&a.symmetrized())?;
    let top = eigs.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    if top == 0.0 {
        return Err(Error::input("coherence of the zero matrix is undefined"));
    }
    let tol = rank_tol.unwrap_or_else(|| default_rank_tol(n, n));
    let keep: Vec<usize> = (0..n).filter(|&j| eigs[j].abs() > tol * top).collect();
    let d = keep.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let p: f64 = keep.iter().map(|&j| q.get(i, j) * q.get(i, j)).sum();
        worst = worst.max(p);
    }
    Ok(n as f64 / d as f64 * worst)
}

/// Factorizes a PSD matrix as `A = X X^t` with `X` of width
/// `numerical_rank(A)`. Row `v` of `X` has norm `sqrt(A_vv)` up to roundoff.
pub fn psd_factorize(a: &Matrix, tol: f64) -> Result<FactorizationPair> {
    if !is_psd(a, tol)? {
        return Err(Error::verification("matrix is not positive semi-definite"));
    }
    let n = a.rows();
    let (eigs, q) = jacobi_eigen(&a.symmetrized())?;
    let top = eigs.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let rank_tol = default_rank_tol(n, n);
    let keep: Vec<usize> = (0..n)
        .filter(|&j| eigs[j] > 0.0 && eigs[j].abs() > rank_tol * top)
        .collect();
    let mut x = Matrix::zeros(n, keep.len());
    for (col, &j) in keep.iter().enumerate() {
        let s = eigs[j].sqrt();
        for i in 0..n {
            x.set(i, col, q.get(i, j) * s);
        }
    }
    let pair = FactorizationPair::symmetric(x);
    let err = pair.product().sub(a).inf_norm();
    let budget = 1e-8 * a.inf_norm().max(f64::MIN_POSITIVE);
    if err > budget {
        return Err(Error::verification(format!(
            "psd factorization residual {err} exceeds {budget}"
        )));
    }
    Ok(pair)
}

/// Outcome of [`balanced_rank_factorization`]: the pair, its rank, and the
/// John-ellipsoid row-norm bound `d^(1/4) * ||A||_inf^(1/2)` it is compared
/// against (reported, not guaranteed to be met).
#[derive(Debug, Clone)]
pub struct BalancedFactorization {
    pub pair: FactorizationPair,
    pub rank: usize,
    pub john_bound: f64,
}

/// Rank factorization `A = X Y^t` with `d = numerical_rank(A)` columns and
/// the maximum row norms of `X` and `Y` balanced to within 1%.
///
/// Symmetric inputs factor through the eigendecomposition, which balances the
/// row norms exactly; general inputs go through the SVD with the singular
/// values split evenly, followed by a scalar rescale of the two factors.
pub fn balanced_rank_factorization(a: &Matrix, tol: Option<f64>) -> Result<BalancedFactorization> {
    if !a.is_square() {
        return Err(Error::input("rank factorization requires a square matrix"));
    }
    let n = a.rows();
    let d = numerical_rank(a, tol)?;
    if d == 0 {
        return Err(Error::input("cannot factorize the zero matrix"));
    }
    let john_bound = john_bound(d, a.inf_norm());

    let symmetric = a.max_asymmetry() <= 1e-12 * (1.0 + a.inf_norm());
    let (mut x, mut y) = if symmetric {
        let (eigs, q) = jacobi_eigen(&a.symmetrized())?;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| eigs[j].abs().partial_cmp(&eigs[i].abs()).unwrap().then(i.cmp(&j)));
        let keep = &idx[..d];
        let mut x = Matrix::zeros(n, d);
        let mut y = Matrix::zeros(n, d);
        for (col, &j) in keep.iter().enumerate() {
            let s = eigs[j].abs().sqrt();
            let sign = if eigs[j] < 0.0 { -1.0 } else { 1.0 };
            for i in 0..n {
                x.set(i, col, sign * q.get(i, j) * s);
                y.set(i, col, q.get(i, j) * s);
            }
        }
        (x, y)
    } else {
        let (u, sigma, v) = svd(a)?;
        let mut x = Matrix::zeros(n, d);
        let mut y = Matrix::zeros(n, d);
        for (col, sig) in sigma.iter().take(d).enumerate() {
            let s = sig.sqrt();
            for i in 0..n {
                x.set(i, col, u.get(i, col) * s);
                y.set(i, col, v.get(i, col) * s);
            }
        }
        (x, y)
    };

    // Balance the max row norms: X -> X*s, Y -> Y/s equalizes them in one
    // step; iterate in case of degenerate zero rows.
    for _ in 0..16 {
        let rx = x.max_row_norm();
        let ry = y.max_row_norm();
        if rx == 0.0 || ry == 0.0 || (rx - ry).abs() <= 0.01 * rx.max(ry) {
            break;
        }
        let s = (ry / rx).sqrt();
        x = x.scale(s);
        y = y.scale(1.0 / s);
    }

    let pair = FactorizationPair::new(x, y);
    let err = pair.product().sub(a).inf_norm();
    let budget = 1e-8 * a.inf_norm().max(f64::MIN_POSITIVE);
    if err > budget {
        return Err(Error::verification(format!(
            "rank factorization residual {err} exceeds {budget}"
        )));
    }
    Ok(BalancedFactorization {
        pair,
        rank: d,
        john_bound,
    })
}

/// `d^(1/4) * inf_norm^(1/2)`, the existential row-norm bound for rank-`d`
/// factorizations.
pub fn john_bound(d: usize, inf_norm: f64) -> f64 {
    (d as f64).powf(0.25) * inf_norm.sqrt()
}

/// Upper bound on `m(d, eps)`, the largest number of rows of a symmetric
/// rank-`d` matrix with unit diagonal and off-diagonal magnitudes at most
/// `eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MBound {
    Finite(BigUint),
    /// The exponential-regime bound is astronomically large (exponent beyond
    /// the materialization cap); callers should treat the quantity as
    /// effectively unbounded.
    UnboundedRegime,
}

impl MBound {
    pub fn as_biguint(&self) -> Option<&BigUint> {
        match self {
            MBound::Finite(b) => Some(b),
            MBound::UnboundedRegime => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            MBound::Finite(b) => b.to_f64().unwrap_or(f64::INFINITY),
            MBound::UnboundedRegime => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for MBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MBound::Finite(b) => write!(f, "{b}"),
            MBound::UnboundedRegime => write!(f, "unbounded-regime"),
        }
    }
}

const MBOUND_MAX_BITS: u64 = 1 << 20;

/// Evaluates the perturbed-identity rank bound.
///
/// For `eps < 1/sqrt(d)` this is `floor(d (1 - eps^2) / (1 - d eps^2))`,
/// computed in exact rational arithmetic over the binary value of `eps` so
/// the floor is exact. For `eps` in `[1/sqrt(d), 1/2]` it is
/// `floor(2^(c d eps^2 log2(1/eps)))` with the caller-supplied constant `c`.
pub fn m_upper_bound(d: usize, eps: f64, c: f64) -> Result<MBound> {
    if d == 0 {
        return Err(Error::input("d must be positive"));
    }
    if !(0.0..=0.5).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1/2]")));
    }
    if !(c > 0.0) {
        return Err(Error::input("constant c must be positive"));
    }
    let e = BigRational::from_f64(eps).expect("finite eps");
    let e2 = &e * &e;
    let d_big = BigRational::from_integer(BigInt::from(d));
    let one = BigRational::one();

    if &d_big * &e2 < one {
        // d (1 - eps^2) / (1 - d eps^2) over the exact binary value of eps.
        // The floor carries a 2^-40 relative guard absorbing the rounding of
        // eps to f64: at algebraic boundaries like eps = 1/d the formula
        // lands exactly on an integer, and an eps that rounded down must not
        // drop the floor below it.
        let q = &d_big * (&one - &e2) / (&one - &d_big * &e2);
        let guard = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 40));
        let fl = (&q + &q * guard).floor().to_integer();
        debug_assert!(!fl.is_negative());
        Ok(MBound::Finite(fl.to_biguint().expect("non-negative")))
    } else {
        // eps in [1/sqrt(d), 1/2]
        let exponent = c * d as f64 * eps * eps * (1.0 / eps).log2();
        if !exponent.is_finite() || exponent > MBOUND_MAX_BITS as f64 {
            return Ok(MBound::UnboundedRegime);
        }
        Ok(MBound::Finite(floor_pow2(exponent)))
    }
}

/// `floor(2^x)` for `x >= 0`, carrying the f64 mantissa into a big integer.
fn floor_pow2(x: f64) -> BigUint {
    debug_assert!(x >= 0.0);
    let i = x.floor();
    let f = x - i;
    let i = i as u64;
    if i <= 52 {
        return BigUint::from((2f64.powf(x)).floor() as u64);
    }
    // 2^x = 2^f * 2^i; keep 53 bits of 2^f and shift the rest
    let mant = (2f64.powf(f) * (1u64 << 52) as f64).floor() as u64;
    BigUint::from(mant) << (i - 52)
}

/// Unit rows of a regular `d`-simplex: `d+1` vectors in `R^d` with all
/// pairwise inner products `-1/d`. Built recursively; the first coordinate
/// of every non-apex row is exactly `-1/d`.
pub fn simplex_witness(d: usize) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::input("simplex dimension must be >= 1"));
    }
    Ok(simplex_rows(d))
}

fn simplex_rows(d: usize) -> Matrix {
    if d == 1 {
        return Matrix::from_rows(vec![vec![1.0], vec![-1.0]]).unwrap();
    }
    let sub = simplex_rows(d - 1);
    let a = -1.0 / d as f64;
    let r = (1.0 - 1.0 / (d * d) as f64).sqrt();
    let mut m = Matrix::zeros(d + 1, d);
    m.set(0, 0, 1.0);
    for i in 0..d {
        m.set(i + 1, 0, a);
        for j in 0..(d - 1) {
            m.set(i + 1, j + 1, r * sub.get(i, j));
        }
    }
    m
}

/// Closed-form Gram matrix of the regular `d`-simplex: unit diagonal,
/// off-diagonal entries exactly `-1/d`. This matrix itself is the
/// `m(d, 1/d) >= d+1` witness (symmetric, rank `d`, unit diagonal).
pub fn simplex_gram(d: usize) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::input("simplex dimension must be >= 1"));
    }
    let a = -1.0 / d as f64;
    Ok(Matrix::from_fn(d + 1, d + 1, |i, j| if i == j { 1.0 } else { a }))
}
