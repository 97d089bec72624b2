//! Dense row-major matrices, partial matrices with missing entries, and
//! rank-factorization pairs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::util;

/// Dense real matrix, row-major. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::input("ragged rows"));
            }
            data.extend_from_slice(row);
        }
        let m = Matrix { rows: r, cols: c, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::input("non-finite matrix entry"))
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self * other^t`, the shape used by factorization pairs.
    pub fn matmul_transposed(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        Matrix::from_fn(self.rows, other.rows, |i, j| {
            util::dot(self.row(i), other.row(j))
        })
    }

    /// Gram matrix of the rows: `self * self^t`.
    pub fn gram(&self) -> Matrix {
        self.matmul_transposed(self)
    }

    /// Largest entry magnitude.
    pub fn inf_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest `|a_ij - a_ji|` over a square matrix.
    pub fn max_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `(A + A^t) / 2`.
    pub fn symmetrized(&self) -> Matrix {
        assert!(self.is_square());
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i))
        })
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_row_norm(&self) -> f64 {
        (0..self.rows).fold(0.0, |m, i| m.max(util::norm(self.row(i))))
    }

    /// Text format: `matrix <n> <m>` then rows of shortest round-trip decimals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "matrix {} {}", self.rows, self.cols).unwrap();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x}")).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = nonempty_lines(text);
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty matrix file"))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("matrix") {
            return Err(Error::parse("expected 'matrix <n> <m>' header"));
        }
        let rows: usize = parse_tok(tok.next())?;
        let cols: usize = parse_tok(tok.next())?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse("missing matrix row"))?;
            for t in line.split_whitespace() {
                data.push(
                    t.parse::<f64>()
                        .map_err(|e| Error::parse(format!("bad entry '{t}': {e}")))?,
                );
            }
        }
        if data.len() != rows * cols {
            return Err(Error::parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        let m = Matrix { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }
}

fn nonempty_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && *l != "c" && !l.starts_with("c "))
}

fn parse_tok<T: std::str::FromStr>(tok: Option<&str>) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    tok.ok_or_else(|| Error::parse("missing field"))?
        .parse()
        .map_err(|e| Error::parse(format!("{e}")))
}

/// A pair `(X, Y)` of `n x d` matrices representing `A = X * Y^t`, with the
/// maximum Euclidean row norm over both factors recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationPair {
    pub x: Matrix,
    pub y: Matrix,
    pub max_row_norm: f64,
}

impl FactorizationPair {
    pub fn new(x: Matrix, y: Matrix) -> Self {
        assert_eq!(x.cols(), y.cols(), "factor width mismatch");
        assert_eq!(x.rows(), y.rows(), "factor height mismatch");
        let max_row_norm = x.max_row_norm().max(y.max_row_norm());
        FactorizationPair { x, y, max_row_norm }
    }

    /// Symmetric pair `X = Y`.
    pub fn symmetric(x: Matrix) -> Self {
        let y = x.clone();
        FactorizationPair::new(x, y)
    }

    pub fn dim(&self) -> usize {
        self.x.cols()
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn is_symmetric_pair(&self) -> bool {
        self.x == self.y
    }

    pub fn product(&self) -> Matrix {
        self.x.matmul_transposed(&self.y)
    }

    /// Recomputes the row-norm bookkeeping; true if it matches within 1e-12.
    pub fn row_norm_consistent(&self) -> bool {
        let actual = self.x.max_row_norm().max(self.y.max_row_norm());
        (actual - self.max_row_norm).abs() <= 1e-12
    }
}

/// An `n x n` matrix whose entries are either a real in `[-theta, +theta]`
/// or missing.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMatrix {
    n: usize,
    theta: f64,
    entries: Vec<Option<f64>>,
}

impl PartialMatrix {
    /// All entries missing.
    pub fn empty(n: usize, theta: f64) -> Result<Self> {
        if !(theta >= 1.0) {
            return Err(Error::input(format!("theta must be >= 1, got {theta}")));
        }
        Ok(PartialMatrix {
            n,
            theta,
            entries: vec![None; n * n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        if !v.is_finite() || v.abs() > self.theta {
            return Err(Error::input(format!(
                "entry {v} outside [-{t},+{t}]",
                t = self.theta
            )));
        }
        self.entries[i * self.n + j] = Some(v);
        Ok(())
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        self.entries[i * self.n + j] = None;
    }

    pub fn missing_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_none()).count()
    }

    pub fn missing_fraction(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.missing_count() as f64 / (self.n * self.n) as f64
        }
    }

    /// True iff entry `(i,j)` is present exactly when `(j,i)` is.
    pub fn pattern_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j).is_some() != self.get(j, i).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Present entries as `(i, j, value)`, row-major order.
    pub fn present(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n * self.n).filter_map(move |k| {
            self.entries[k].map(|v| (k / self.n, k % self.n, v))
        })
    }

    /// Text format: `pmatrix <n> <theta>` then rows of decimals or `NA`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "pmatrix {} {}", self.n, self.theta).unwrap();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.get(i, j) {
                    Some(v) => format!("{v}"),
                    None => "NA".into(),
                })
                .collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = nonempty_lines(text);
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty pmatrix file"))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("pmatrix") {
            return Err(Error::parse("expected 'pmatrix <n> <theta>' header"));
        }
        let n: usize = parse_tok(tok.next())?;
        let theta: f64 = parse_tok(tok.next())?;
        let mut pm = PartialMatrix::empty(n, theta)?;
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse("missing pmatrix row"))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != n {
                return Err(Error::parse(format!(
                    "row {i} has {} entries, expected {n}",
                    toks.len()
                )));
            }
            for (j, t) in toks.iter().enumerate() {
                if *t != "NA" {
                    let v: f64 = t
                        .parse()
                        .map_err(|e| Error::parse(format!("bad entry '{t}': {e}")))?;
                    pm.set(i, j, v)?;
                }
            }
        }
        Ok(pm)
    }
}
