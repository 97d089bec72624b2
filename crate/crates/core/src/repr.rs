//! Nearly orthonormal representations: unit vectors per vertex whose inner
//! products across edges are small in magnitude, plus the fitting-matrix
//! checker, the coloring-derived constructor, a multi-restart upper-bound
//! search, and the exact two-dimensional decision via the circular chromatic
//! number.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{is_proper, Coloring, Graph};
use crate::matrix::Matrix;
use crate::solve::{circular_chromatic_number, SolverConfig};
use crate::util::{self, rng_for};

/// Unit rows in `R^d`, one per vertex, with `|<x_u, x_v>| <= eps` across
/// every edge (both validated to 1e-9 at construction).
#[derive(Debug, Clone)]
pub struct Representation {
    graph: Graph,
    vectors: Matrix,
    eps: f64,
}

impl Representation {
    pub fn new(graph: Graph, vectors: Matrix, eps: f64) -> Result<Self> {
        if vectors.rows() != graph.n() {
            return Err(Error::input(format!(
                "representation has {} rows for a graph on {} vertices",
                vectors.rows(),
                graph.n()
            )));
        }
        for v in 0..vectors.rows() {
            let nrm = util::norm(vectors.row(v));
            if (nrm - 1.0).abs() > 1e-9 {
                return Err(Error::verification(format!(
                    "row {} has norm {nrm}, not unit",
                    v + 1
                )));
            }
        }
        for (u, v) in graph.edges() {
            let ip = util::dot(vectors.row(u - 1), vectors.row(v - 1));
            if ip.abs() > eps + 1e-9 {
                return Err(Error::verification(format!(
                    "edge ({u},{v}) has |inner product| {} > eps {eps}",
                    ip.abs()
                )));
            }
        }
        Ok(Representation { graph, vectors, eps })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn vector(&self, v: usize) -> &[f64] {
        self.vectors.row(v - 1)
    }

    pub fn gram(&self) -> Matrix {
        self.vectors.gram()
    }

    /// Same vectors embedded in `R^(d+1)` by appending a zero coordinate.
    pub fn embed(&self, extra_dims: usize) -> Representation {
        let d = self.dim();
        let vectors = Matrix::from_fn(self.vectors.rows(), d + extra_dims, |i, j| {
            if j < d {
                self.vectors.get(i, j)
            } else {
                0.0
            }
        });
        Representation {
            graph: self.graph.clone(),
            vectors,
            eps: self.eps,
        }
    }

    /// Dump format: `rep <n> <d> <eps>` then one row per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "rep {} {} {}",
            self.vectors.rows(),
            self.vectors.cols(),
            self.eps
        )
        .unwrap();
        for i in 0..self.vectors.rows() {
            let row: Vec<String> = self.vectors.row(i).iter().map(|x| format!("{x}")).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parses a dump against the graph it belongs to.
    pub fn parse(text: &str, graph: Graph) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c'));
        let header = lines.next().ok_or_else(|| Error::parse("empty rep file"))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("rep") {
            return Err(Error::parse("expected 'rep <n> <d> <eps>' header"));
        }
        let n: usize = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("bad n"))?;
        let d: usize = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("bad d"))?;
        let eps: f64 = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("bad eps"))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|e| Error::parse(format!("bad vector entry: {e}")))?;
            if row.len() != d {
                return Err(Error::parse("row width mismatch"));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::parse("row count mismatch"));
        }
        Representation::new(graph, Matrix::from_rows(rows)?, eps)
    }
}

/// Outcome of checking whether a matrix eps-fits a graph: unit diagonal
/// within `tol`, edge magnitudes at most `eps + tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub ok: bool,
    pub worst_diagonal: f64,
    pub worst_edge: f64,
}

/// Checks the fitting conditions entrywise and reports worst violations.
/// Non-symmetric matrices are checked on both `(u,v)` and `(v,u)` entries.
pub fn check_eps_fit(a: &Matrix, g: &Graph, eps: f64, tol: f64) -> Result<FitReport> {
    if !a.is_square() || a.rows() != g.n() {
        return Err(Error::input(format!(
            "matrix is {}x{} but the graph has {} vertices",
            a.rows(),
            a.cols(),
            g.n()
        )));
    }
    let mut worst_diagonal = 0.0f64;
    for v in 0..g.n() {
        worst_diagonal = worst_diagonal.max((a.get(v, v) - 1.0).abs());
    }
    let mut worst_edge = 0.0f64;
    for (u, v) in g.edges() {
        worst_edge = worst_edge.max(a.get(u - 1, v - 1).abs());
        worst_edge = worst_edge.max(a.get(v - 1, u - 1).abs());
    }
    Ok(FitReport {
        ok: worst_diagonal <= tol && worst_edge <= eps + tol,
        worst_diagonal,
        worst_edge,
    })
}

/// Standard-basis representation from a proper coloring: the vertex colored
/// `i` gets `e_i` in `R^k`. Exactly 0-orthonormal; the Gram is a 0/1 matrix.
pub fn representation_from_coloring(g: &Graph, c: &Coloring) -> Result<Representation> {
    if !is_proper(g, c)? {
        return Err(Error::input("coloring is not proper"));
    }
    let k = c.k();
    let vectors = Matrix::from_fn(g.n(), k, |v, j| if c.color(v + 1) == j + 1 { 1.0 } else { 0.0 });
    Representation::new(g.clone(), vectors, 0.0)
}

const OD_SEARCH_ITERS: usize = 3000;
const OD_PENALTY_SUCCESS: f64 = 1e-14;

/// Multi-restart penalty search for a `d`-dimensional eps-orthonormal
/// representation. Minimizes the squared hinge
/// `sum_edges max(0, |<x_u,x_v>| - eps)^2` over unit rows by projected
/// gradient descent with backtracking.
///
/// Returns the witness from the first successful restart, or `None` after
/// the restart budget; absence is *not* a lower-bound certificate.
pub fn od_eps_upper(
    g: &Graph,
    d: usize,
    eps: f64,
    restarts: usize,
    seed: u64,
) -> Result<Option<Representation>> {
    if d == 0 {
        return Err(Error::input("dimension must be >= 1"));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1)")));
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some(Representation::new(g.clone(), Matrix::zeros(0, d), eps)?));
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (u - 1, v - 1)).collect();
    let mut rng = rng_for(seed, "od-eps-upper");

    for _restart in 0..restarts {
        let mut x = Matrix::from_fn(n, d, |_, _| util::gaussian(&mut rng));
        normalize_rows(&mut x);
        let mut penalty = hinge_penalty(&x, &edges, eps);
        // descend to a stationary point: polishing past the success
        // threshold pushes edge excesses to roundoff, so the witness meets
        // the representation invariant
        for _ in 0..OD_SEARCH_ITERS {
            if penalty == 0.0 {
                break;
            }
            let grad = hinge_gradient(&x, &edges, eps);
            let mut step = 0.1;
            let mut improved = false;
            while step > 1e-14 {
                let mut y = x.clone();
                for i in 0..n {
                    for j in 0..d {
                        y.set(i, j, x.get(i, j) - step * grad.get(i, j));
                    }
                }
                normalize_rows(&mut y);
                let p2 = hinge_penalty(&y, &edges, eps);
                if p2 < penalty {
                    x = y;
                    penalty = p2;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break; // stationary for this restart
            }
        }
        if penalty < OD_PENALTY_SUCCESS {
            if let Ok(rep) = Representation::new(g.clone(), x, eps) {
                return Ok(Some(rep));
            }
        }
    }
    Ok(None)
}

fn normalize_rows(x: &mut Matrix) {
    for i in 0..x.rows() {
        let nrm = util::norm(x.row(i));
        if nrm > 0.0 {
            for j in 0..x.cols() {
                x.set(i, j, x.get(i, j) / nrm);
            }
        } else {
            x.set(i, 0, 1.0);
        }
    }
}

fn hinge_penalty(x: &Matrix, edges: &[(usize, usize)], eps: f64) -> f64 {
    let mut p = 0.0;
    for &(u, v) in edges {
        let ip = util::dot(x.row(u), x.row(v));
        let excess = ip.abs() - eps;
        if excess > 0.0 {
            p += excess * excess;
        }
    }
    p
}

fn hinge_gradient(x: &Matrix, edges: &[(usize, usize)], eps: f64) -> Matrix {
    let mut g = Matrix::zeros(x.rows(), x.cols());
    for &(u, v) in edges {
        let ip = util::dot(x.row(u), x.row(v));
        let excess = ip.abs() - eps;
        if excess > 0.0 {
            let s = 2.0 * excess * ip.signum();
            for j in 0..x.cols() {
                g.set(u, j, g.get(u, j) + s * x.get(v, j));
                g.set(v, j, g.get(v, j) + s * x.get(u, j));
            }
        }
    }
    g
}

/// Exact decision for `od_eps(G) <= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Od2Decision {
    pub feasible: bool,
    /// `cos(pi / chi_c(G))`; `None` for edgeless graphs (trivially feasible).
    pub threshold: Option<f64>,
    pub chi_c: Option<(usize, usize)>,
}

/// Decides `od_eps(G) <= 2` exactly: feasible iff `eps >= cos(pi/chi_c(G))`,
/// with the comparison guarded at 1e-12. Edgeless graphs are trivially
/// feasible in one dimension already.
pub fn od2_exact(g: &Graph, eps: f64, cfg: &SolverConfig) -> Result<Od2Decision> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1)")));
    }
    if g.edge_count() == 0 {
        return Ok(Od2Decision {
            feasible: true,
            threshold: None,
            chi_c: None,
        });
    }
    let r = circular_chromatic_number(g, cfg)?;
    let threshold = (std::f64::consts::PI * r.q as f64 / r.p as f64).cos();
    Ok(Od2Decision {
        feasible: eps >= threshold - 1e-12,
        threshold: Some(threshold),
        chi_c: Some((r.p, r.q)),
    })
}
