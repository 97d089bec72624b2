//! The reduction chain: gap coloring to graph fitness (two routes: plain
//! copies, and line digraph plus copies), graph fitness to completion
//! instances (PSD and bounded-infinity-norm variants), planted YES
//! certificates built from cyclic shifts of a proper coloring, instance
//! verifiers, the contrapositive normalizations that turn approximate
//! completions back into representations and bounded factorizations,
//! parameter-regime calculators, and zero padding.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{
    central_binomial_b, disjoint_union, is_proper, line_digraph, underlying_graph, ArcTable,
    Coloring, Graph,
};
use crate::linalg::{
    balanced_rank_factorization, coherence, is_psd, john_bound, m_upper_bound, numerical_rank,
    psd_factorize, MBound,
};
use crate::matrix::{FactorizationPair, Matrix, PartialMatrix};
use crate::repr::Representation;
use crate::util;

/// A graph-fitness gap instance: distinguish a planted rank-`d1` PSD fit
/// with coherence 1 from the absence of any bounded-norm symmetric
/// eps-fitting product of width below `d2`.
#[derive(Debug, Clone)]
pub struct FitnessInstance {
    pub graph: Graph,
    pub d1: usize,
    pub d2: usize,
    pub eps: f64,
    pub theta: f64,
    pub provenance: String,
}

/// The same instance re-labeled for the orthogonality-dimension problem;
/// the identity reduction drops the norm bound.
#[derive(Debug, Clone)]
pub struct OrthoDimInstance {
    pub graph: Graph,
    pub d1: usize,
    pub d2: usize,
    pub eps: f64,
    pub provenance: String,
}

/// A low-rank completion gap instance over a partial matrix.
#[derive(Debug, Clone)]
pub struct CompletionInstance {
    pub partial: PartialMatrix,
    pub d1: usize,
    pub d2: usize,
    pub eps: f64,
    pub theta: f64,
    pub psd_required: bool,
    pub provenance: String,
}

/// Planted YES-side completion: a 0/1 Gram matrix of rank exactly `k` with
/// coherence 1, plus the shifted coloring that produced it.
#[derive(Debug, Clone)]
pub struct YesCertificate {
    pub b: Matrix,
    pub rank: usize,
    pub coherence_value: f64,
    pub coloring_used: Coloring,
}

fn validate_fitness_params(d1: usize, d2: usize, eps: f64, theta: f64) -> Result<()> {
    if d1 == 0 || d1 >= d2 {
        return Err(Error::input(format!("require 1 <= d1 < d2, got ({d1},{d2})")));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1)")));
    }
    if !(theta >= 1.0) {
        return Err(Error::input(format!("theta {theta} below 1")));
    }
    Ok(())
}

/// Builds the planted certificate for a k-colorable graph: `H` is the
/// disjoint union of `k` copies of `G`, copy `j` colored by the coloring
/// shifted cyclically by `j-1`, and `B` is the 0/1 Gram of the standard
/// basis assignment. Every color class of `H` has size exactly `n`, so
/// `rank(B) = k` and the coherence is 1.
pub fn yes_certificate(g: &Graph, c: &Coloring) -> Result<(Graph, YesCertificate)> {
    if g.n() == 0 {
        return Err(Error::input("certificate needs at least one vertex"));
    }
    if !is_proper(g, c)? {
        return Err(Error::input("coloring is not proper"));
    }
    let k = c.k();
    let n = g.n();
    let h = disjoint_union(g, k)?;
    let mut assignment = Vec::with_capacity(n * k);
    for j in 0..k {
        assignment.extend_from_slice(c.cyclic_shift(j).assignment());
    }
    let coloring_used = Coloring::new(assignment, k)?;
    debug_assert!(is_proper(&h, &coloring_used)?);

    let b = Matrix::from_fn(h.n(), h.n(), |u, v| {
        if coloring_used.color(u + 1) == coloring_used.color(v + 1) {
            1.0
        } else {
            0.0
        }
    });
    let rank = numerical_rank(&b, None)?;
    let coherence_value = coherence(&b, None)?;
    Ok((
        h,
        YesCertificate {
            b,
            rank,
            coherence_value,
            coloring_used,
        },
    ))
}

/// Copies-route reduction output; the recorded soundness threshold is the
/// chromatic bar `(4 theta^2 / (1 - eps) + 1)^(d2)` above which the NO side
/// is certified.
#[derive(Debug, Clone)]
pub struct CopiesReduction {
    pub instance: FitnessInstance,
    pub soundness_threshold: f64,
}

/// Reduction from coloring to graph fitness by taking `d1` disjoint copies.
pub fn reduce_coloring_to_fitness_copies(
    g: &Graph,
    d1: usize,
    d2: usize,
    eps: f64,
    theta: f64,
) -> Result<CopiesReduction> {
    validate_fitness_params(d1, d2, eps, theta)?;
    let h = disjoint_union(g, d1)?;
    let soundness_threshold = (4.0 * theta * theta / (1.0 - eps) + 1.0).powi(d2 as i32);
    let provenance = format!(
        "col2fit-copies(n={}, m={}, d1={d1}, d2={d2}, eps={eps}, theta={theta})",
        g.n(),
        g.edge_count()
    );
    Ok(CopiesReduction {
        instance: FitnessInstance {
            graph: h,
            d1,
            d2,
            eps,
            theta,
            provenance,
        },
        soundness_threshold,
    })
}

/// Validity report for the line-digraph reduction: the three soundness
/// conditions, checked against caller-supplied coloring gap `(k1, k2)` when
/// given. Instances with unmet conditions are still emitted.
#[derive(Debug, Clone)]
pub struct LineReductionConditions {
    pub eps_prime: f64,
    pub m_bound: MBound,
    /// `log2` of the required lower bound on `k2`.
    pub log2_required_k2: f64,
    pub k1_ok: Option<bool>,
    pub k2_ok: Option<bool>,
    pub met: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct LineReduction {
    pub instance: FitnessInstance,
    pub arc_table: ArcTable,
    pub conditions: LineReductionConditions,
}

fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().unwrap().log2();
    }
    let shifted = (x >> (bits - 53)).to_f64().unwrap();
    shifted.log2() + (bits - 53) as f64
}

/// Reduction from coloring to graph fitness through the underlying graph of
/// the line digraph: `H` is `d1` copies of that graph. Completeness uses
/// `k1 <= b(d1)`; soundness needs `k2` at least `(2 theta/eta + 1)` to the
/// power `d2 * m(d2, 2 eta theta + eps)`, checked here with the upper bound
/// on `m` (conservative in the right direction).
#[allow(clippy::too_many_arguments)]
pub fn reduce_coloring_to_fitness_linedigraph(
    g: &Graph,
    d1: usize,
    d2: usize,
    eps: f64,
    theta: f64,
    eta: f64,
    gap: Option<(&BigUint, &BigUint)>,
    alon_c: f64,
) -> Result<LineReduction> {
    validate_fitness_params(d1, d2, eps, theta)?;
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1/2)")));
    }
    let eta_max = (1.0 - 2.0 * eps) / (4.0 * theta);
    if !(eta > 0.0 && eta <= eta_max + 1e-12) {
        return Err(Error::input(format!(
            "eta {eta} outside (0, {eta_max}]"
        )));
    }

    let (dg, arc_table) = line_digraph(g);
    let ug = underlying_graph(&dg);
    let h = disjoint_union(&ug, d1)?;

    let eps_prime = 2.0 * eta * theta + eps;
    let m_bound = m_upper_bound(d2, eps_prime.min(0.5), alon_c)?;
    let log2_required_k2 = d2 as f64 * m_bound.to_f64() * (2.0 * theta / eta + 1.0).log2();

    let (k1_ok, k2_ok) = match gap {
        None => (None, None),
        Some((k1, k2)) => {
            let k1_ok = *k1 <= central_binomial_b(d1);
            let k2_ok = big_log2(k2) >= log2_required_k2 - 1e-9;
            (Some(k1_ok), Some(k2_ok))
        }
    };
    let met = match (k1_ok, k2_ok) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };

    let provenance = format!(
        "col2fit-line(n={}, m={}, d1={d1}, d2={d2}, eps={eps}, theta={theta}, eta={eta}{})",
        g.n(),
        g.edge_count(),
        match met {
            Some(false) => ", conditions unmet",
            _ => "",
        }
    );
    Ok(LineReduction {
        instance: FitnessInstance {
            graph: h,
            d1,
            d2,
            eps,
            theta,
            provenance,
        },
        arc_table,
        conditions: LineReductionConditions {
            eps_prime,
            m_bound,
            log2_required_k2,
            k1_ok,
            k2_ok,
            met,
        },
    })
}

/// Exact parameter transform `eps' = eps / (1 + eps)`.
pub fn eps_prime(eps: f64) -> f64 {
    eps / (1.0 + eps)
}

/// Inverse transform `eps = eps' / (1 - eps')`.
pub fn eps_from_prime(eps_prime: f64) -> f64 {
    eps_prime / (1.0 - eps_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionVariant {
    Psd,
    Bounded,
}

/// Reduction from graph fitness to a completion instance. The partial matrix
/// has ones on the diagonal, zeros on edges, and missing entries elsewhere.
///
/// The PSD variant carries `(d1, d2, eps')`; the bounded variant requires
/// `d1 < floor(d2/2)` and `theta >= sqrt(1+eps) * d2^(1/4)` and carries
/// `(d1, floor(d2/2), eps', theta^2 / ((1+eps) sqrt(d2)))`.
pub fn reduce_fitness_to_completion(
    inst: &FitnessInstance,
    variant: CompletionVariant,
) -> Result<CompletionInstance> {
    let n = inst.graph.n();
    let ep = eps_prime(inst.eps);
    let (d2, theta, kind) = match variant {
        CompletionVariant::Psd => (inst.d2, 1.0, "psd"),
        CompletionVariant::Bounded => {
            let half = inst.d2 / 2;
            if inst.d1 >= half {
                return Err(Error::input(format!(
                    "bounded variant requires d1 < floor(d2/2) = {half}, got d1 = {}",
                    inst.d1
                )));
            }
            let theta_floor = (1.0 + inst.eps).sqrt() * (inst.d2 as f64).powf(0.25);
            if inst.theta < theta_floor - 1e-12 {
                return Err(Error::input(format!(
                    "bounded variant requires theta >= {theta_floor}, got {}",
                    inst.theta
                )));
            }
            let tp = inst.theta * inst.theta / ((1.0 + inst.eps) * (inst.d2 as f64).sqrt());
            (half, tp.max(1.0), "bounded")
        }
    };

    let mut partial = PartialMatrix::empty(n, theta)?;
    for v in 0..n {
        partial.set(v, v, 1.0)?;
    }
    for (u, v) in inst.graph.edges() {
        partial.set(u - 1, v - 1, 0.0)?;
        partial.set(v - 1, u - 1, 0.0)?;
    }
    Ok(CompletionInstance {
        partial,
        d1: inst.d1,
        d2,
        eps: ep,
        theta,
        psd_required: variant == CompletionVariant::Psd,
        provenance: format!("{}+fit2comp-{kind}", inst.provenance),
    })
}

/// The graph encoded by a reduction-produced partial matrix: vertices are
/// the rows, edges the present off-diagonal zero entries.
pub fn graph_of_pattern(pm: &PartialMatrix) -> Result<Graph> {
    let n = pm.n();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(v) = pm.get(i, j) {
                if v == 0.0 {
                    g.add_edge(i + 1, j + 1)?;
                }
            }
        }
    }
    Ok(g)
}

/// Verifier report for a candidate PSD completion.
#[derive(Debug, Clone)]
pub struct PsdVerification {
    pub agrees: bool,
    pub worst_deviation: f64,
    pub psd: bool,
    pub rank: usize,
    /// Reported when the candidate agrees and is PSD.
    pub coherence: Option<f64>,
}

/// Checks a candidate completion `B` against the present entries of `A`
/// (closed inequality `<= eps + tol`), positive semi-definiteness, rank,
/// and coherence.
pub fn verify_psd_completion(
    a: &PartialMatrix,
    b: &Matrix,
    eps: f64,
    tol: f64,
) -> Result<PsdVerification> {
    if !b.is_square() || b.rows() != a.n() {
        return Err(Error::input(format!(
            "candidate is {}x{}, instance is {}x{}",
            b.rows(),
            b.cols(),
            a.n(),
            a.n()
        )));
    }
    let mut worst_deviation = 0.0f64;
    for (i, j, v) in a.present() {
        worst_deviation = worst_deviation.max((v - b.get(i, j)).abs());
    }
    let agrees = worst_deviation <= eps + tol;
    let psd = if b.max_asymmetry() <= 1e-7 {
        is_psd(&b.symmetrized(), tol.max(1e-9))?
    } else {
        false
    };
    let rank = numerical_rank(b, None)?;
    let coherence = if agrees && psd {
        coherence(&b.symmetrized(), None).ok()
    } else {
        None
    };
    Ok(PsdVerification {
        agrees,
        worst_deviation,
        psd,
        rank,
        coherence,
    })
}

/// Verifier report for a bounded-infinity-norm completion.
#[derive(Debug, Clone)]
pub struct BoundedVerification {
    pub agrees: bool,
    pub worst_deviation: f64,
    pub inf_norm_ok: bool,
    pub inf_norm: f64,
    pub rank: usize,
}

pub fn verify_bounded_completion(
    a: &PartialMatrix,
    b: &Matrix,
    eps: f64,
    theta: f64,
    tol: f64,
) -> Result<BoundedVerification> {
    if !b.is_square() || b.rows() != a.n() {
        return Err(Error::input("candidate dimension mismatch"));
    }
    let mut worst_deviation = 0.0f64;
    for (i, j, v) in a.present() {
        worst_deviation = worst_deviation.max((v - b.get(i, j)).abs());
    }
    let inf_norm = b.inf_norm();
    Ok(BoundedVerification {
        agrees: worst_deviation <= eps + tol,
        worst_deviation,
        inf_norm_ok: inf_norm <= theta + tol,
        inf_norm,
        rank: numerical_rank(b, None)?,
    })
}

/// Contrapositive normalization, PSD side: factorizes an approximate PSD
/// completion and rescales the rows to unit norm, yielding an
/// eps-orthonormal representation with `eps = eps'/(1 - eps')` in dimension
/// `rank(B)` of the graph the instance encodes.
pub fn psd_completion_to_representation(
    a: &PartialMatrix,
    b: &Matrix,
    eps_pr: f64,
) -> Result<Representation> {
    if !(0.0..0.5).contains(&eps_pr) {
        return Err(Error::input(format!("eps' {eps_pr} outside [0, 1/2)")));
    }
    if !b.is_square() || b.rows() != a.n() {
        return Err(Error::input("candidate dimension mismatch"));
    }
    if b.max_asymmetry() > 1e-7 || !is_psd(&b.symmetrized(), 1e-9)? {
        return Err(Error::verification("candidate is not positive semi-definite"));
    }
    for (i, j, v) in a.present() {
        if (v - b.get(i, j)).abs() > eps_pr + 1e-12 {
            return Err(Error::verification(format!(
                "entry ({},{}) deviates by {} > eps' = {eps_pr}",
                i + 1,
                j + 1,
                (v - b.get(i, j)).abs()
            )));
        }
    }
    for v in 0..b.rows() {
        let d = b.get(v, v);
        if !(1.0 - eps_pr - 1e-9..=1.0 + eps_pr + 1e-9).contains(&d) {
            return Err(Error::verification(format!(
                "diagonal entry {d} at vertex {} outside [1-eps', 1+eps']",
                v + 1
            )));
        }
    }
    let pair = psd_factorize(&b.symmetrized(), 1e-9)?;
    let mut x = pair.x;
    for i in 0..x.rows() {
        let nrm = util::norm(x.row(i));
        for j in 0..x.cols() {
            x.set(i, j, x.get(i, j) / nrm);
        }
    }
    let graph = graph_of_pattern(a)?;
    Representation::new(graph, x, eps_from_prime(eps_pr))
}

/// Contrapositive normalization, bounded side.
#[derive(Debug, Clone)]
pub struct BoundedNormalization {
    pub pair: FactorizationPair,
    pub rank: usize,
    /// Row-norm bound of the symmetrized factorization before rescaling.
    pub john_bound: f64,
}

/// Symmetrizes an approximate bounded completion, factorizes it with
/// balanced row norms, and rescales row pairs by `<x_v, y_v>^(1/2)` so the
/// product has unit diagonal; the product then eps-fits the encoded graph
/// with `eps = eps'/(1 - eps')`.
pub fn bounded_completion_to_factorization(
    a: &PartialMatrix,
    b: &Matrix,
    eps_pr: f64,
    theta_pr: f64,
) -> Result<BoundedNormalization> {
    if !(0.0..0.5).contains(&eps_pr) {
        return Err(Error::input(format!("eps' {eps_pr} outside [0, 1/2)")));
    }
    if !b.is_square() || b.rows() != a.n() {
        return Err(Error::input("candidate dimension mismatch"));
    }
    if b.inf_norm() > theta_pr + 1e-12 {
        return Err(Error::verification(format!(
            "candidate infinity norm {} exceeds theta' = {theta_pr}",
            b.inf_norm()
        )));
    }
    for (i, j, v) in a.present() {
        if (v - b.get(i, j)).abs() > eps_pr + 1e-12 {
            return Err(Error::verification(format!(
                "entry ({},{}) deviates by {} > eps' = {eps_pr}",
                i + 1,
                j + 1,
                (v - b.get(i, j)).abs()
            )));
        }
    }
    let c = b.symmetrized();
    let bf = balanced_rank_factorization(&c, None)?;
    let (x, y) = (bf.pair.x, bf.pair.y);
    let n = x.rows();
    let d = x.cols();
    let mut xp = Matrix::zeros(n, d);
    let mut yp = Matrix::zeros(n, d);
    for v in 0..n {
        let t = util::dot(x.row(v), y.row(v));
        if !(1.0 - eps_pr - 1e-9..=1.0 + eps_pr + 1e-9).contains(&t) {
            return Err(Error::verification(format!(
                "diagonal product {t} at vertex {} outside [1-eps', 1+eps']",
                v + 1
            )));
        }
        let s = t.sqrt();
        for j in 0..d {
            xp.set(v, j, x.get(v, j) / s);
            yp.set(v, j, y.get(v, j) / s);
        }
    }
    Ok(BoundedNormalization {
        pair: FactorizationPair::new(xp, yp),
        rank: bf.rank,
        john_bound: john_bound(bf.rank, c.inf_norm()),
    })
}

/// One admissible hardness parameter regime, evaluated with
/// the supplied stand-in constant. Pure arithmetic; no hardness claim.
#[derive(Debug, Clone)]
pub struct RegimeRecord {
    pub name: &'static str,
    pub problem: &'static str,
    pub d1: usize,
    /// d2 bound (rank gap).
    pub g: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub theta: String,
    /// For graph-fitness regimes: the completion-side error after the
    /// `eps/(1+eps)` transform of `eps_max`.
    pub eps_completion_max: Option<f64>,
    pub note: String,
}

/// Evaluates the admissible `(g, eps, theta)` ranges of the hardness
/// regimes: the two graph-fitness items and the three PSD-completion cases
/// (the latter two parameterized by `beta` and `alpha`, representative
/// defaults 2). The absolute constants of the source results are
/// unspecified; `c` stands in for all of them.
pub fn hardness_parameter_regimes(
    d: usize,
    c: f64,
    theta_max: f64,
    beta: f64,
    alpha: f64,
) -> Result<Vec<RegimeRecord>> {
    if d == 0 {
        return Err(Error::input("d must be positive"));
    }
    if !(c > 0.0) {
        return Err(Error::input("c must be positive"));
    }
    let small_d = if d < 64 {
        "; d below proven asymptotic range"
    } else {
        ""
    };
    let base_note = format!("asymptotic formula with supplied c = {c}{small_d}");
    let mut out = Vec::new();

    // Graph-fitness item 1: eps in [0, 1/(3 sqrt(g))],
    // g <= c 2^(d/2) / (d^(1/4) max(log theta, d)^(1/2))
    let log_theta = theta_max.log2().max(0.0);
    let g1 = c * 2f64.powf(d as f64 / 2.0)
        / ((d as f64).powf(0.25) * log_theta.max(d as f64).sqrt());
    let eps1 = 1.0 / (3.0 * g1.sqrt());
    out.push(RegimeRecord {
        name: "gf-item1",
        problem: "graph-fitness",
        d1: d,
        g: g1,
        eps_min: 0.0,
        eps_max: eps1,
        theta: format!("{theta_max}"),
        eps_completion_max: Some(eps_prime(eps1)),
        note: base_note.clone(),
    });

    // Graph-fitness item 2, evaluated at the eps = 1/6 endpoint:
    // g <= c d / (eps^2 log2(1/eps)), theta <= 2^(2^(c d))
    let eps2 = 1.0f64 / 6.0;
    let g2 = c * d as f64 / (eps2 * eps2 * (1.0 / eps2).log2());
    out.push(RegimeRecord {
        name: "gf-item2",
        problem: "graph-fitness",
        d1: d,
        g: g2,
        eps_min: 1.0 / (3.0 * g2.sqrt()),
        eps_max: eps2,
        theta: format!("<= 2^(2^({} )) [log2 log2 = {}]", c * d as f64, c * d as f64),
        eps_completion_max: Some(eps_prime(eps2)),
        note: base_note.clone(),
    });

    // PSD case 1: (d, c 2^(d/2)/d^(3/4), 2^(-c d))
    let g3 = c * 2f64.powf(d as f64 / 2.0) / (d as f64).powf(0.75);
    let eps3 = 2f64.powf(-c * d as f64);
    out.push(RegimeRecord {
        name: "psd-case1",
        problem: "psd-completion",
        d1: d,
        g: g3,
        eps_min: eps3,
        eps_max: eps3,
        theta: "1 (psd)".into(),
        eps_completion_max: None,
        note: base_note.clone(),
    });

    // PSD case 2: (d, d^beta, c / sqrt(d^(beta-1) log2 d))
    if !(beta > 1.0) {
        return Err(Error::input("beta must exceed 1"));
    }
    let eps4 = if d >= 2 {
        c / ((d as f64).powf(beta - 1.0) * (d as f64).log2()).sqrt()
    } else {
        f64::INFINITY
    };
    out.push(RegimeRecord {
        name: "psd-case2",
        problem: "psd-completion",
        d1: d,
        g: (d as f64).powf(beta),
        eps_min: eps4,
        eps_max: eps4,
        theta: "1 (psd)".into(),
        eps_completion_max: None,
        note: format!("{base_note}; beta = {beta}"),
    });

    // PSD case 3: (d, alpha d, eps) with the largest eps in (0, 1/6]
    // satisfying alpha <= c / (eps^2 log2(1/eps))
    if !(alpha > 1.0) {
        return Err(Error::input("alpha must exceed 1"));
    }
    let target = c / alpha;
    let f = |e: f64| e * e * (1.0 / e).log2();
    let eps5 = if f(1.0 / 6.0) <= target {
        1.0 / 6.0
    } else {
        // f is increasing on (0, 1/6]; bisect for f(eps) = target
        let (mut lo, mut hi) = (1e-12, 1.0 / 6.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    out.push(RegimeRecord {
        name: "psd-case3",
        problem: "psd-completion",
        d1: d,
        g: alpha * d as f64,
        eps_min: eps5,
        eps_max: eps5,
        theta: "1 (psd)".into(),
        eps_completion_max: None,
        note: format!("{base_note}; alpha = {alpha}"),
    });

    Ok(out)
}

/// Result of padding: either a new instance or a no-op with the reason.
#[derive(Debug, Clone)]
pub enum PadOutcome {
    Padded {
        instance: CompletionInstance,
        added: usize,
    },
    NoOp {
        reason: String,
    },
}

/// Pads an instance with present zero rows and columns until the missing
/// fraction drops to the target. Padding with exact zeros preserves every
/// completion-rank threshold (any candidate extends block-diagonally).
pub fn pad_instance(inst: &CompletionInstance, target: f64) -> Result<PadOutcome> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::input(format!("target fraction {target} outside (0, 1)")));
    }
    let n = inst.partial.n();
    let missing = inst.partial.missing_count();
    if missing == 0 {
        return Ok(PadOutcome::NoOp {
            reason: "instance has no missing entries".into(),
        });
    }
    let current = inst.partial.missing_fraction();
    if target >= current {
        return Ok(PadOutcome::NoOp {
            reason: format!("target {target} is not below the current fraction {current}"),
        });
    }
    let mut np = (missing as f64 / target).sqrt().ceil() as usize;
    np = np.max(n);
    while missing as f64 / ((np * np) as f64) > target {
        np += 1;
    }
    while np > n && missing as f64 / (((np - 1) * (np - 1)) as f64) <= target {
        np -= 1;
    }

    let mut padded = PartialMatrix::empty(np, inst.partial.theta())?;
    for i in 0..np {
        for j in 0..np {
            if i < n && j < n {
                if let Some(v) = inst.partial.get(i, j) {
                    padded.set(i, j, v)?;
                }
            } else {
                padded.set(i, j, 0.0)?;
            }
        }
    }
    Ok(PadOutcome::Padded {
        instance: CompletionInstance {
            partial: padded,
            d1: inst.d1,
            d2: inst.d2,
            eps: inst.eps,
            theta: inst.theta,
            psd_required: inst.psd_required,
            provenance: format!("{}+pad({np})", inst.provenance),
        },
        added: np - n,
    })
}

/// Identity reduction to the orthogonality-dimension problem: same graph,
/// the norm bound dropped from the parameter record.
pub fn fitness_to_orthodim(inst: &FitnessInstance) -> OrthoDimInstance {
    let note = if inst.theta != 1.0 {
        format!("+fit2od(theta {} dropped)", inst.theta)
    } else {
        "+fit2od".to_string()
    };
    OrthoDimInstance {
        graph: inst.graph.clone(),
        d1: inst.d1,
        d2: inst.d2,
        eps: inst.eps,
        provenance: format!("{}{}", inst.provenance, note),
    }
}

impl CompletionInstance {
    /// Header lines then the partial matrix block.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "d1 {}", self.d1).unwrap();
        writeln!(s, "d2 {}", self.d2).unwrap();
        writeln!(s, "eps {}", self.eps).unwrap();
        writeln!(s, "theta {}", self.theta).unwrap();
        writeln!(s, "kind {}", if self.psd_required { "psd" } else { "bounded" }).unwrap();
        writeln!(s, "provenance {}", self.provenance).unwrap();
        s.push_str(&self.partial.to_text());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut d1 = None;
        let mut d2 = None;
        let mut eps = None;
        let mut theta = None;
        let mut kind = None;
        let mut provenance = String::new();
        let mut rest_at = None;
        for (pos, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            if let Some(v) = t.strip_prefix("d1 ") {
                d1 = Some(v.trim().parse().map_err(|e| Error::parse(format!("d1: {e}")))?);
            } else if let Some(v) = t.strip_prefix("d2 ") {
                d2 = Some(v.trim().parse().map_err(|e| Error::parse(format!("d2: {e}")))?);
            } else if let Some(v) = t.strip_prefix("eps ") {
                eps = Some(v.trim().parse().map_err(|e| Error::parse(format!("eps: {e}")))?);
            } else if let Some(v) = t.strip_prefix("theta ") {
                theta = Some(v.trim().parse().map_err(|e| Error::parse(format!("theta: {e}")))?);
            } else if let Some(v) = t.strip_prefix("kind ") {
                kind = Some(match v.trim() {
                    "psd" => true,
                    "bounded" => false,
                    other => return Err(Error::parse(format!("unknown kind '{other}'"))),
                });
            } else if let Some(v) = t.strip_prefix("provenance ") {
                provenance = v.to_string();
            } else if t.starts_with("pmatrix") {
                rest_at = Some(pos);
                break;
            } else {
                return Err(Error::parse(format!("unexpected header line '{t}'")));
            }
        }
        let rest_at = rest_at.ok_or_else(|| Error::parse("missing pmatrix block"))?;
        let block: Vec<&str> = text.lines().skip(rest_at).collect();
        let partial = PartialMatrix::parse(&block.join("\n"))?;
        Ok(CompletionInstance {
            partial,
            d1: d1.ok_or_else(|| Error::parse("missing d1"))?,
            d2: d2.ok_or_else(|| Error::parse("missing d2"))?,
            eps: eps.ok_or_else(|| Error::parse("missing eps"))?,
            theta: theta.ok_or_else(|| Error::parse("missing theta"))?,
            psd_required: kind.ok_or_else(|| Error::parse("missing kind"))?,
            provenance,
        })
    }
}

impl FitnessInstance {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "fitness").unwrap();
        writeln!(s, "d1 {}", self.d1).unwrap();
        writeln!(s, "d2 {}", self.d2).unwrap();
        writeln!(s, "eps {}", self.eps).unwrap();
        writeln!(s, "theta {}", self.theta).unwrap();
        writeln!(s, "provenance {}", self.provenance).unwrap();
        s.push_str(&self.graph.to_text());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == "fitness" => {}
            _ => return Err(Error::parse("expected 'fitness' header")),
        }
        let mut d1 = None;
        let mut d2 = None;
        let mut eps = None;
        let mut theta = None;
        let mut provenance = String::new();
        let mut rest_at = None;
        for (pos, line) in lines {
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            if let Some(v) = t.strip_prefix("d1 ") {
                d1 = Some(v.trim().parse().map_err(|e| Error::parse(format!("d1: {e}")))?);
            } else if let Some(v) = t.strip_prefix("d2 ") {
                d2 = Some(v.trim().parse().map_err(|e| Error::parse(format!("d2: {e}")))?);
            } else if let Some(v) = t.strip_prefix("eps ") {
                eps = Some(v.trim().parse().map_err(|e| Error::parse(format!("eps: {e}")))?);
            } else if let Some(v) = t.strip_prefix("theta ") {
                theta = Some(v.trim().parse().map_err(|e| Error::parse(format!("theta: {e}")))?);
            } else if let Some(v) = t.strip_prefix("provenance ") {
                provenance = v.to_string();
            } else if t.starts_with("p ") {
                rest_at = Some(pos);
                break;
            } else {
                return Err(Error::parse(format!("unexpected header line '{t}'")));
            }
        }
        let rest_at = rest_at.ok_or_else(|| Error::parse("missing graph block"))?;
        let block: Vec<&str> = text.lines().skip(rest_at).collect();
        let graph = Graph::parse(&block.join("\n"))?;
        Ok(FitnessInstance {
            graph,
            d1: d1.ok_or_else(|| Error::parse("missing d1"))?,
            d2: d2.ok_or_else(|| Error::parse("missing d2"))?,
            eps: eps.ok_or_else(|| Error::parse("missing eps"))?,
            theta: theta.ok_or_else(|| Error::parse("missing theta"))?,
            provenance,
        })
    }
}

impl YesCertificate {
    /// `cert yes` then the coloring block and the matrix block.
    pub fn to_text(&self) -> String {
        let mut s = String::from("cert yes\n");
        s.push_str(&self.coloring_used.to_text());
        s.push_str(&self.b.to_text());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(l) if l.trim() == "cert yes" => {}
            _ => return Err(Error::parse("expected 'cert yes' header")),
        }
        let body: Vec<&str> = text.lines().skip(1).collect();
        let matrix_at = body
            .iter()
            .position(|l| l.trim().starts_with("matrix"))
            .ok_or_else(|| Error::parse("missing matrix block"))?;
        let coloring_used = Coloring::parse(&body[..matrix_at].join("\n"))?;
        let b = Matrix::parse(&body[matrix_at..].join("\n"))?;
        let rank = numerical_rank(&b, None)?;
        let coherence_value = coherence(&b, None)?;
        Ok(YesCertificate {
            b,
            rank,
            coherence_value,
            coloring_used,
        })
    }
}
