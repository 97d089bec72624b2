//! Coloring extraction from approximate low-rank fitting factorizations.
//!
//! Two quantization arguments are implemented. The general one colors each
//! vertex by the nearest net point of its left factor row; separation across
//! an edge comes from the unit diagonal against the eps-small edge entry.
//! The line-digraph one colors each vertex `v` of the source graph by the
//! quantized vectors of a maximal nearly-orthogonal subset of the arcs with
//! head `v`; the subset sizes are controlled by the perturbed-identity rank
//! bounds. Matrix and representation wrappers symmetrize, factorize, and
//! route through the latter.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::{is_proper, line_digraph, underlying_graph, ArcTable, Coloring, Graph};
use crate::linalg::{balanced_rank_factorization, john_bound, m_upper_bound, numerical_rank, MBound};
use crate::matrix::{FactorizationPair, Matrix};
use crate::net::{build_grid_net, Net};
use crate::repr::{check_eps_fit, Representation};
use crate::util;

/// Precondition tolerance; failures within 10x proceed with a marginal
/// warning, beyond that the run refuses.
const PRE_TOL: f64 = 1e-7;

/// Raw color assigned to a vertex before canonicalization: a single net
/// point for the general extractors, a sorted set of net points for the
/// line-digraph extractor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RawColor {
    Point(usize),
    Set(Vec<usize>),
}

/// Color-count bound term of the extraction argument, exact when it fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundTerm {
    Finite(BigUint),
    Overflow,
}

impl std::fmt::Display for BoundTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundTerm::Finite(b) => write!(f, "{b}"),
            BoundTerm::Overflow => write!(f, "overflow"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtractionResult {
    /// Canonical integer colors, numbered by first appearance.
    pub coloring: Coloring,
    pub color_count: usize,
    /// Floor of the color-count bound term, when representable.
    pub bound: BoundTerm,
    /// log2 of the bound term, always available.
    pub bound_log2: f64,
    pub net_size: usize,
    pub proper: bool,
    pub trace: Vec<RawColor>,
    /// Line-digraph route only: kept arc indices per source vertex.
    pub kept: Option<Vec<Vec<usize>>>,
    pub max_kept: Option<usize>,
    /// Line-digraph route only: the bound on kept-set sizes.
    pub m_bound: Option<MBound>,
    /// Line-digraph route only: quantized vector per arc index.
    pub arc_quantized: Option<Vec<Vec<f64>>>,
    pub warnings: Vec<String>,
}

fn check_margin(
    value: f64,
    limit: f64,
    what: &str,
    warnings: &mut Vec<String>,
) -> Result<()> {
    if value <= limit + PRE_TOL {
        Ok(())
    } else if value <= limit + 10.0 * PRE_TOL {
        warnings.push(format!(
            "marginal precondition: {what} = {value} exceeds {limit} within 10x tolerance"
        ));
        Ok(())
    } else {
        Err(Error::verification(format!(
            "precondition violated: {what} = {value} exceeds {limit}"
        )))
    }
}

fn product_preconditions(
    pair: &FactorizationPair,
    g: &Graph,
    eps: f64,
    theta: f64,
    warnings: &mut Vec<String>,
) -> Result<Matrix> {
    if pair.n() != g.n() {
        return Err(Error::input(format!(
            "factorization has {} rows, graph has {} vertices",
            pair.n(),
            g.n()
        )));
    }
    let product = pair.product();
    check_margin(product.max_asymmetry(), 0.0, "product asymmetry", warnings)?;
    let fit = check_eps_fit(&product, g, eps, 0.0)?;
    check_margin(fit.worst_diagonal, 0.0, "diagonal deviation", warnings)?;
    check_margin(fit.worst_edge, eps, "edge magnitude", warnings)?;
    check_margin(
        pair.x.max_row_norm().max(pair.y.max_row_norm()),
        theta,
        "row norm",
        warnings,
    )?;
    Ok(product)
}

fn clamp_to_ball(x: &[f64], theta: f64) -> Vec<f64> {
    let nrm = util::norm(x);
    if nrm > theta {
        x.iter().map(|v| v * theta / nrm).collect()
    } else {
        x.to_vec()
    }
}

/// `floor(base^exp)` as a big integer over the exact binary value of `base`.
fn power_bound(base: f64, exp: usize) -> (BoundTerm, f64) {
    let log2 = exp as f64 * base.log2();
    if !log2.is_finite() || log2 > (1 << 20) as f64 {
        return (BoundTerm::Overflow, log2);
    }
    let b = BigRational::from_f64(base).expect("finite base");
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= &b;
    }
    let fl = acc.floor().to_integer();
    debug_assert!(!fl.is_negative());
    (BoundTerm::Finite(fl.to_biguint().expect("non-negative")), log2)
}

fn canonicalize<T: Eq + std::hash::Hash + Clone>(raw: &[T]) -> (Vec<usize>, usize) {
    let mut map: std::collections::HashMap<T, usize> = std::collections::HashMap::new();
    let mut colors = Vec::with_capacity(raw.len());
    for r in raw {
        let next = map.len() + 1;
        let c = *map.entry(r.clone()).or_insert(next);
        colors.push(c);
    }
    (colors, map.len())
}

/// Net-quantization coloring for a general bounded-norm factorization whose
/// product eps-fits `G`: vertex `v` is colored by the nearest net point to
/// its left-factor row, over a net of radius `theta` with
/// `eta = (1 - eps) / (2 theta)`.
pub fn extract_general(
    pair: &FactorizationPair,
    g: &Graph,
    eps: f64,
    theta: f64,
) -> Result<ExtractionResult> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1)")));
    }
    if !(theta >= 1.0) {
        return Err(Error::input(format!("theta {theta} below 1")));
    }
    let mut warnings = Vec::new();
    product_preconditions(pair, g, eps, theta, &mut warnings)?;
    let eta = (1.0 - eps) / (2.0 * theta);
    let d = pair.dim();
    let net = build_grid_net(d, theta, eta)?;

    let raw: Vec<usize> = (1..=g.n())
        .map(|v| {
            let q = clamp_to_ball(pair.x.row(v - 1), theta);
            net.nearest(&q).map(|(i, _)| i)
        })
        .collect::<Result<_>>()?;
    finish_point_extraction(raw, g, &net, 4.0 * theta * theta / (1.0 - eps) + 1.0, d, warnings)
}

/// Symmetric specialization: unit rows (`theta = 1`), `X = Y`, with the
/// larger net radius `eta = sqrt((1 - eps) / 2)` from the distance argument
/// `||x_u - x_v||^2 >= 2 (1 - eps)`.
pub fn extract_general_symmetric(
    pair: &FactorizationPair,
    g: &Graph,
    eps: f64,
) -> Result<ExtractionResult> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1)")));
    }
    if !pair.is_symmetric_pair() {
        return Err(Error::input("symmetric extraction requires X = Y"));
    }
    let mut warnings = Vec::new();
    for v in 0..pair.n() {
        let nrm = util::norm(pair.x.row(v));
        check_margin((nrm - 1.0).abs(), 0.0, "unit row norm deviation", &mut warnings)?;
    }
    product_preconditions(pair, g, eps, 1.0, &mut warnings)?;
    let eta = ((1.0 - eps) / 2.0).sqrt();
    let d = pair.dim();
    let net = build_grid_net(d, 1.0, eta)?;

    let raw: Vec<usize> = (1..=g.n())
        .map(|v| {
            let q = clamp_to_ball(pair.x.row(v - 1), 1.0);
            net.nearest(&q).map(|(i, _)| i)
        })
        .collect::<Result<_>>()?;
    let base = 2.0 * 2.0f64.sqrt() / (1.0 - eps).sqrt() + 1.0;
    finish_point_extraction(raw, g, &net, base, d, warnings)
}

fn finish_point_extraction(
    raw: Vec<usize>,
    g: &Graph,
    net: &Net,
    bound_base: f64,
    d: usize,
    warnings: Vec<String>,
) -> Result<ExtractionResult> {
    let (colors, color_count) = canonicalize(&raw);
    let coloring = Coloring::new(colors, color_count.max(1))?;
    let proper = is_proper(g, &coloring)?;
    let (bound, bound_log2) = power_bound(bound_base, d);
    Ok(ExtractionResult {
        coloring,
        color_count,
        bound,
        bound_log2,
        net_size: net.len(),
        proper,
        trace: raw.into_iter().map(RawColor::Point).collect(),
        kept: None,
        max_kept: None,
        m_bound: None,
        arc_quantized: None,
        warnings,
    })
}

/// Line-digraph extraction: recovers a proper coloring of the source graph
/// `G` from a bounded-norm symmetric eps-fitting factorization of the
/// underlying graph of its line digraph.
///
/// For each vertex `v`, the arcs with head `v` are scanned in provenance
/// order and an arc is kept iff its product entries against all previously
/// kept arcs stay within `eps' = 2 eta theta + eps`; the scan realizes a
/// maximal nearly-orthogonal subset. The color of `v` is the sorted set of
/// nearest net points of the kept rows.
pub fn extract_linedigraph(
    pair: &FactorizationPair,
    g_source: &Graph,
    arc_table: &ArcTable,
    eps: f64,
    theta: f64,
    eta: f64,
    alon_c: f64,
) -> Result<ExtractionResult> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::input(format!("eps {eps} outside [0, 1/2)")));
    }
    if !(theta >= 1.0) {
        return Err(Error::input(format!("theta {theta} below 1")));
    }
    let eta_max = (1.0 - 2.0 * eps) / (4.0 * theta);
    if !(eta > 0.0 && eta <= eta_max + 1e-12) {
        return Err(Error::input(format!("eta {eta} outside (0, {eta_max}]")));
    }
    let (dg, canonical_table) = line_digraph(g_source);
    if arc_table != &canonical_table {
        return Err(Error::input(
            "provenance table does not match the line digraph of the source graph",
        ));
    }
    let ug = underlying_graph(&dg);

    let mut warnings = Vec::new();
    let product = product_preconditions(pair, &ug, eps, theta, &mut warnings)?;
    let s = product.symmetrized();
    let eps_prime = (2.0 * eta * theta + eps).min(0.5);
    let d = pair.dim();
    let net = build_grid_net(d, theta, eta)?;

    // quantize every arc row once
    let arc_quantized_idx: Vec<usize> = (0..arc_table.len())
        .map(|i| {
            let q = clamp_to_ball(pair.x.row(i), theta);
            net.nearest(&q).map(|(idx, _)| idx)
        })
        .collect::<Result<_>>()?;

    let n = g_source.n();
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut raw: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 1..=n {
        let mut chosen: Vec<usize> = Vec::new();
        for e in arc_table.arcs_with_head(v) {
            let ok = chosen
                .iter()
                .all(|&e2| s.get(e - 1, e2 - 1).abs() <= eps_prime);
            if ok {
                chosen.push(e);
            }
        }
        let mut color: Vec<usize> = chosen.iter().map(|&e| arc_quantized_idx[e - 1]).collect();
        color.sort_unstable();
        color.dedup();
        raw.push(color);
        kept.push(chosen);
    }

    let (colors, color_count) = canonicalize(&raw);
    let coloring = Coloring::new(colors, color_count.max(1))?;
    let proper = is_proper(g_source, &coloring)?;
    let max_kept = kept.iter().map(Vec::len).max().unwrap_or(0);
    let m_bound = m_upper_bound(d, eps_prime, alon_c)?;

    let (bound, bound_log2) = match &m_bound {
        MBound::Finite(m) => match m.to_usize() {
            Some(m) if m.saturating_mul(d) < (1 << 24) => {
                power_bound(2.0 * theta / eta + 1.0, d * m)
            }
            _ => (BoundTerm::Overflow, f64::INFINITY),
        },
        MBound::UnboundedRegime => (BoundTerm::Overflow, f64::INFINITY),
    };

    let arc_quantized = arc_quantized_idx
        .iter()
        .map(|&i| net.point(i).to_vec())
        .collect();

    Ok(ExtractionResult {
        coloring,
        color_count,
        bound,
        bound_log2,
        net_size: net.len(),
        proper,
        trace: raw.into_iter().map(RawColor::Set).collect(),
        kept: Some(kept),
        max_kept: Some(max_kept),
        m_bound: Some(m_bound),
        arc_quantized: Some(arc_quantized),
        warnings,
    })
}

/// Report accompanying the matrix-input wrapper.
#[derive(Debug, Clone)]
pub struct MatrixExtractionReport {
    pub input_rank: usize,
    pub symmetrized_rank: usize,
    /// The existential row-norm bound `(2 rank)^(1/4) ||A||_inf^(1/2)`,
    /// reported alongside the actual norm used.
    pub john_bound: f64,
    pub theta_used: f64,
    pub eta_used: f64,
}

/// Extraction from a raw matrix that eps-fits the underlying line-digraph
/// graph (after symmetrization): symmetrize, rank-factorize with balanced
/// row norms, take `theta` as the actual maximum row norm, and run the
/// line-digraph extractor.
pub fn extract_from_matrix(
    a: &Matrix,
    g_source: &Graph,
    arc_table: &ArcTable,
    eps: f64,
    eta: Option<f64>,
    alon_c: f64,
) -> Result<(ExtractionResult, MatrixExtractionReport)> {
    let input_rank = numerical_rank(a, None)?;
    let b = a.symmetrized();
    let bf = balanced_rank_factorization(&b, None)?;
    let theta_used = bf.pair.max_row_norm.max(1.0);
    let jb = john_bound(2 * input_rank, a.inf_norm());
    let eta_used = match eta {
        Some(e) => e,
        None => (1.0 - 2.0 * eps) / (4.0 * theta_used),
    };
    let result = extract_linedigraph(
        &bf.pair,
        g_source,
        arc_table,
        eps,
        theta_used,
        eta_used,
        alon_c,
    )?;
    Ok((
        result,
        MatrixExtractionReport {
            input_rank,
            symmetrized_rank: bf.rank,
            john_bound: jb,
            theta_used,
            eta_used,
        },
    ))
}

/// Representation wrapper: routes a nearly orthonormal representation of
/// the underlying line-digraph graph through its Gram factorization with
/// unit row norms.
pub fn extract_from_representation(
    rep: &Representation,
    g_source: &Graph,
    arc_table: &ArcTable,
    eta: Option<f64>,
    alon_c: f64,
) -> Result<ExtractionResult> {
    let (dg, _) = line_digraph(g_source);
    let ug = underlying_graph(&dg);
    if rep.graph() != &ug {
        return Err(Error::input(
            "representation is not over the underlying line-digraph graph",
        ));
    }
    let eps = rep.eps();
    let eta_used = match eta {
        Some(e) => e,
        None => (1.0 - 2.0 * eps) / 4.0,
    };
    let pair = FactorizationPair::symmetric(rep.vectors().clone());
    extract_linedigraph(&pair, g_source, arc_table, eps, 1.0, eta_used, alon_c)
}

/// Per-edge separation witness from the propriety proof: some kept arc at
/// the head scores strictly above `eps + eta theta` against the edge's
/// right-factor row, while every kept arc at the tail stays strictly below.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub tail: usize,
    pub head: usize,
    pub witness_arc: Option<usize>,
    pub witness_value: f64,
    pub max_tail_value: f64,
    pub threshold: f64,
    pub ok: bool,
}

/// Emits the proof's separation witnesses for every arc of the source graph.
/// Requires the extraction result of [`extract_linedigraph`] on the same
/// inputs.
pub fn separation_trace(
    pair: &FactorizationPair,
    g_source: &Graph,
    arc_table: &ArcTable,
    result: &ExtractionResult,
    eps: f64,
    theta: f64,
    eta: f64,
) -> Result<Vec<SeparationWitness>> {
    let kept = result
        .kept
        .as_ref()
        .ok_or_else(|| Error::input("result carries no kept sets"))?;
    let quantized = result
        .arc_quantized
        .as_ref()
        .ok_or_else(|| Error::input("result carries no quantized arcs"))?;
    let threshold = eps + eta * theta;
    let mut out = Vec::new();
    for (u, v) in g_source.edges().flat_map(|(u, v)| [(u, v), (v, u)]) {
        let arc_idx = arc_table
            .index_of((u, v))
            .ok_or_else(|| Error::input(format!("arc ({u},{v}) missing from table")))?;
        let y_uv = pair.y.row(arc_idx - 1);

        let mut witness_arc = None;
        let mut witness_value = 0.0f64;
        for &e in &kept[v - 1] {
            let val = util::dot(&quantized[e - 1], y_uv).abs();
            if val > witness_value {
                witness_value = val;
                witness_arc = Some(e);
            }
        }
        let mut max_tail_value = 0.0f64;
        for &e in &kept[u - 1] {
            let val = util::dot(&quantized[e - 1], y_uv).abs();
            max_tail_value = max_tail_value.max(val);
        }
        out.push(SeparationWitness {
            tail: u,
            head: v,
            witness_arc,
            witness_value,
            max_tail_value,
            threshold,
            ok: witness_value > threshold && max_tail_value < threshold,
        });
    }
    Ok(out)
}
