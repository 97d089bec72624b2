//! Exact coloring solvers for small graphs: chromatic number via DSATUR
//! branch and bound, circular `(p,q)`-colorings, the circular chromatic
//! number, and the Poljak-Rodl identity check. These are the brute-force
//! oracles every reduction is validated against.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{central_binomial_b, is_proper, line_digraph, underlying_graph, Coloring, Graph};

/// Solver limits. The defaults are sized for line digraphs of small graphs.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub size_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { size_cap: 64 }
    }
}

/// Exact chromatic number with a canonical witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub chi: usize,
    /// Lexicographically least proper coloring with `chi` colors.
    pub witness: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiOutcome {
    Exact(ChiResult),
    /// The search closed every branch within `limit` colors without finding
    /// a proper coloring, so `chi > limit`.
    ExceedsLimit { limit: usize },
}

/// Exact chromatic number by DSATUR branch and bound.
///
/// Deterministic: the returned witness is the lexicographically least proper
/// `chi`-coloring (colors appear in first-use order).
pub fn chromatic_number(g: &Graph, limit: Option<usize>, cfg: &SolverConfig) -> Result<ChiOutcome> {
    if g.n() > cfg.size_cap {
        return Err(Error::cap(format!(
            "graph has {} vertices, solver cap is {}",
            g.n(),
            cfg.size_cap
        )));
    }
    if g.n() == 0 {
        return Ok(ChiOutcome::Exact(ChiResult {
            chi: 0,
            witness: Coloring::new(vec![], 0).unwrap(),
        }));
    }

    let lower = greedy_clique(g).len().max(1);
    let (ub, greedy_witness) = dsatur_greedy(g);
    let cap = limit.unwrap_or(usize::MAX).min(ub);

    let chi = if lower >= ub {
        ub
    } else {
        let mut search = BranchAndBound::new(g, lower);
        search.best = ub + 1;
        search.run(cap + 1);
        search.best.min(ub)
    };

    if chi > limit.unwrap_or(usize::MAX) {
        return Ok(ChiOutcome::ExceedsLimit {
            limit: limit.unwrap(),
        });
    }
    let witness = if chi == ub {
        lex_min_witness(g, chi).unwrap_or(greedy_witness)
    } else {
        lex_min_witness(g, chi).expect("chi-coloring exists")
    };
    debug_assert!(is_proper(g, &witness).unwrap());
    Ok(ChiOutcome::Exact(ChiResult { chi, witness }))
}

/// Convenience wrapper: exact chi or an error if the limit was exceeded.
pub fn chromatic_number_exact(g: &Graph, cfg: &SolverConfig) -> Result<ChiResult> {
    match chromatic_number(g, None, cfg)? {
        ChiOutcome::Exact(r) => Ok(r),
        ChiOutcome::ExceedsLimit { .. } => unreachable!("no limit supplied"),
    }
}

/// Greedy clique: repeatedly extend from each vertex in degree order,
/// keeping the best. Gives the branch-and-bound lower bound.
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &start in order.iter().take(8.min(order.len())) {
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR greedy coloring; returns (colors used, witness).
fn dsatur_greedy(g: &Graph) -> (usize, Coloring) {
    let n = g.n();
    let mut color = vec![0usize; n + 1];
    let mut max_used = 0;
    for _ in 0..n {
        let v = pick_dsatur_vertex(g, &color).expect("uncolored vertex remains");
        let mut used: Vec<bool> = vec![false; max_used + 2];
        for &w in g.neighbors(v) {
            if color[w] != 0 && color[w] < used.len() {
                used[color[w]] = true;
            }
        }
        let c = (1..).find(|&c| c >= used.len() || !used[c]).unwrap();
        color[v] = c;
        max_used = max_used.max(c);
    }
    let witness = Coloring::new(color[1..].to_vec(), max_used.max(1)).unwrap();
    (max_used.max(1), witness)
}

/// DSATUR vertex selection: maximum saturation, then maximum uncolored
/// degree, then lowest index.
fn pick_dsatur_vertex(g: &Graph, color: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, usize, std::cmp::Reverse<usize>)> = None;
    let mut pick = None;
    for v in 1..=g.n() {
        if color[v] != 0 {
            continue;
        }
        let mut sat: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (color[w] != 0).then_some(color[w]))
            .collect();
        sat.sort_unstable();
        sat.dedup();
        let uncolored_deg = g.neighbors(v).iter().filter(|&&w| color[w] == 0).count();
        let key = (sat.len(), uncolored_deg, std::cmp::Reverse(v));
        if best.is_none_or(|b| key > b) {
            best = Some(key);
            pick = Some(v);
        }
    }
    pick
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    best: usize,
    lower: usize,
    anchor: usize,
}

impl<'a> BranchAndBound<'a> {
    fn new(g: &'a Graph, lower: usize) -> Self {
        let anchor = g.max_degree_vertex().unwrap_or(1);
        BranchAndBound {
            g,
            color: vec![0; g.n() + 1],
            best: usize::MAX,
            lower,
            anchor,
        }
    }

    /// Finds the least number of colors < `cap` admitting a proper coloring,
    /// storing it in `self.best` (left unchanged if none exists).
    fn run(&mut self, cap: usize) {
        self.best = self.best.min(cap);
        // Symmetry breaking: the anchor vertex always gets color 1.
        self.color[self.anchor] = 1;
        self.recurse(1, 1);
        self.color[self.anchor] = 0;
    }

    fn recurse(&mut self, colored: usize, max_used: usize) {
        if max_used >= self.best {
            return;
        }
        if colored == self.g.n() {
            self.best = max_used;
            return;
        }
        if self.best == self.lower.max(1) {
            return; // already optimal
        }
        let v = match pick_dsatur_vertex(self.g, &self.color) {
            Some(v) => v,
            None => {
                self.best = max_used;
                return;
            }
        };
        let mut forbidden = vec![false; max_used + 2];
        for &w in self.g.neighbors(v) {
            if self.color[w] != 0 && self.color[w] < forbidden.len() {
                forbidden[self.color[w]] = true;
            }
        }
        let top = (max_used + 1).min(self.best - 1);
        #[allow(clippy::needless_range_loop)]
        for c in 1..=top {
            if forbidden[c] {
                continue;
            }
            self.color[v] = c;
            self.recurse(colored + 1, max_used.max(c));
            self.color[v] = 0;
            if self.best == self.lower.max(1) {
                return;
            }
        }
    }
}

/// Lexicographically least proper `k`-coloring, if one exists.
///
/// The lex-least coloring is canonical (color `j+1` first appears after
/// color `j`), so branching is restricted to `max_used + 1` at each vertex.
fn lex_min_witness(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.n();
    if n == 0 {
        return Coloring::new(vec![], k).ok();
    }
    let mut color = vec![0usize; n + 1];

    fn feasible_exists(g: &Graph, color: &[usize], k: usize) -> bool {
        // forward check: every uncolored vertex must still have a free color
        for v in 1..=g.n() {
            if color[v] != 0 {
                continue;
            }
            let mut used = vec![false; k + 1];
            let mut count = 0;
            for &w in g.neighbors(v) {
                let c = color[w];
                if c != 0 && !used[c] {
                    used[c] = true;
                    count += 1;
                }
            }
            if count == k {
                return false;
            }
        }
        true
    }

    fn rec(g: &Graph, color: &mut Vec<usize>, v: usize, max_used: usize, k: usize) -> bool {
        if v > g.n() {
            return true;
        }
        let mut forbidden = vec![false; k + 1];
        for &w in g.neighbors(v) {
            if color[w] != 0 {
                forbidden[color[w]] = true;
            }
        }
        #[allow(clippy::needless_range_loop)]
        for c in 1..=(max_used + 1).min(k) {
            if forbidden[c] {
                continue;
            }
            color[v] = c;
            if feasible_exists(g, color, k) && rec(g, color, v + 1, max_used.max(c), k) {
                return true;
            }
            color[v] = 0;
        }
        false
    }

    if rec(g, &mut color, 1, 0, k) {
        Some(Coloring::new(color[1..].to_vec(), k).unwrap())
    } else {
        None
    }
}

fn circular_distance(a: usize, b: usize, p: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(p - d)
}

/// Searches for a circular `(p,q)`-coloring: residues in `{0..p-1}` with
/// circular distance at least `q` across every edge. Returns the first
/// witness in deterministic search order, or `None` after exhausting the
/// space (an absence proof by backtracking).
pub fn is_pq_colorable(g: &Graph, p: usize, q: usize) -> Result<Option<Vec<usize>>> {
    if g.edge_count() == 0 {
        if p == 0 {
            return Err(Error::input("p must be positive"));
        }
        return Ok(Some(vec![0; g.n()]));
    }
    if !(q >= 1 && p >= 2 * q) {
        return Err(Error::input(format!(
            "require p >= 2q >= 2, got (p,q)=({p},{q})"
        )));
    }
    let n = g.n();
    let mut res = vec![usize::MAX; n + 1];
    // rotational symmetry: anchor a maximum-degree vertex at residue 0
    let anchor = g.max_degree_vertex().unwrap();
    let order: Vec<usize> = std::iter::once(anchor)
        .chain((1..=n).filter(|&v| v != anchor))
        .collect();

    fn rec(
        g: &Graph,
        order: &[usize],
        res: &mut Vec<usize>,
        i: usize,
        p: usize,
        q: usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let top = if i == 0 { 1 } else { p };
        for c in 0..top {
            if g
                .neighbors(v)
                .iter()
                .all(|&w| res[w] == usize::MAX || circular_distance(c, res[w], p) >= q)
            {
                res[v] = c;
                if rec(g, order, res, i + 1, p, q) {
                    return true;
                }
                res[v] = usize::MAX;
            }
        }
        false
    }

    if rec(g, &order, &mut res, 0, p, q) {
        Ok(Some(res[1..].to_vec()))
    } else {
        Ok(None)
    }
}

/// Exact circular chromatic number with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularChiResult {
    pub p: usize,
    pub q: usize,
    /// residues in `{0..p-1}`, indexed by vertex
    pub witness: Vec<usize>,
}

impl CircularChiResult {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Exact circular chromatic number.
///
/// Enumerates reduced fractions `p/q` with `q <= n` in increasing order over
/// the window `(chi-1, chi]`; by monotonicity of `(p,q)`-colorability the
/// first feasible fraction is the minimum, and the minimum is attained with
/// denominator at most `n`.
pub fn circular_chromatic_number(g: &Graph, cfg: &SolverConfig) -> Result<CircularChiResult> {
    if g.edge_count() == 0 {
        return Err(Error::input(
            "circular chromatic number is undefined below 2: graph has no edges",
        ));
    }
    if g.n() > cfg.size_cap {
        return Err(Error::cap(format!(
            "graph has {} vertices, solver cap is {}",
            g.n(),
            cfg.size_cap
        )));
    }
    let chi = chromatic_number_exact(g, cfg)?.chi;
    let n = g.n();

    // all reduced fractions p/q in (chi-1, chi] with q <= n, ascending
    let mut fractions: Vec<(usize, usize)> = Vec::new();
    for q in 1..=n {
        let lo = (chi - 1) * q + 1;
        let hi = chi * q;
        for p in lo..=hi {
            if num_integer::gcd(p, q) == 1 && p >= 2 * q {
                fractions.push((p, q));
            }
        }
    }
    fractions.sort_by(|&(p1, q1), &(p2, q2)| (p1 * q2).cmp(&(p2 * q1)));

    for (p, q) in fractions {
        if let Some(witness) = is_pq_colorable(g, p, q)? {
            debug_assert_eq!(p.div_ceil(q), chi);
            return Ok(CircularChiResult { p, q, witness });
        }
    }
    unreachable!("(chi, 1) is always feasible");
}

/// Both sides of the identity `chi(line-digraph underlying) =
/// min {{ n : chi(G) <= b(n) }}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoljakRodlCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

/// Evaluates the identity on `G`. The right-hand minimum ranges over
/// `n >= 0` with `b(0) = 1`, which makes the edgeless case come out right:
/// both sides are 0 when `chi(G) <= 1`.
pub fn poljak_rodl_check(g: &Graph, cfg: &SolverConfig) -> Result<PoljakRodlCheck> {
    let (dg, _) = line_digraph(g);
    if dg.n() > cfg.size_cap {
        return Err(Error::cap(format!(
            "line digraph has {} vertices, solver cap is {}",
            dg.n(),
            cfg.size_cap
        )));
    }
    let chi_g = chromatic_number_exact(g, cfg)?.chi;
    let chi_big = BigUint::from(chi_g);
    let mut rhs = 0usize;
    while central_binomial_b(rhs) < chi_big {
        rhs += 1;
    }
    let lhs = chromatic_number_exact(&underlying_graph(&dg), cfg)?.chi;
    Ok(PoljakRodlCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}
