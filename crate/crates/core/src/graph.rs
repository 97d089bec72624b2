//! Graphs, digraphs, colorings, and the gadget constructions built on them:
//! line digraphs with arc provenance, disjoint unions, and the central
//! binomial function `b(n)`.
//!
//! Vertices are 1-indexed throughout, matching the text formats.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `1..=n`.
///
/// Stored as sorted adjacency lists plus an edge set, so both neighbor
/// iteration and membership queries are cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list. Rejects loops, parallel edges and
    /// endpoints outside `1..=n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::input(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::input(format!("loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(Error::input(format!("parallel edge ({u},{v})")));
        }
        let iu = self.adj[u - 1].binary_search(&v).unwrap_err();
        self.adj[u - 1].insert(iu, v);
        let iv = self.adj[v - 1].binary_search(&u).unwrap_err();
        self.adj[v - 1].insert(iv, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted neighbors of `v` (1-indexed).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Lowest-indexed vertex of maximum degree; `None` for the null graph.
    pub fn max_degree_vertex(&self) -> Option<usize> {
        (1..=self.n).max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in (u + 1)..=n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 3 {
            for i in 1..=n {
                g.add_edge(i, i % n + 1).unwrap();
            }
        } else if n == 2 {
            g.add_edge(1, 2).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i, i + 1).unwrap();
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i + 1, (i + 1) % 5 + 1).unwrap(); // outer C5
            g.add_edge(i + 1, i + 6).unwrap(); // spokes
            g.add_edge(i + 6, (i + 2) % 5 + 6).unwrap(); // inner pentagram
        }
        g
    }

    /// Serializes in the `p edge` text format, edges sorted with `u < v`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p edge {} {}", self.n, self.edges.len()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "e {u} {v}").unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut g: Option<Graph> = None;
        let mut declared_m = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("p") => {
                    if g.is_some() {
                        return Err(Error::parse("duplicate p line"));
                    }
                    if tok.next() != Some("edge") {
                        return Err(Error::parse(format!("line {}: expected 'p edge'", lineno + 1)));
                    }
                    let n = parse_usize(tok.next(), lineno)?;
                    declared_m = parse_usize(tok.next(), lineno)?;
                    g = Some(Graph::new(n));
                }
                Some("e") => {
                    let g = g
                        .as_mut()
                        .ok_or_else(|| Error::parse("e line before p line"))?;
                    let u = parse_usize(tok.next(), lineno)?;
                    let v = parse_usize(tok.next(), lineno)?;
                    g.add_edge(u, v).map_err(|e| Error::parse(e.to_string()))?;
                }
                Some(other) => {
                    return Err(Error::parse(format!(
                        "line {}: unknown record '{other}'",
                        lineno + 1
                    )))
                }
                None => {}
            }
        }
        let g = g.ok_or_else(|| Error::parse("missing p line"))?;
        if g.edge_count() != declared_m {
            return Err(Error::parse(format!(
                "p line declares {declared_m} edges but {} given",
                g.edge_count()
            )));
        }
        Ok(g)
    }
}

fn parse_usize(tok: Option<&str>, lineno: usize) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(format!("line {}: missing field", lineno + 1)))?
        .parse()
        .map_err(|e| Error::parse(format!("line {}: {e}", lineno + 1)))
}

/// A simple digraph on vertices `1..=n`: no loops, no duplicate arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::input(format!("arc ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::input(format!("loop arc at {u}")));
        }
        if !self.arcs.insert((u, v)) {
            return Err(Error::input(format!("duplicate arc ({u},{v})")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.range((u, 0)..(u + 1, 0)).count()
    }
}

/// Maps each vertex of a line digraph back to the arc `(tail, head)` of the
/// source graph it came from. Index `i` (1-based) is the `i`th vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcTable {
    arcs: Vec<(usize, usize)>,
}

impl ArcTable {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Arc of the 1-based line-digraph vertex `index`.
    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index - 1]
    }

    /// 1-based vertex index of an arc, if present.
    pub fn index_of(&self, arc: (usize, usize)) -> Option<usize> {
        self.arcs.binary_search(&arc).ok().map(|i| i + 1)
    }

    /// Indices of arcs with head `v`, in increasing (provenance) order.
    pub fn arcs_with_head(&self, v: usize) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.arc(i).1 == v).collect()
    }

    /// One line per output vertex: `v <index> <tail> <head>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, (t, h)) in self.arcs.iter().enumerate() {
            writeln!(s, "v {} {} {}", i + 1, t, h).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut arcs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            if tok.next() != Some("v") {
                return Err(Error::parse(format!("line {}: expected 'v'", lineno + 1)));
            }
            let idx = parse_usize(tok.next(), lineno)?;
            let t = parse_usize(tok.next(), lineno)?;
            let h = parse_usize(tok.next(), lineno)?;
            if idx != arcs.len() + 1 {
                return Err(Error::parse(format!(
                    "line {}: index {idx} out of order",
                    lineno + 1
                )));
            }
            arcs.push((t, h));
        }
        Ok(ArcTable { arcs })
    }
}

/// A vertex coloring with palette `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = assignment.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::input(format!("color {c} outside palette [1,{k}]")));
        }
        Ok(Coloring { assignment, k })
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of vertex `v` (1-indexed).
    pub fn color(&self, v: usize) -> usize {
        self.assignment[v - 1]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k + 1];
        let mut count = 0;
        for &c in &self.assignment {
            if !seen[c] {
                seen[c] = true;
                count += 1;
            }
        }
        count
    }

    /// Cyclic shift by `j`: color `i` becomes `((i - 1 + j) mod k) + 1`.
    pub fn cyclic_shift(&self, j: usize) -> Coloring {
        let k = self.k;
        let assignment = self
            .assignment
            .iter()
            .map(|&c| (c - 1 + j) % k + 1)
            .collect();
        Coloring { assignment, k }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "coloring {} {}", self.assignment.len(), self.k).unwrap();
        for &c in &self.assignment {
            writeln!(s, "{c}").unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| {
            let t = l.trim();
            !t.is_empty() && t != "c" && !t.starts_with("c ")
        });
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty coloring file"))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("coloring") {
            return Err(Error::parse("expected 'coloring <n> <k>' header"));
        }
        let n = parse_usize(tok.next(), 0)?;
        let k = parse_usize(tok.next(), 0)?;
        let mut assignment = Vec::with_capacity(n);
        for line in lines {
            assignment.push(
                line.trim()
                    .parse()
                    .map_err(|e| Error::parse(format!("bad color: {e}")))?,
            );
        }
        if assignment.len() != n {
            return Err(Error::parse(format!(
                "expected {n} colors, found {}",
                assignment.len()
            )));
        }
        Coloring::new(assignment, k)
    }
}

/// True iff every edge of `G` has distinctly colored endpoints.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(Error::input(format!(
            "coloring length {} does not match n={}",
            c.len(),
            g.n()
        )));
    }
    Ok(g.edges().all(|(u, v)| c.color(u) != c.color(v)))
}

/// Line digraph of an undirected graph.
///
/// Each edge of `G` contributes both orientations as vertices; there is an
/// arc from `(u1,u2)` to `(v1,v2)` iff `u2 = v1`. Output vertices are
/// numbered in lexicographic order of their `(tail, head)` pairs, and the
/// returned [`ArcTable`] records that correspondence.
pub fn line_digraph(g: &Graph) -> (Digraph, ArcTable) {
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    arcs.sort_unstable();
    let table = ArcTable { arcs: arcs.clone() };

    let mut d = Digraph::new(arcs.len());
    for (i, &(_, head)) in arcs.iter().enumerate() {
        // successors of (t, head) are the arcs (head, w)
        for &w in g.neighbors(head) {
            let j = table.index_of((head, w)).expect("arc present");
            d.add_arc(i + 1, j).expect("distinct simple arcs");
        }
    }
    (d, table)
}

/// Underlying undirected graph of a digraph: edge `{a,b}` iff `(a,b)` or
/// `(b,a)` is an arc.
pub fn underlying_graph(d: &Digraph) -> Graph {
    let mut g = Graph::new(d.n());
    for (u, v) in d.arcs() {
        if !g.has_edge(u, v) {
            g.add_edge(u, v).expect("simple by construction");
        }
    }
    g
}

/// Disjoint union of `k` copies of `G`; copy `j` (1-indexed) occupies the
/// vertex indices `(j-1)*n + 1 ..= j*n`.
pub fn disjoint_union(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::input("disjoint_union requires k >= 1"));
    }
    let n = g.n();
    let mut h = Graph::new(n * k);
    for j in 0..k {
        for (u, v) in g.edges() {
            h.add_edge(j * n + u, j * n + v).expect("copies are disjoint");
        }
    }
    Ok(h)
}

/// Central binomial coefficient `b(n) = C(n, floor(n/2))`, exact.
pub fn central_binomial_b(n: usize) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(n / 2))
}
