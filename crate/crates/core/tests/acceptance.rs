//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//! Every criterion returns a transcript; the determinism criterion reruns
//! the others and demands byte-identical transcripts.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::Instant;

use lrmc_core::extract::{
    extract_general, extract_general_symmetric, extract_linedigraph, separation_trace,
};
use lrmc_core::graph::{
    disjoint_union, is_proper, line_digraph, underlying_graph, central_binomial_b, Coloring, Graph,
};
use lrmc_core::linalg::{
    m_upper_bound, numerical_rank, simplex_gram, simplex_witness, symmetric_eigenvalues, MBound,
};
use lrmc_core::net::build_grid_net;
use lrmc_core::reduce::{
    bounded_completion_to_factorization, eps_from_prime, eps_prime,
    psd_completion_to_representation, reduce_coloring_to_fitness_copies,
    reduce_fitness_to_completion, verify_psd_completion, yes_certificate, CompletionVariant,
    FitnessInstance,
};
use lrmc_core::repr::{check_eps_fit, od2_exact, od_eps_upper, representation_from_coloring};
use lrmc_core::solve::{chromatic_number_exact, circular_chromatic_number, poljak_rodl_check, SolverConfig};
use lrmc_core::util::{gaussian, norm, rng_for, uniform_in_ball};
use lrmc_core::{FactorizationPair, Matrix};

use num_bigint::BigUint;

struct Criterion {
    pass: bool,
    summary: String,
    transcript: String,
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn report(n: usize, c: &Criterion) {
    println!(
        "criterion {n} {}: {}",
        if c.pass { "PASS" } else { "FAIL" },
        c.summary
    );
}

// ---------------------------------------------------------------- corpus

/// All connected graphs on at most `max_n` vertices, one per isomorphism
/// class, in deterministic enumeration order.
fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let nb = pairs.len();

        // per-permutation edge-bit remap tables
        let perms = permutations(n);
        let mut remap: Vec<Vec<usize>> = Vec::with_capacity(perms.len());
        for p in &perms {
            let table: Vec<usize> = pairs
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    pairs.iter().position(|&x| x == (a, b)).unwrap()
                })
                .collect();
            remap.push(table);
        }

        let mut seen: HashSet<u32> = HashSet::new();
        for mask in 0u32..(1 << nb) {
            if !mask_connected(n, mask, &pairs) {
                continue;
            }
            let canon = remap
                .iter()
                .map(|table| {
                    let mut m = 0u32;
                    for (bit, &target) in table.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            m |= 1 << target;
                        }
                    }
                    m
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                let mut g = Graph::new(n);
                for (bit, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u + 1, v + 1).unwrap();
                    }
                }
                out.push(g);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn mask_connected(n: usize, mask: u32, pairs: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![0u32; n];
    for (bit, &(u, v)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let mut comp = 1u32;
    loop {
        let mut next = comp;
        for (v, a) in adj.iter().enumerate() {
            if comp >> v & 1 == 1 {
                next |= a;
            }
        }
        if next == comp {
            break;
        }
        comp = next;
    }
    comp == (1 << n) - 1
}

// ------------------------------------------------------------ criterion 1

fn run_criterion_1() -> Criterion {
    let start = Instant::now();
    let mut transcript = String::new();
    let mut pass = true;

    let mut corpus = connected_graphs_up_to(6);
    let count_small = corpus.len();
    corpus.push(Graph::cycle(7));
    corpus.push(Graph::complete(5));
    corpus.push(Graph::petersen());

    for g in &corpus {
        let r = poljak_rodl_check(g, &cfg()).unwrap();
        writeln!(
            transcript,
            "n={} m={} lhs={} rhs={} equal={}",
            g.n(),
            g.edge_count(),
            r.lhs,
            r.rhs,
            r.equal
        )
        .unwrap();
        pass &= r.equal;
    }
    let elapsed = start.elapsed();
    pass &= count_small == 143;
    pass &= elapsed.as_secs() < 600;
    Criterion {
        pass,
        summary: format!(
            "Poljak-Rodl identity exact on {} connected graphs (<=6 vertices) + C7, K5, Petersen in {:.1?}",
            count_small, elapsed
        ),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 2

fn run_criterion_2() -> Criterion {
    let mut transcript = String::new();
    let mut pass = true;

    let cases: Vec<(&str, Graph, Vec<usize>, usize)> = vec![
        ("K2", Graph::complete(2), vec![1, 2], 2),
        ("C5", Graph::cycle(5), vec![1, 2, 1, 2, 3], 3),
        ("K4", Graph::complete(4), vec![1, 2, 3, 4], 4),
    ];
    for (name, g, colors, k) in cases {
        let c = Coloring::new(colors, k).unwrap();
        let (h, cert) = yes_certificate(&g, &c).unwrap();
        let eigs = symmetric_eigenvalues(&cert.b).unwrap();
        let min_eig = eigs.last().copied().unwrap();
        let zero_one = (0..h.n())
            .all(|i| (0..h.n()).all(|j| cert.b.get(i, j) == 0.0 || cert.b.get(i, j) == 1.0));
        let fit = check_eps_fit(&cert.b, &h, 0.0, 0.0).unwrap();
        let ok = min_eig >= -1e-9
            && zero_one
            && fit.ok
            && cert.rank == k
            && (cert.coherence_value - 1.0).abs() <= 1e-9;
        writeln!(
            transcript,
            "{name}: min_eig={min_eig} zero_one={zero_one} fits={} rank={} coherence={}",
            fit.ok, cert.rank, cert.coherence_value
        )
        .unwrap();
        pass &= ok;
    }
    Criterion {
        pass,
        summary: "planted certificates for (K2,2), (C5,3), (K4,4): PSD, exact 0/1 fit, rank k, coherence 1".into(),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 3

/// Coloring-derived representation of `g`, perturbed as far as the noise
/// allows while keeping the Gram inside the eps-fit envelope (noise scale
/// halves until it fits; scale 0 recovers the exact representation).
fn perturbed_representation(g: &Graph, eps: f64, label: &str) -> (Matrix, usize) {
    let chi = chromatic_number_exact(g, &cfg()).unwrap();
    let rep = representation_from_coloring(g, &chi.witness).unwrap();
    let base = rep.vectors().clone();
    if eps == 0.0 {
        return (base, chi.chi);
    }
    let mut rng = rng_for(1349, label);
    let noise = Matrix::from_fn(base.rows(), base.cols(), |_, _| gaussian(&mut rng));
    let mut scale = eps / 4.0;
    for _ in 0..48 {
        let mut x = Matrix::from_fn(base.rows(), base.cols(), |i, j| {
            base.get(i, j) + scale * noise.get(i, j)
        });
        for i in 0..x.rows() {
            let nrm = norm(x.row(i));
            for j in 0..x.cols() {
                x.set(i, j, x.get(i, j) / nrm);
            }
        }
        if check_eps_fit(&x.gram(), g, 0.9 * eps, 1e-12).unwrap().ok {
            return (x, chi.chi);
        }
        scale *= 0.5;
    }
    (base, chi.chi)
}

fn run_criterion_3() -> Criterion {
    let mut transcript = String::new();
    let mut pass = true;
    let mut cases = 0usize;

    let epsilons = [0.0, 0.05, 0.2];

    // general-extraction routes: symmetric and scaled-general factorizations
    let general_graphs: Vec<(&str, Graph)> = vec![
        ("K2", Graph::complete(2)),
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("C5", Graph::cycle(5)),
        ("C7", Graph::cycle(7)),
        ("P4", Graph::path(4)),
        ("petersen", Graph::petersen()),
        ("C5x2", disjoint_union(&Graph::cycle(5), 2).unwrap()),
    ];
    for (name, g) in &general_graphs {
        for &eps in &epsilons {
            let label = format!("c3-gen-{name}-{eps}");
            let (x, _) = perturbed_representation(g, eps, &label);
            let fit = check_eps_fit(&x.gram(), g, eps, 1e-12).unwrap();
            assert!(fit.ok, "perturbation left the eps-fit envelope: {label}");

            // symmetric route
            let pair = FactorizationPair::symmetric(x.clone());
            let r = extract_general_symmetric(&pair, g, eps).unwrap();
            writeln!(
                transcript,
                "sym {name} eps={eps} proper={} colors={} net={}",
                r.proper, r.color_count, r.net_size
            )
            .unwrap();
            pass &= r.proper && r.color_count <= r.net_size;
            cases += 1;

            // general route with asymmetric row norms, theta > 1
            let s = 1.15f64;
            let xs = x.scale(s);
            let ys = x.scale(1.0 / s);
            let pair = FactorizationPair::new(xs, ys);
            let theta = 1.2f64;
            let r = extract_general(&pair, g, eps, theta).unwrap();
            writeln!(
                transcript,
                "gen {name} eps={eps} proper={} colors={} net={}",
                r.proper, r.color_count, r.net_size
            )
            .unwrap();
            pass &= r.proper && r.color_count <= r.net_size;
            cases += 1;
        }
    }

    // line-digraph route, two eta choices
    let line_graphs: Vec<(&str, Graph)> = vec![
        ("K2", Graph::complete(2)),
        ("K3", Graph::complete(3)),
        ("P4", Graph::path(4)),
        ("C5", Graph::cycle(5)),
        ("C7", Graph::cycle(7)),
    ];
    for (name, g) in &line_graphs {
        let (dg, table) = line_digraph(g);
        let ug = underlying_graph(&dg);
        for &eps in &epsilons {
            for (tag, shrink) in [("wide", 1.0), ("narrow", 0.5)] {
                let label = format!("c3-line-{name}-{eps}-{tag}");
                let (x, d) = perturbed_representation(&ug, eps, &label);
                let fit = check_eps_fit(&x.gram(), &ug, eps, 1e-12).unwrap();
                assert!(fit.ok, "perturbation left the eps-fit envelope: {label}");
                let pair = FactorizationPair::symmetric(x);
                let eta = shrink * (1.0 - 2.0 * eps) / 4.0;
                let r = extract_linedigraph(&pair, g, &table, eps, 1.0, eta, 1.0).unwrap();
                let eps_pr = 2.0 * eta + eps;
                let mut ok = r.proper;
                // color count never exceeds the number of distinct emitted sets
                let distinct: HashSet<&lrmc_core::extract::RawColor> = r.trace.iter().collect();
                ok &= r.color_count <= distinct.len();
                // the kept-set bound applies in the constant-free regime
                if eps_pr < 1.0 / (d as f64).sqrt() {
                    let m = m_upper_bound(d, eps_pr, 1.0).unwrap();
                    match m {
                        MBound::Finite(ref b) => {
                            ok &= BigUint::from(r.max_kept.unwrap()) <= *b;
                        }
                        MBound::UnboundedRegime => {}
                    }
                }
                writeln!(
                    transcript,
                    "line {name} eps={eps} eta={eta} proper={} colors={} max_kept={:?}",
                    r.proper, r.color_count, r.max_kept
                )
                .unwrap();
                pass &= ok;
                cases += 1;
            }
        }
    }

    pass &= cases >= 50;
    Criterion {
        pass,
        summary: format!("extraction propriety on {cases} seeded cases, zero failures, bounds respected"),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 4

fn run_criterion_4() -> Criterion {
    let start = Instant::now();
    let mut transcript = String::new();

    let c5 = Graph::cycle(5);
    let chi = chromatic_number_exact(&c5, &cfg()).unwrap();
    let (dg, table) = line_digraph(&c5);
    let ug = underlying_graph(&dg);
    let chi_line = chromatic_number_exact(&ug, &cfg()).unwrap();
    let rep = representation_from_coloring(&ug, &chi_line.witness).unwrap();
    let pair = FactorizationPair::symmetric(rep.vectors().clone());
    let r = extract_linedigraph(&pair, &c5, &table, 0.0, 1.0, 0.25, 1.0).unwrap();
    let elapsed = start.elapsed();

    writeln!(
        transcript,
        "chi={} chi_line={} proper={} colors={} elapsed_ok={}",
        chi.chi,
        chi_line.chi,
        r.proper,
        r.color_count,
        elapsed.as_secs_f64() < 1.0
    )
    .unwrap();
    let pass = chi.chi == 3 && chi_line.chi == 3 && r.proper && elapsed.as_secs_f64() < 1.0;
    Criterion {
        pass,
        summary: format!(
            "C5 chain: chi=3 -> 3-coloring of the arc graph -> Gram -> proper extraction in {:.1?}",
            elapsed
        ),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 5

fn run_criterion_5() -> Criterion {
    let mut transcript = String::new();

    let gram = simplex_gram(2).unwrap();
    let rank = numerical_rank(&gram, None).unwrap();
    let diag_exact = (0..3).all(|i| gram.get(i, i) == 1.0);
    let off_exact = (0..3).all(|i| (0..3).all(|j| i == j || gram.get(i, j).abs() == 0.5));
    let witness = simplex_witness(2).unwrap();
    let witness_matches = witness.gram().sub(&gram).inf_norm() <= 1e-15;
    let m = m_upper_bound(2, 0.5, 1.0).unwrap();
    let m_ok = m == MBound::Finite(BigUint::from(3u32));

    writeln!(
        transcript,
        "rank={rank} diag_exact={diag_exact} off_exact={off_exact} witness_matches={witness_matches} m={m}",
    )
    .unwrap();
    let pass = rank == 2 && diag_exact && off_exact && witness_matches && m_ok;
    Criterion {
        pass,
        summary: "m(2, 1/2) pinched: simplex Gram rank 2 with off-diagonals exactly 1/2, upper bound 3".into(),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 6

fn run_criterion_6() -> Criterion {
    let mut transcript = String::new();
    let mut pass = true;

    let cases: Vec<(&str, Graph, (usize, usize))> = vec![
        ("C5", Graph::cycle(5), (5, 2)),
        ("C7", Graph::cycle(7), (7, 3)),
        ("K3", Graph::complete(3), (3, 1)),
    ];
    for (name, g, expected) in &cases {
        let r = circular_chromatic_number(g, &cfg()).unwrap();
        pass &= (r.p, r.q) == *expected;

        let d = od2_exact(g, 0.99, &cfg()).unwrap();
        let t = d.threshold.unwrap();
        let below = od2_exact(g, t - 1e-6, &cfg()).unwrap().feasible;
        let at = od2_exact(g, t, &cfg()).unwrap().feasible;
        let above = od2_exact(g, t + 1e-6, &cfg()).unwrap().feasible;
        pass &= !below && at && above;

        let found = od_eps_upper(g, 2, t + 0.01, 50, 1006).unwrap();
        let found_ok = match &found {
            Some(rep) => check_eps_fit(&rep.gram(), g, t + 0.01, 1e-7).unwrap().ok,
            None => false,
        };
        pass &= found_ok;

        writeln!(
            transcript,
            "{name}: chi_c={}/{} threshold={t} flip=({below},{at},{above}) search_found={found_ok}",
            r.p, r.q
        )
        .unwrap();
    }
    // cos(pi/3) = 1/2: the exact boundary for the triangle
    let k3 = Graph::complete(3);
    pass &= od2_exact(&k3, 0.5, &cfg()).unwrap().feasible;
    pass &= !od2_exact(&k3, 0.49, &cfg()).unwrap().feasible;

    Criterion {
        pass,
        summary: "chi_c values exact; od2 flips at cos(pi/chi_c); 2-d witnesses found at threshold + 0.01".into(),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 7

fn run_criterion_7() -> Criterion {
    let mut transcript = String::new();
    let mut pass = true;

    for (name, g) in [("K3", Graph::complete(3)), ("C5", Graph::cycle(5))] {
        let chi = chromatic_number_exact(&g, &cfg()).unwrap();
        let d1 = chi.chi;
        let (h, cert) = yes_certificate(&g, &chi.witness).unwrap();
        let red = reduce_coloring_to_fitness_copies(&g, d1, d1 + 1, 1.0 / 6.0, 1.0).unwrap();
        assert_eq!(red.instance.graph, h);
        let comp = reduce_fitness_to_completion(&red.instance, CompletionVariant::Psd).unwrap();
        let v = verify_psd_completion(&comp.partial, &cert.b, 0.0, 1e-9).unwrap();
        let coherence_ok = v.coherence.is_some_and(|mu| (mu - 1.0).abs() <= 1e-9);
        let ok = v.agrees
            && v.worst_deviation == 0.0
            && v.psd
            && v.rank <= d1
            && coherence_ok
            && comp.eps == 1.0 / 7.0;
        writeln!(
            transcript,
            "{name}: deviation={} psd={} rank={} coherence={:?} eps'={}",
            v.worst_deviation, v.psd, v.rank, v.coherence, comp.eps
        )
        .unwrap();
        pass &= ok;
    }
    pass &= eps_prime(1.0 / 6.0) == 1.0 / 7.0;

    Criterion {
        pass,
        summary: "round trip for K3 and C5: exact agreement, PSD, rank <= d1, coherence 1, eps' = 1/7 exact".into(),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 8

fn run_criterion_8() -> Criterion {
    let mut transcript = String::new();
    let mut pass = true;

    let graphs = [
        ("K3", Graph::complete(3)),
        ("C5", Graph::cycle(5)),
        ("P4", Graph::path(4)),
        ("K4", Graph::complete(4)),
        ("C7", Graph::cycle(7)),
    ];

    // 10 PSD-side normalizations
    for round in 0..2 {
        for (name, g) in &graphs {
            let label = format!("c8-psd-{name}-{round}");
            let chi = chromatic_number_exact(g, &cfg()).unwrap();
            let eps = if round == 0 { 1.0 / 6.0 } else { 0.1 };
            let ep = eps_prime(eps);
            let fitness = FitnessInstance {
                graph: (*g).clone(),
                d1: chi.chi,
                d2: chi.chi + 1,
                eps,
                theta: 1.0,
                provenance: label.clone(),
            };
            let inst = reduce_fitness_to_completion(&fitness, CompletionVariant::Psd).unwrap();

            let rep0 = representation_from_coloring(g, &chi.witness).unwrap();
            let mut x = rep0.vectors().clone();
            let mut rng = rng_for(77, &label);
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    x.set(i, j, x.get(i, j) + ep / 8.0 * gaussian(&mut rng));
                }
            }
            let b = x.gram();

            let rep = psd_completion_to_representation(&inst.partial, &b, ep).unwrap();
            let rows_unit = (1..=rep.graph().n())
                .all(|v| (norm(rep.vector(v)) - 1.0).abs() <= 1e-9);
            let fit = check_eps_fit(&rep.gram(), rep.graph(), eps_from_prime(ep) + 1e-7, 1e-9)
                .unwrap();
            writeln!(
                transcript,
                "psd {label}: rows_unit={rows_unit} fit_ok={} worst_edge={}",
                fit.ok, fit.worst_edge
            )
            .unwrap();
            pass &= rows_unit && fit.ok;
        }
    }

    // 10 bounded-side normalizations
    for round in 0..2 {
        for (name, g) in &graphs {
            let label = format!("c8-inf-{name}-{round}");
            let chi = chromatic_number_exact(g, &cfg()).unwrap();
            let eps = 1.0 / 6.0;
            let ep = eps_prime(eps);
            let d2 = 2 * chi.chi + 3;
            let theta = 1.3 * (1.0 + eps).sqrt() * (d2 as f64).powf(0.25);
            let fitness = FitnessInstance {
                graph: (*g).clone(),
                d1: chi.chi,
                d2,
                eps,
                theta,
                provenance: label.clone(),
            };
            let inst = reduce_fitness_to_completion(&fitness, CompletionVariant::Bounded).unwrap();

            let rep0 = representation_from_coloring(g, &chi.witness).unwrap();
            let planted = rep0.gram();
            let n = planted.rows();
            let mut rng = rng_for(78, &label);
            let mut b = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let noise = (ep / 4.0 * gaussian(&mut rng)).clamp(-ep / 2.0, ep / 2.0);
                    b.set(i, j, planted.get(i, j) + noise);
                }
            }

            let normalization =
                bounded_completion_to_factorization(&inst.partial, &b, ep, inst.theta).unwrap();
            let prod = normalization.pair.product();
            let diag_exact = (0..n).all(|v| (prod.get(v, v) - 1.0).abs() <= 1e-12);
            let fit = check_eps_fit(&prod, g, eps_from_prime(ep) + 1e-7, 1e-9).unwrap();
            let norm_bound = (1.0 - ep).sqrt() * theta;
            let norm_ok = normalization.pair.max_row_norm <= norm_bound;
            writeln!(
                transcript,
                "inf {label}: diag_exact={diag_exact} fit_ok={} max_row_norm={} bound={norm_bound}",
                fit.ok, normalization.pair.max_row_norm
            )
            .unwrap();
            pass &= diag_exact && fit.ok && norm_ok;
        }
    }

    Criterion {
        pass,
        summary: "20 seeded completions normalize back: unit rows / exact-1 diagonals, fit at eps'/(1-eps') + 1e-7".into(),
        transcript,
    }
}

// ------------------------------------------------------------ criterion 9

fn run_criterion_9() -> Criterion {
    let start = Instant::now();
    let mut transcript = String::new();
    let mut pass = true;

    for (d, theta, eta) in [(2usize, 1.0, 0.5), (3, 1.0, 0.5), (3, 2.0, 0.4)] {
        let net = build_grid_net(d, theta, eta).unwrap();
        let mut rng = rng_for(9001, &format!("c9-net-{d}-{theta}-{eta}"));
        let mut violations = 0usize;
        let mut worst = 0.0f64;
        for _ in 0..100_000 {
            let x = uniform_in_ball(&mut rng, d, theta);
            let (_, dist) = net.nearest(&x).unwrap();
            // strict covering: distance must stay below eta (NaN would count)
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(dist < eta) {
                violations += 1;
            }
            worst = worst.max(dist);
        }
        writeln!(
            transcript,
            "net d={d} theta={theta} eta={eta} size={} violations={violations} worst={worst}",
            net.len()
        )
        .unwrap();
        pass &= violations == 0;
    }
    let elapsed = start.elapsed();
    pass &= elapsed.as_secs() < 30;
    Criterion {
        pass,
        summary: format!("net covering: 3x100k samples, zero violations, {:.1?}", elapsed),
        transcript,
    }
}

// ----------------------------------------------------------- test harness

static CACHE: [OnceLock<Criterion>; 9] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn runner(k: usize) -> fn() -> Criterion {
    [
        run_criterion_1,
        run_criterion_2,
        run_criterion_3,
        run_criterion_4,
        run_criterion_5,
        run_criterion_6,
        run_criterion_7,
        run_criterion_8,
        run_criterion_9,
    ][k - 1]
}

fn cached(k: usize) -> &'static Criterion {
    CACHE[k - 1].get_or_init(runner(k))
}

macro_rules! criterion_test {
    ($name:ident, $k:expr) => {
        #[test]
        fn $name() {
            let c = cached($k);
            report($k, c);
            assert!(c.pass, "criterion {} failed:\n{}", $k, c.transcript);
        }
    };
}

criterion_test!(criterion_01_poljak_rodl_identity, 1);
criterion_test!(criterion_02_planted_certificates, 2);
criterion_test!(criterion_03_extraction_propriety, 3);
criterion_test!(criterion_04_c5_pipeline, 4);
criterion_test!(criterion_05_m_2_half_pinch, 5);
criterion_test!(criterion_06_circular_od2_equivalence, 6);
criterion_test!(criterion_07_planted_round_trip, 7);
criterion_test!(criterion_08_contrapositive_normalizations, 8);
criterion_test!(criterion_09_net_covering, 9);

#[test]
fn criterion_10_determinism() {
    let mut pass = true;
    for k in 1..=9usize {
        let first = cached(k);
        let rerun = runner(k)();
        let identical = first.transcript == rerun.transcript && first.pass == rerun.pass;
        if !identical {
            eprintln!("criterion {k} transcripts differ between runs");
        }
        pass &= identical;
    }
    report(
        10,
        &Criterion {
            pass,
            summary: "criteria 1-9 rerun with the same seeds produce byte-identical transcripts".into(),
            transcript: String::new(),
        },
    );
    assert!(pass);
}

// -------------------------------------------------- extra oracle checks

/// The b(n) thresholds that drive the right-hand side of the identity.
#[test]
fn central_binomial_thresholds() {
    let vals: Vec<u64> = (0..=8).map(|n| {
        use num_traits::ToPrimitive;
        central_binomial_b(n).to_u64().unwrap()
    }).collect();
    assert_eq!(vals, vec![1, 1, 2, 3, 6, 10, 20, 35, 70]);
}

/// Separation witnesses hold edge-by-edge on the criterion-4 chain.
#[test]
fn separation_witnesses_on_c5_chain() {
    let c5 = Graph::cycle(5);
    let (dg, table) = line_digraph(&c5);
    let ug = underlying_graph(&dg);
    let chi_line = chromatic_number_exact(&ug, &cfg()).unwrap();
    let rep = representation_from_coloring(&ug, &chi_line.witness).unwrap();
    let pair = FactorizationPair::symmetric(rep.vectors().clone());
    let r = extract_linedigraph(&pair, &c5, &table, 0.0, 1.0, 0.25, 1.0).unwrap();
    assert!(r.proper);
    for w in separation_trace(&pair, &c5, &table, &r, 0.0, 1.0, 0.25).unwrap() {
        assert!(w.ok, "arc ({},{})", w.tail, w.head);
    }
}

/// is_proper is the final word on every witness the solvers emit.
#[test]
fn solver_witnesses_are_proper() {
    for g in [Graph::cycle(7), Graph::petersen(), Graph::complete(5)] {
        let r = chromatic_number_exact(&g, &cfg()).unwrap();
        assert!(is_proper(&g, &r.witness).unwrap());
    }
}
