//! Command-line surface for the completion-gap toolkit: graph gadgets,
//! exact solvers, reductions, certificates, verifiers, nets, bounds, and
//! the end-to-end pipeline demo.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use lrmc_core::extract::{
    extract_from_matrix, extract_general, extract_general_symmetric, extract_linedigraph,
    separation_trace, ExtractionResult, RawColor,
};
use lrmc_core::graph::{
    disjoint_union, line_digraph, underlying_graph, ArcTable, Coloring, Graph,
};
use lrmc_core::linalg::m_upper_bound;
use lrmc_core::net::build_grid_net;
use lrmc_core::reduce::{
    hardness_parameter_regimes, pad_instance, reduce_coloring_to_fitness_copies,
    reduce_coloring_to_fitness_linedigraph, reduce_fitness_to_completion, verify_bounded_completion,
    verify_psd_completion, yes_certificate, CompletionInstance, CompletionVariant,
    FitnessInstance, PadOutcome, YesCertificate,
};
use lrmc_core::repr::{od2_exact, od_eps_upper, representation_from_coloring, Representation};
use lrmc_core::solve::{
    chromatic_number, chromatic_number_exact, circular_chromatic_number, poljak_rodl_check,
    ChiOutcome, SolverConfig,
};
use lrmc_core::{Error, FactorizationPair, Matrix};

#[derive(Parser)]
#[command(name = "lrmc", version, about = "Low-rank matrix completion gap toolkit")]
struct Cli {
    /// Output style: human text or machine-readable key-value lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graph inspection and gadget constructions.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Exact solvers.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Reductions between problems.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Certificates and verifiers.
    #[command(subcommand)]
    Cert(CertCmd),
    /// Coloring extraction from factorizations and matrices.
    #[command(subcommand)]
    Extract(ExtractCmd),
    /// Bound formulas and hardness parameter regimes.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Net construction.
    #[command(subcommand)]
    Net(NetCmd),
    /// End-to-end pipelines.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Prints vertex/edge counts and degree statistics.
    Info { graph: String },
    /// Writes the underlying graph of the line digraph plus its provenance table.
    LineDigraph {
        graph: String,
        #[arg(long)]
        out: PathBuf,
        /// Provenance table output (one `v <index> <tail> <head>` line per vertex).
        #[arg(long)]
        provenance_out: Option<PathBuf>,
    },
    /// Writes the disjoint union of `copies` copies.
    Union {
        graph: String,
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Exact chromatic number with a canonical witness.
    Chi {
        graph: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Witness coloring output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact circular chromatic number.
    ChiC {
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact decision for 2-dimensional nearly orthonormal representability.
    Od2 {
        graph: String,
        #[arg(long)]
        eps: f64,
    },
    /// Multi-restart search for a d-dimensional eps-orthonormal representation.
    OdEps {
        graph: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the line-digraph chromatic identity on a graph.
    PoljakRodl { graph: String },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Coloring -> graph fitness via disjoint copies.
    Col2fitCopies {
        graph: String,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Coloring -> graph fitness via the line digraph plus copies.
    Col2fitLine {
        graph: String,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        /// Net radius; defaults to the largest admissible value.
        #[arg(long)]
        eta: Option<f64>,
        /// Source gap lower bound k1 (for the validity report).
        #[arg(long)]
        k1: Option<String>,
        /// Source gap upper bound k2 (for the validity report).
        #[arg(long)]
        k2: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        alon_c: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        provenance_out: Option<PathBuf>,
    },
    /// Graph fitness -> completion instance.
    Fit2comp {
        instance: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pads a completion instance with present zeros to a target missing fraction.
    Pad {
        instance: PathBuf,
        #[arg(long)]
        target: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Psd,
    Bounded,
}

#[derive(Subcommand)]
enum CertCmd {
    /// Builds the planted YES certificate from a proper coloring.
    Yes {
        graph: String,
        coloring: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Output file for the certified union graph H.
        #[arg(long)]
        h_out: Option<PathBuf>,
    },
    /// Verifies a candidate PSD completion against an instance.
    VerifyPsd {
        instance: PathBuf,
        candidate: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Verifies a candidate bounded-infinity-norm completion.
    VerifyInf {
        instance: PathBuf,
        candidate: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum ExtractCmd {
    /// General net-quantization extraction from a factorization pair.
    General {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Line-digraph extraction from a factorization over the arc graph.
    Line {
        #[arg(long, conflicts_with = "rep")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
        /// A representation dump over the arc graph (alternative to --x/--y;
        /// its recorded eps takes precedence).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// The source graph G (the factorization lives over its arc graph).
        #[arg(long)]
        graph: String,
        #[arg(long)]
        provenance: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        alon_c: f64,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extraction straight from a fitting matrix: symmetrize and factorize first.
    FromMatrix {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        provenance: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        alon_c: f64,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Perturbed-identity rank bound m(d, eps).
    M {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        alon_c: f64,
    },
    /// Admissible hardness parameter regimes for a given rank.
    Regimes {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1.0)]
        alon_c: f64,
        #[arg(long, default_value_t = 2.0)]
        theta_max: f64,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
    },
}

#[derive(Subcommand)]
enum NetCmd {
    /// Builds a grid net for the d-ball and reports its size.
    Build {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        eta: f64,
        /// Dump file (debug/audit).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Full chain on one graph: chromatic number, line digraph, planted
    /// certificate, completion instance, verification, and extraction back.
    Demo(DemoArgs),
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long)]
    graph: String,
    /// YES-side rank; defaults to the chromatic number of the arc graph.
    #[arg(long)]
    d1: Option<usize>,
    #[arg(long)]
    d2: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for the artifacts produced along the way.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

struct Reporter {
    kv: bool,
}

impl Reporter {
    fn emit(&self, key: &str, value: impl Display) {
        if self.kv {
            println!("{key} {value}");
        } else {
            println!("{key}: {value}");
        }
    }
}

fn load_graph(spec: &str) -> Result<Graph, Error> {
    if Path::new(spec).exists() {
        return Graph::parse(&std::fs::read_to_string(spec)?);
    }
    let lower = spec.to_ascii_lowercase();
    let tail_num = |s: &str| s.parse::<usize>().ok();
    if lower == "petersen" {
        return Ok(Graph::petersen());
    }
    if let Some(n) = lower.strip_prefix('k').and_then(tail_num) {
        return Ok(Graph::complete(n));
    }
    if let Some(n) = lower.strip_prefix('c').and_then(tail_num) {
        if n >= 3 {
            return Ok(Graph::cycle(n));
        }
    }
    if let Some(n) = lower.strip_prefix('p').and_then(tail_num) {
        return Ok(Graph::path(n));
    }
    Err(Error::input(format!(
        "'{spec}' is neither a file nor a named graph (k<n>, c<n>, p<n>, petersen)"
    )))
}

fn write_out(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content)?;
    Ok(())
}

fn parse_biguint(s: &str) -> Result<BigUint, Error> {
    BigUint::from_str(s).map_err(|e| Error::input(format!("bad integer '{s}': {e}")))
}

fn print_extraction(r: &ExtractionResult, rep: &Reporter, trace: bool) {
    rep.emit("proper", r.proper);
    rep.emit("colors", r.color_count);
    rep.emit("net_size", r.net_size);
    rep.emit("bound", &r.bound);
    rep.emit("bound_log2", r.bound_log2);
    if let Some(mk) = r.max_kept {
        rep.emit("max_kept", mk);
    }
    if let Some(mb) = &r.m_bound {
        rep.emit("m_bound", mb);
    }
    for w in &r.warnings {
        rep.emit("warning", w);
    }
    if trace {
        for (v, raw) in r.trace.iter().enumerate() {
            match raw {
                RawColor::Point(p) => println!("v {} color {}", v + 1, p),
                RawColor::Set(s) => {
                    let kept = r
                        .kept
                        .as_ref()
                        .map(|k| {
                            k[v].iter()
                                .map(|i| i.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .unwrap_or_default();
                    let color = s
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!("v {} kept {} color {}", v + 1, kept, color);
                }
            }
        }
    }
}

fn load_pair(x: &Path, y: Option<&PathBuf>) -> Result<FactorizationPair, Error> {
    let xm = Matrix::parse(&std::fs::read_to_string(x)?)?;
    match y {
        Some(y) => {
            let ym = Matrix::parse(&std::fs::read_to_string(y)?)?;
            if (xm.rows(), xm.cols()) != (ym.rows(), ym.cols()) {
                return Err(Error::input("X and Y shapes differ"));
            }
            Ok(FactorizationPair::new(xm, ym))
        }
        None => Ok(FactorizationPair::symmetric(xm)),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let rep = Reporter {
        kv: matches!(cli.format, Format::Kv),
    };
    let cfg = SolverConfig::default();
    match cli.cmd {
        Cmd::Graph(g) => run_graph(g, &rep),
        Cmd::Solve(s) => run_solve(s, &rep, &cfg),
        Cmd::Reduce(r) => run_reduce(r, &rep),
        Cmd::Cert(c) => run_cert(c, &rep, &cfg),
        Cmd::Extract(e) => run_extract(e, &rep),
        Cmd::Bounds(b) => run_bounds(b, &rep),
        Cmd::Net(n) => run_net(n, &rep),
        Cmd::Pipeline(PipelineCmd::Demo(args)) => run_demo(args, &rep, &cfg),
    }
}

fn run_graph(cmd: GraphCmd, rep: &Reporter) -> Result<bool, Error> {
    match cmd {
        GraphCmd::Info { graph } => {
            let g = load_graph(&graph)?;
            rep.emit("n", g.n());
            rep.emit("m", g.edge_count());
            rep.emit("max_degree", g.max_degree());
            rep.emit("connected", g.is_connected());
            Ok(true)
        }
        GraphCmd::LineDigraph {
            graph,
            out,
            provenance_out,
        } => {
            let g = load_graph(&graph)?;
            let (dg, table) = line_digraph(&g);
            let ug = underlying_graph(&dg);
            write_out(&out, &ug.to_text())?;
            rep.emit("vertices", ug.n());
            rep.emit("edges", ug.edge_count());
            rep.emit("arcs", dg.arc_count());
            if let Some(p) = provenance_out {
                write_out(&p, &table.to_text())?;
            }
            Ok(true)
        }
        GraphCmd::Union { graph, copies, out } => {
            let g = load_graph(&graph)?;
            let h = disjoint_union(&g, copies)?;
            write_out(&out, &h.to_text())?;
            rep.emit("vertices", h.n());
            rep.emit("edges", h.edge_count());
            Ok(true)
        }
    }
}

fn run_solve(cmd: SolveCmd, rep: &Reporter, cfg: &SolverConfig) -> Result<bool, Error> {
    match cmd {
        SolveCmd::Chi { graph, limit, out } => {
            let g = load_graph(&graph)?;
            match chromatic_number(&g, limit, cfg)? {
                ChiOutcome::Exact(r) => {
                    rep.emit("chi", r.chi);
                    if let Some(out) = out {
                        write_out(&out, &r.witness.to_text())?;
                    }
                    Ok(true)
                }
                ChiOutcome::ExceedsLimit { limit } => {
                    rep.emit("chi", format!("> {limit}"));
                    Ok(true)
                }
            }
        }
        SolveCmd::ChiC { graph, out } => {
            let g = load_graph(&graph)?;
            let r = circular_chromatic_number(&g, cfg)?;
            rep.emit("chi_c", format!("{}/{}", r.p, r.q));
            rep.emit("value", r.value());
            if let Some(out) = out {
                // residues shifted into the 1-based coloring palette [1, p]
                let shifted: Vec<usize> = r.witness.iter().map(|&c| c + 1).collect();
                let coloring = Coloring::new(shifted, r.p).map_err(|e| {
                    Error::verification(format!("witness out of palette: {e}"))
                })?;
                let mut s = String::from("c circular witness: color minus one is the residue\n");
                s.push_str(&coloring.to_text());
                write_out(&out, &s)?;
            }
            Ok(true)
        }
        SolveCmd::Od2 { graph, eps } => {
            let g = load_graph(&graph)?;
            let d = od2_exact(&g, eps, cfg)?;
            rep.emit("od2_feasible", d.feasible);
            if let Some(t) = d.threshold {
                rep.emit("threshold", t);
            }
            if let Some((p, q)) = d.chi_c {
                rep.emit("chi_c", format!("{p}/{q}"));
            }
            Ok(true)
        }
        SolveCmd::OdEps {
            graph,
            dim,
            eps,
            restarts,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            match od_eps_upper(&g, dim, eps, restarts, seed)? {
                Some(witness) => {
                    rep.emit("found", true);
                    if let Some(out) = out {
                        write_out(&out, &witness.to_text())?;
                    }
                    Ok(true)
                }
                None => {
                    rep.emit("found", false);
                    rep.emit(
                        "note",
                        format!("no witness found at budget {restarts}; not a lower bound"),
                    );
                    Ok(true)
                }
            }
        }
        SolveCmd::PoljakRodl { graph } => {
            let g = load_graph(&graph)?;
            let r = poljak_rodl_check(&g, cfg)?;
            rep.emit("lhs_chi_line", r.lhs);
            rep.emit("rhs_min_n", r.rhs);
            rep.emit("equal", r.equal);
            Ok(r.equal)
        }
    }
}

fn run_reduce(cmd: ReduceCmd, rep: &Reporter) -> Result<bool, Error> {
    match cmd {
        ReduceCmd::Col2fitCopies {
            graph,
            d1,
            d2,
            eps,
            theta,
            out,
        } => {
            let g = load_graph(&graph)?;
            let r = reduce_coloring_to_fitness_copies(&g, d1, d2, eps, theta)?;
            write_out(&out, &r.instance.to_text())?;
            rep.emit("vertices", r.instance.graph.n());
            rep.emit("soundness_threshold", r.soundness_threshold);
            Ok(true)
        }
        ReduceCmd::Col2fitLine {
            graph,
            d1,
            d2,
            eps,
            theta,
            eta,
            k1,
            k2,
            alon_c,
            out,
            provenance_out,
        } => {
            let g = load_graph(&graph)?;
            let eta = eta.unwrap_or((1.0 - 2.0 * eps) / (4.0 * theta));
            let k1 = k1.map(|s| parse_biguint(&s)).transpose()?;
            let k2 = k2.map(|s| parse_biguint(&s)).transpose()?;
            let gap = match (&k1, &k2) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => {
                    return Err(Error::input("supply both --k1 and --k2 or neither"));
                }
            };
            let r =
                reduce_coloring_to_fitness_linedigraph(&g, d1, d2, eps, theta, eta, gap, alon_c)?;
            write_out(&out, &r.instance.to_text())?;
            if let Some(p) = provenance_out {
                write_out(&p, &r.arc_table.to_text())?;
            }
            rep.emit("vertices", r.instance.graph.n());
            rep.emit("eps_prime", r.conditions.eps_prime);
            rep.emit("m_bound", &r.conditions.m_bound);
            rep.emit("log2_required_k2", r.conditions.log2_required_k2);
            if let Some(k1_ok) = r.conditions.k1_ok {
                rep.emit("k1_ok", k1_ok);
            }
            if let Some(k2_ok) = r.conditions.k2_ok {
                rep.emit("k2_ok", k2_ok);
            }
            if let Some(met) = r.conditions.met {
                rep.emit("conditions_met", met);
            }
            Ok(true)
        }
        ReduceCmd::Fit2comp { instance, kind, out } => {
            let inst = FitnessInstance::parse(&std::fs::read_to_string(&instance)?)?;
            let variant = match kind {
                Kind::Psd => CompletionVariant::Psd,
                Kind::Bounded => CompletionVariant::Bounded,
            };
            let comp = reduce_fitness_to_completion(&inst, variant)?;
            write_out(&out, &comp.to_text())?;
            rep.emit("n", comp.partial.n());
            rep.emit("eps_prime", comp.eps);
            rep.emit("theta_prime", comp.theta);
            rep.emit("missing_fraction", comp.partial.missing_fraction());
            Ok(true)
        }
        ReduceCmd::Pad {
            instance,
            target,
            out,
        } => {
            let inst = CompletionInstance::parse(&std::fs::read_to_string(&instance)?)?;
            match pad_instance(&inst, target)? {
                PadOutcome::Padded { instance, added } => {
                    write_out(&out, &instance.to_text())?;
                    rep.emit("added", added);
                    rep.emit("n", instance.partial.n());
                    rep.emit("missing_fraction", instance.partial.missing_fraction());
                }
                PadOutcome::NoOp { reason } => {
                    write_out(&out, &inst.to_text())?;
                    rep.emit("noop", reason);
                }
            }
            Ok(true)
        }
    }
}

fn run_cert(cmd: CertCmd, rep: &Reporter, _cfg: &SolverConfig) -> Result<bool, Error> {
    match cmd {
        CertCmd::Yes {
            graph,
            coloring,
            out,
            h_out,
        } => {
            let g = load_graph(&graph)?;
            let c = Coloring::parse(&std::fs::read_to_string(&coloring)?)?;
            let (h, cert) = yes_certificate(&g, &c)?;
            write_out(&out, &cert.to_text())?;
            if let Some(p) = h_out {
                write_out(&p, &h.to_text())?;
            }
            rep.emit("h_vertices", h.n());
            rep.emit("rank", cert.rank);
            rep.emit("coherence", cert.coherence_value);
            Ok(true)
        }
        CertCmd::VerifyPsd {
            instance,
            candidate,
            eps,
            tol,
        } => {
            let inst = CompletionInstance::parse(&std::fs::read_to_string(&instance)?)?;
            let b = read_candidate(&candidate)?;
            let eps = eps.unwrap_or(inst.eps);
            let v = verify_psd_completion(&inst.partial, &b, eps, tol)?;
            rep.emit("agrees", v.agrees);
            rep.emit("worst_deviation", v.worst_deviation);
            rep.emit("psd", v.psd);
            rep.emit("rank", v.rank);
            if let Some(mu) = v.coherence {
                rep.emit("coherence", mu);
            }
            let ok = v.agrees && v.psd && v.rank <= inst.d1;
            rep.emit("yes_side_ok", ok);
            Ok(ok)
        }
        CertCmd::VerifyInf {
            instance,
            candidate,
            eps,
            theta,
            tol,
        } => {
            let inst = CompletionInstance::parse(&std::fs::read_to_string(&instance)?)?;
            let b = read_candidate(&candidate)?;
            let eps = eps.unwrap_or(inst.eps);
            let theta = theta.unwrap_or(inst.theta);
            let v = verify_bounded_completion(&inst.partial, &b, eps, theta, tol)?;
            rep.emit("agrees", v.agrees);
            rep.emit("worst_deviation", v.worst_deviation);
            rep.emit("inf_norm_ok", v.inf_norm_ok);
            rep.emit("inf_norm", v.inf_norm);
            rep.emit("rank", v.rank);
            let ok = v.agrees && v.inf_norm_ok && v.rank <= inst.d1;
            rep.emit("yes_side_ok", ok);
            Ok(ok)
        }
    }
}

/// Candidate matrices may arrive as a bare matrix file or as a certificate.
fn read_candidate(path: &Path) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with("cert") {
        Ok(YesCertificate::parse(&text)?.b)
    } else {
        Matrix::parse(&text)
    }
}

fn run_extract(cmd: ExtractCmd, rep: &Reporter) -> Result<bool, Error> {
    match cmd {
        ExtractCmd::General {
            x,
            y,
            graph,
            eps,
            theta,
            trace,
            out,
        } => {
            let pair = load_pair(&x, y.as_ref())?;
            let g = load_graph(&graph)?;
            let r = match theta {
                Some(theta) => extract_general(&pair, &g, eps, theta)?,
                None => extract_general_symmetric(&pair, &g, eps)?,
            };
            print_extraction(&r, rep, trace);
            if let Some(out) = out {
                write_out(&out, &r.coloring.to_text())?;
            }
            Ok(r.proper)
        }
        ExtractCmd::Line {
            x,
            y,
            rep: rep_file,
            graph,
            provenance,
            eps,
            theta,
            eta,
            alon_c,
            trace,
            out,
        } => {
            let g = load_graph(&graph)?;
            let table = ArcTable::parse(&std::fs::read_to_string(&provenance)?)?;
            let (pair, eps, theta) = match (x, rep_file) {
                (Some(x), None) => (load_pair(&x, y.as_ref())?, eps, theta),
                (None, Some(rf)) => {
                    let (dg, _) = line_digraph(&g);
                    let ug = underlying_graph(&dg);
                    let text = std::fs::read_to_string(&rf)?;
                    let r = Representation::parse(&text, ug)?;
                    let eps = r.eps();
                    (FactorizationPair::symmetric(r.vectors().clone()), eps, 1.0)
                }
                _ => return Err(Error::input("supply exactly one of --x or --rep")),
            };
            let eta = eta.unwrap_or((1.0 - 2.0 * eps) / (4.0 * theta));
            let r = extract_linedigraph(&pair, &g, &table, eps, theta, eta, alon_c)?;
            print_extraction(&r, rep, trace);
            if trace {
                for w in separation_trace(&pair, &g, &table, &r, eps, theta, eta)? {
                    println!(
                        "edge ({},{}) witness_arc {} value {} tail_max {} threshold {} ok {}",
                        w.tail,
                        w.head,
                        w.witness_arc.map_or("-".into(), |a| a.to_string()),
                        w.witness_value,
                        w.max_tail_value,
                        w.threshold,
                        w.ok
                    );
                }
            }
            if let Some(out) = out {
                write_out(&out, &r.coloring.to_text())?;
            }
            Ok(r.proper)
        }
        ExtractCmd::FromMatrix {
            a,
            graph,
            provenance,
            eps,
            eta,
            alon_c,
            trace,
            out,
        } => {
            let am = Matrix::parse(&std::fs::read_to_string(&a)?)?;
            let g = load_graph(&graph)?;
            let table = ArcTable::parse(&std::fs::read_to_string(&provenance)?)?;
            let (r, report) = extract_from_matrix(&am, &g, &table, eps, eta, alon_c)?;
            rep.emit("input_rank", report.input_rank);
            rep.emit("symmetrized_rank", report.symmetrized_rank);
            rep.emit("john_bound", report.john_bound);
            rep.emit("theta_used", report.theta_used);
            rep.emit("eta_used", report.eta_used);
            print_extraction(&r, rep, trace);
            if let Some(out) = out {
                write_out(&out, &r.coloring.to_text())?;
            }
            Ok(r.proper)
        }
    }
}

fn run_bounds(cmd: BoundsCmd, rep: &Reporter) -> Result<bool, Error> {
    match cmd {
        BoundsCmd::M { d, eps, alon_c } => {
            let m = m_upper_bound(d, eps, alon_c)?;
            rep.emit("m_upper", &m);
            Ok(true)
        }
        BoundsCmd::Regimes {
            d,
            alon_c,
            theta_max,
            beta,
            alpha,
        } => {
            for r in hardness_parameter_regimes(d, alon_c, theta_max, beta, alpha)? {
                println!(
                    "{} problem={} d1={} g={} eps=[{},{}] theta={}{} note=\"{}\"",
                    r.name,
                    r.problem,
                    r.d1,
                    r.g,
                    r.eps_min,
                    r.eps_max,
                    r.theta,
                    r.eps_completion_max
                        .map_or(String::new(), |e| format!(" eps'_max={e}")),
                    r.note
                );
            }
            Ok(true)
        }
    }
}

fn run_net(cmd: NetCmd, rep: &Reporter) -> Result<bool, Error> {
    match cmd {
        NetCmd::Build {
            dim,
            theta,
            eta,
            out,
        } => {
            let net = build_grid_net(dim, theta, eta)?;
            rep.emit("size", net.len());
            rep.emit("packing_bound", net.packing_bound());
            if let Some(out) = out {
                write_out(&out, &net.to_text())?;
            }
            Ok(true)
        }
    }
}

fn run_demo(args: DemoArgs, rep: &Reporter, cfg: &SolverConfig) -> Result<bool, Error> {
    let g = load_graph(&args.graph)?;
    let mut ok = true;

    // 1. chromatic number of the source graph
    let chi_g = chromatic_number_exact(&g, cfg)?;
    rep.emit("chi", chi_g.chi);

    // 2. line digraph and the chromatic identity
    let (dg, table) = line_digraph(&g);
    let ug = underlying_graph(&dg);
    let pr = poljak_rodl_check(&g, cfg)?;
    rep.emit("chi_line", pr.lhs);
    rep.emit("poljak_rodl_equal", pr.equal);
    ok &= pr.equal;

    // 3. planted certificate over d1 copies of the arc graph
    let chi_line = chromatic_number_exact(&ug, cfg)?;
    let d1 = args.d1.unwrap_or(chi_line.chi);
    if d1 < chi_line.chi {
        return Err(Error::input(format!(
            "d1 = {d1} below the arc-graph chromatic number {}; no planted certificate",
            chi_line.chi
        )));
    }
    let padded = Coloring::new(chi_line.witness.assignment().to_vec(), d1)?;
    let (h, cert) = yes_certificate(&ug, &padded)?;
    rep.emit("h_vertices", h.n());
    rep.emit("cert_rank", cert.rank);
    rep.emit("cert_coherence", cert.coherence_value);
    ok &= cert.rank == d1;
    ok &= (cert.coherence_value - 1.0).abs() <= 1e-9;

    // 4. fitness and completion instances
    let d2 = args.d2.unwrap_or(d1 + 1);
    let line_red = reduce_coloring_to_fitness_linedigraph(
        &g,
        d1,
        d2,
        args.eps,
        1.0,
        (1.0 - 2.0 * args.eps) / 4.0,
        None,
        1.0,
    )?;
    let comp = reduce_fitness_to_completion(&line_red.instance, CompletionVariant::Psd)?;
    rep.emit("instance_n", comp.partial.n());
    rep.emit("instance_eps_prime", comp.eps);

    // 5. verify the planted certificate against the instance
    let v = verify_psd_completion(&comp.partial, &cert.b, 0.0, 1e-9)?;
    rep.emit("verify_agrees", v.agrees);
    rep.emit("verify_psd", v.psd);
    rep.emit("verify_rank", v.rank);
    ok &= v.agrees && v.psd && v.rank <= d1;

    // 6. extract a proper coloring of the source graph back out
    let rep_line = representation_from_coloring(&ug, &chi_line.witness)?;
    let pair = FactorizationPair::symmetric(rep_line.vectors().clone());
    let eta = (1.0 - 2.0 * args.eps) / 4.0;
    let r = extract_linedigraph(&pair, &g, &table, args.eps, 1.0, eta, 1.0)?;
    rep.emit("extract_proper", r.proper);
    rep.emit("extract_colors", r.color_count);
    ok &= r.proper;

    if let Some(dir) = args.out_dir {
        std::fs::create_dir_all(&dir)?;
        write_out(&dir.join("source.graph"), &g.to_text())?;
        write_out(&dir.join("arc-graph.graph"), &ug.to_text())?;
        write_out(&dir.join("arc-graph.prov"), &table.to_text())?;
        write_out(&dir.join("instance.pmx"), &comp.to_text())?;
        write_out(&dir.join("certificate.cert"), &cert.to_text())?;
        write_out(&dir.join("extracted.coloring"), &r.coloring.to_text())?;
    }

    rep.emit("pipeline_ok", ok);
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Verification(_) => 1,
                Error::Input(_) | Error::Parse(_) | Error::Io(_) => 2,
                Error::ResourceCap(_) => 3,
            };
            ExitCode::from(code)
        }
    }
}
