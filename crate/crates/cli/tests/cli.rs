//! End-to-end tests of the binary: file round trips, exit codes, seeded
//! determinism, and the full pipeline demo.

use std::path::Path;
use std::process::{Command, Output};

fn lrmc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrmc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_chi_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["solve", "chi", "c5", "--out", "w.coloring"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("chi: 3"));
    let text = std::fs::read_to_string(dir.path().join("w.coloring")).unwrap();
    assert!(text.starts_with("coloring 5 3\n"));
}

#[test]
fn chi_limit_reporting() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["solve", "chi", "k4", "--limit", "3"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("chi: > 3"));
}

#[test]
fn bounds_m_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["--format", "kv", "bounds", "m", "--d", "2", "--eps", "0.5"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "m_upper 3\n");
}

#[test]
fn pipeline_demo_passes_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(
        &["pipeline", "demo", "--graph", "c5", "--d1", "3", "--out-dir", "artifacts"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("pipeline_ok: true"));
    // every artifact the pipeline writes is re-readable
    for f in [
        "artifacts/source.graph",
        "artifacts/arc-graph.graph",
        "artifacts/arc-graph.prov",
        "artifacts/instance.pmx",
        "artifacts/certificate.cert",
        "artifacts/extracted.coloring",
    ] {
        assert!(dir.path().join(f).exists(), "missing {f}");
    }
    let out = lrmc(
        &["graph", "info", "artifacts/arc-graph.graph"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("n: 10"));
}

#[test]
fn reduction_chain_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    // coloring witness for C5
    assert!(lrmc(&["solve", "chi", "c5", "--out", "c5.coloring"], dir.path())
        .status
        .success());
    // planted certificate over 3 copies
    assert!(lrmc(
        &["cert", "yes", "c5", "c5.coloring", "--out", "c5.cert", "--h-out", "h.graph"],
        dir.path()
    )
    .status
    .success());
    // fitness instance over the same union graph, then the completion instance
    assert!(lrmc(
        &[
            "reduce", "col2fit-copies", "c5", "--d1", "3", "--d2", "4", "--eps",
            "0.16666666666666666", "--out", "c5.fit",
        ],
        dir.path()
    )
    .status
    .success());
    let out = lrmc(
        &["reduce", "fit2comp", "c5.fit", "--kind", "psd", "--out", "c5.pmx"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("eps_prime: 0.14285714285714285"));

    // planted certificate verifies (exit 0)
    let out = lrmc(
        &["cert", "verify-psd", "c5.pmx", "c5.cert", "--eps", "0"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("yes_side_ok: true"));

    // padding brings the missing fraction down and the instance re-reads
    let out = lrmc(
        &["reduce", "pad", "c5.pmx", "--target", "0.2", "--out", "c5-padded.pmx"],
        dir.path(),
    );
    assert!(out.status.success());
    let padded = std::fs::read_to_string(dir.path().join("c5-padded.pmx")).unwrap();
    assert!(padded.contains("pmatrix"));
    let out = lrmc(
        &["reduce", "pad", "c5-padded.pmx", "--target", "0.9", "--out", "noop.pmx"],
        dir.path(),
    );
    assert!(stdout(&out).contains("noop"));
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(lrmc(
        &["reduce", "col2fit-copies", "k3", "--d1", "1", "--d2", "2", "--out", "k3.fit"],
        dir.path()
    )
    .status
    .success());
    assert!(lrmc(
        &["reduce", "fit2comp", "k3.fit", "--kind", "psd", "--out", "k3.pmx"],
        dir.path()
    )
    .status
    .success());
    // wrong-size candidate: input error (exit 2)
    std::fs::write(dir.path().join("bad.matrix"), "matrix 2 2\n1 0\n0 1\n").unwrap();
    let out = lrmc(
        &["cert", "verify-psd", "k3.pmx", "bad.matrix"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // disagreeing candidate: verification fails (exit 1)
    std::fs::write(
        dir.path().join("drift.matrix"),
        "matrix 3 3\n1 0.5 0.5\n0.5 1 0.5\n0.5 0.5 1\n",
    )
    .unwrap();
    let out = lrmc(
        &["cert", "verify-psd", "k3.pmx", "drift.matrix", "--eps", "0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["solve", "chi", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = lrmc(&["solve", "chi", "k99"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = lrmc(&["net", "build", "--dim", "6", "--theta", "1", "--eta", "0.001"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn extract_line_via_files_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    assert!(lrmc(
        &["graph", "line-digraph", "c5", "--out", "ug.graph", "--provenance-out", "ug.prov"],
        dir.path()
    )
    .status
    .success());
    assert!(lrmc(&["solve", "chi", "ug.graph", "--out", "ug.coloring"], dir.path())
        .status
        .success());
    // standard-basis vectors of the 3-coloring as a 10x3 matrix
    let coloring = std::fs::read_to_string(dir.path().join("ug.coloring")).unwrap();
    let colors: Vec<usize> = coloring
        .lines()
        .skip(1)
        .map(|l| l.trim().parse().unwrap())
        .collect();
    let mut x = String::from("matrix 10 3\n");
    for c in colors {
        let mut row = ["0", "0", "0"];
        row[c - 1] = "1";
        x.push_str(&format!("{}\n", row.join(" ")));
    }
    std::fs::write(dir.path().join("x.matrix"), x).unwrap();

    let out = lrmc(
        &[
            "extract", "line", "--x", "x.matrix", "--graph", "c5", "--provenance", "ug.prov",
            "--eta", "0.25", "--trace", "--out", "extracted.coloring",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("proper: true"));
    assert!(text.lines().any(|l| l.starts_with("v 1 kept ")));
    assert!(text.lines().any(|l| l.starts_with("edge (1,2) witness_arc ")));
    let coloring = std::fs::read_to_string(dir.path().join("extracted.coloring")).unwrap();
    assert!(coloring.starts_with("coloring 5 "));
}

#[test]
fn seeded_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.rep", "b.rep"] {
        let out = lrmc(
            &[
                "solve", "od-eps", "c5", "--dim", "2", "--eps", "0.35", "--restarts", "50",
                "--seed", "7", "--out", name,
            ],
            dir.path(),
        );
        assert!(out.status.success());
        assert!(stdout(&out).contains("found: true"));
    }
    let a = std::fs::read(dir.path().join("a.rep")).unwrap();
    let b = std::fs::read(dir.path().join("b.rep")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn net_dump_round_trip_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(
        &["--format", "kv", "net", "build", "--dim", "1", "--theta", "1", "--eta", "1", "--out", "n.net"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("size 3"));
    let text = std::fs::read_to_string(dir.path().join("n.net")).unwrap();
    assert!(text.starts_with("net 1 1 1 3\n"));
}

#[test]
fn od2_decision_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["solve", "od2", "k3", "--eps", "0.5"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("od2_feasible: true"));
    assert!(text.contains("chi_c: 3/1"));
    let out = lrmc(&["solve", "od2", "k3", "--eps", "0.49"], dir.path());
    assert!(stdout(&out).contains("od2_feasible: false"));
}

#[test]
fn bounded_instance_verifies_planted_candidate() {
    let dir = tempfile::tempdir().unwrap();
    // chi(P3) = 2 = d1 < floor(d2/2) = 3; theta = 2 exceeds
    // sqrt(1+eps) d2^(1/4) ~ 1.69
    assert!(lrmc(
        &[
            "reduce", "col2fit-copies", "p3", "--d1", "2", "--d2", "6", "--eps",
            "0.16666666666666666", "--theta", "2", "--out", "p3.fit",
        ],
        dir.path()
    )
    .status
    .success());
    let out = lrmc(
        &["reduce", "fit2comp", "p3.fit", "--kind", "bounded", "--out", "p3.pmx"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // planted rank-2 candidate: Gram of the coloring (1,2,1) per copy
    let block = [[1.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]];
    let mut cand = String::from("matrix 6 6\n");
    for i in 0..6 {
        let row: Vec<String> = (0..6)
            .map(|j| format!("{}", block[i % 3][j % 3]))
            .collect();
        cand.push_str(&format!("{}\n", row.join(" ")));
    }
    std::fs::write(dir.path().join("cand.matrix"), cand).unwrap();
    let out = lrmc(
        &["cert", "verify-inf", "p3.pmx", "cand.matrix", "--eps", "0"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("inf_norm_ok: true"));
    assert!(stdout(&out).contains("rank: 2"));
    assert!(stdout(&out).contains("yes_side_ok: true"));
}

#[test]
fn extract_general_and_from_matrix() {
    let dir = tempfile::tempdir().unwrap();
    // standard-basis vectors of the lex-least 3-coloring of C5: (1,2,1,2,3)
    std::fs::write(
        dir.path().join("x.matrix"),
        "matrix 5 3\n1 0 0\n0 1 0\n1 0 0\n0 1 0\n0 0 1\n",
    )
    .unwrap();
    let out = lrmc(
        &["extract", "general", "--x", "x.matrix", "--graph", "c5", "--eps", "0", "--trace"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("proper: true"));
    assert!(text.lines().any(|l| l.starts_with("v 1 color ")));

    // from-matrix route over the arc graph of K2 (a single edge)
    assert!(lrmc(
        &["graph", "line-digraph", "k2", "--out", "ug.graph", "--provenance-out", "ug.prov"],
        dir.path()
    )
    .status
    .success());
    std::fs::write(
        dir.path().join("a.matrix"),
        "matrix 2 2\n1 0\n0 1\n",
    )
    .unwrap();
    let out = lrmc(
        &[
            "extract", "from-matrix", "--a", "a.matrix", "--graph", "k2", "--provenance",
            "ug.prov", "--eps", "0",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("proper: true"));
    assert!(text.contains("colors: 2"));
    assert!(text.contains("john_bound:"));
}

#[test]
fn regimes_listing() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrmc(&["bounds", "regimes", "--d", "100"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["gf-item1", "gf-item2", "psd-case1", "psd-case2", "psd-case3"] {
        assert!(text.contains(name), "missing {name}");
    }
}
