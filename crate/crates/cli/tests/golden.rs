//! Runs the binary over `fixtures/` and compares stdout byte for byte with
//! `fixtures/golden/<name>.out`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CASES: &[(&str, &[&str], i32)] = &[
    ("simple_weyl", &["algebra", "simple", "weyl.alg"], 0),
    ("simple_torsion", &["algebra", "simple", "weyl_torsion.alg"], 0),
    ("center_commutative", &["algebra", "center", "commutative.alg"], 0),
    ("center_rank1", &["algebra", "center", "center_rank1.alg"], 0),
    ("check_weyl", &["algebra", "check", "weyl.alg"], 0),
    ("derived_units_weyl", &["algebra", "derived-units", "weyl.alg"], 0),
    ("derived_units_z3z", &["algebra", "derived-units", "derived_z3z.alg"], 0),
    ("delta_tropical_line", &["delta", "--principal", "tropical_line.mod"], 0),
    ("certify_excluded", &["delta", "line_sum.mod", "--certify", "(1,2)", "--bound", "4"], 0),
    ("certify_none", &["delta", "line_sum.mod", "--certify", "(1,1)", "--bound", "4"], 1),
    ("gk_tropical_line", &["gk", "tropical_line.mod"], 0),
    ("gk_torsion", &["gk", "torsion_u1.mod"], 0),
    ("tensor_lines", &["tensor", "tropical_line.mod", "tropical_line.mod"], 0),
    ("decompose_unimodular", &["decompose", "block4_unimodular.alg"], 0),
    ("decompose_pfaffian9", &["decompose", "block4_pfaffian9.alg"], 0),
    ("commuting_shift", &["commuting", "commuting_shift.alg", "--C", "1,0,0,0;0,1,0,0", "--ext", "0,0,1,0;0,0,0,1"], 0),
    ("commuting_even", &["commuting", "commuting_even.alg", "--C", "1,0,0,0;0,1,0,0", "--ext", "0,0,1,0;0,0,0,1"], 0),
    (
        "commuting_none",
        &["commuting", "commuting_none.alg", "--C", "1,0,0,0;0,1,0,0", "--ext", "0,0,1,0;0,0,0,1", "--smax", "4"],
        1,
    ),
    ("simple_module_k1", &["simple-module", "example_t1_p2_k1.alg", "--gamma", "u - x1"], 0),
    ("simple_module_beta", &["simple-module", "example_t1_p2_k1.alg", "--gamma", "u - x1", "--beta", "x1 - 1"], 0),
    ("simple_module_k2", &["simple-module", "example_t2_p23_k2.alg", "--gamma", "u^2 - 2*x2*u - x1*x2"], 0),
    ("holonomy_line", &["holonomy", "holonomic_line.mod", "--degree", "3"], 1),
    ("holonomy_torsion", &["holonomy", "torsion_u1.mod"], 0),
    ("example_t1", &["example", "--t", "1", "--primes", "2", "--k", "1"], 0),
    ("example_t2", &["example", "--t", "2", "--primes", "2,3", "--k", "2"], 0),
];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("QTORUS_SEED")
        .output()
        .expect("spawn qtorus")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let out = run(args);
        let text = stdout(&out);
        let path = fixtures().join("golden").join(format!("{name}.out"));
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if out.status.code() != Some(*code) {
            failures.push(format!("{name}: exit {:?}, expected {code}; stderr {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        } else if text != want {
            failures.push(format!("{name}: output differs from {}\n{text}", path.display()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reports_are_deterministic() {
    for (_, args, _) in CASES {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn documented_report_phrases() {
    assert!(stdout(&run(&["algebra", "simple", "weyl.alg"])).contains("simple: true"));
    assert!(stdout(&run(&["algebra", "center", "commutative.alg"])).contains("center rank: 3"));
    let fan = stdout(&run(&["delta", "--principal", "tropical_line.mod"]));
    assert_eq!(fan.lines().filter(|l| l.starts_with("cone:")).count(), 3);
    let cert = stdout(&run(&["delta", "line_sum.mod", "--certify", "(1,2)"]));
    assert!(cert.contains("excluded, witness=u2 + u1"), "{cert}");
    assert!(cert.contains("verified: true"));
    let blocks = stdout(&run(&["decompose", "block4_unimodular.alg"]));
    assert!(blocks.starts_with("blocks: 2\n"));
    let sm = stdout(&run(&["simple-module", "example_t1_p2_k1.alg", "--gamma", "u - x1"]));
    assert!(sm.starts_with("rank 1\n"));
    assert!(sm.contains("probes passed: 10/10"));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["algebra", "check", "non_alternating.alg"][..],
        &["delta", "zero_relation.mod"],
        &["delta", "--principal", "missing.mod"],
        &["delta", "line_sum.mod", "--certify", "(1,2,3)"],
        &["simple-module", "commutative.alg", "--gamma", "u - x1*x2"],
        &["simple-module", "example_t1_p2_k1.alg", "--gamma", "u - (x1 + 1)"],
        &["decompose", "commutative.alg"],
        &["tensor", "tropical_line.mod"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stdout(&out));
        assert!(out.stdout.is_empty());
    }
    let err = run(&["algebra", "check", "non_alternating.alg"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 4"));
}

#[test]
fn principal_flag_rejects_two_relations() {
    let dir = tempdir("principal");
    let t = run(&["tensor", "tropical_line.mod", "tropical_line.mod"]);
    let f = dir.join("t.mod");
    std::fs::write(&f, &t.stdout).unwrap();
    let out = run(&["delta", "--principal", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

fn tempdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("qtorus-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn tensor_then_gk_is_exact_two() {
    let dir = tempdir("tensor");
    let t = run(&["tensor", "tropical_line.mod", "tropical_line.mod"]);
    let f = dir.join("t.mod");
    std::fs::write(&f, &t.stdout).unwrap();
    let out = run(&["gk", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("gk: exact 2"));
    let fan = stdout(&out);
    assert_eq!(fan.lines().filter(|l| l.starts_with("cone:")).count(), 9);
}

#[test]
fn seed_changes_probes_and_flag_overrides_env() {
    let args = ["simple-module", "example_t1_p2_k1.alg", "--gamma", "u - x1"];
    let with_env = |v: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_qtorus"))
            .args(args)
            .args(extra)
            .current_dir(fixtures())
            .env("QTORUS_SEED", v)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(with_env("0", &[]), run(&args).stdout);
    assert_ne!(with_env("7", &[]), run(&args).stdout);
    assert_eq!(with_env("7", &["--seed", "0"]), run(&args).stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_qtorus")).args(args).current_dir(fixtures()).env("QTORUS_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
