use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file)
}

fn golden(file: &str) -> String {
    std::fs::read_to_string(corpus("golden").join(file)).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circord")).args(args).output().unwrap()
}

/// Runs with the first argument after the subcommand resolved in the corpus.
fn run_on(sub: &str, file: &str, rest: &[&str]) -> (i32, String, String) {
    let path = corpus(file);
    let mut args = vec![sub, path.to_str().unwrap()];
    args.extend_from_slice(rest);
    let out = run(&args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn validate_summarises() {
    let (code, out, _) = run_on("validate", "ex42.circ", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("circuit Classical: 6 gates, 3 inputs, 3 outputs"));
    assert!(out.contains("morphism f : Classical -> Diamond: valid"));
}

#[test]
fn connectivity_prints_a_relation() {
    let (code, out, _) = run_on("connectivity", "ex23.circ", &["--circuit", "C"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "relation G {\n  inputs: a1 a2 a3;\n  outputs: b1 b2;\n  pairs: a1 - b1, a2 - b2, a3 - b2;\n}\n"
    );
}

#[test]
fn dot_matches_golden() {
    let (code, out, _) = run_on("dot", "ex23.circ", &["--circuit", "C"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("ex23.C.dot"));
}

#[test]
fn morphism_check_reports_validity() {
    let (code, out, _) = run_on("morphism-check", "ex42.circ", &["--morphism", "f"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid"));
    assert!(out.contains("quotient"));
}

#[test]
fn morphism_find_both_directions() {
    let (code, out, _) = run_on("morphism-find", "ex29.circ", &["--from", "P", "--to", "Q"]);
    assert_eq!(code, 0);
    assert!(out.contains("morphism f : P -> Q"));
    let (code, _, _) = run_on("morphism-find", "ex29.circ", &["--from", "Q", "--to", "P"]);
    assert_eq!(code, 1);
}

#[test]
fn equivalent_answers() {
    let (code, out, _) = run_on("equivalent", "ex29.circ", &["P", "Q"]);
    assert_eq!(code, 1);
    assert!(out.contains("P -> Q: yes") && out.contains("Q -> P: no"));
    let (code, out, _) = run_on("equivalent", "ex_noniso.circ", &["P", "Q"]);
    assert_eq!(code, 0);
    assert!(out.contains("isomorphic: no"));
}

#[test]
fn factorise_emits_four_stages() {
    let (code, out, _) = run_on("factorise", "factorise.circ", &["--morphism", "f"]);
    assert_eq!(code, 0);
    for stage in 1..=4 {
        assert!(out.contains(&format!("morphism f_stage{stage} :")), "{out}");
    }
    // the emitted document is itself valid input
    let tmp = std::env::temp_dir().join(format!("circord-fac-{}.circ", std::process::id()));
    std::fs::write(&tmp, &out).unwrap();
    let check = run(&["validate", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert!(check.status.success());
    assert!(!String::from_utf8(check.stdout).unwrap().contains("invalid"));
}

#[test]
fn quotient_and_atomic_decomposition() {
    let (code, out, _) = run_on("quotient", "congruence.circ", &["--partition", "Layers"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("circuit K_by_Layers {"));
    let (code, _, err) = run_on("quotient", "congruence.circ", &["--partition", "Crossed"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a compatible congruence"));
    let (code, out, _) = run_on("atomic-decomp", "congruence.circ", &["--partition", "Layers"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1. merge a b (parallel)\n2. merge c d (parallel)\n"));
}

#[test]
fn lattice_and_basic_circuit_match_golden() {
    let (code, out, _) = run_on("concept-lattice", "ex48.circ", &["--relation", "G"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("ex48.L_G.circ"));
    let (code, out, _) = run_on("basic-circuit", "ex48.circ", &["--relation", "G"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("ex48.B_G.circ"));
}

#[test]
fn sandwich_exit_codes() {
    let (code, out, _) = run_on("sandwich", "ex42.circ", &["--relation", "C3", "--circuit", "Diamond"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = run_on("sandwich", "ex23.circ", &["--relation", "X", "--circuit", "C"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown element `X`"));
}

#[test]
fn endomorphisms_are_listed() {
    let (code, out, _) = run_on("endos", "ex29.circ", &["--circuit", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(out, "morphism e0 : Q -> Q {\n  q => q;\n}\n");
}

#[test]
fn budget_exhaustion_exits_three() {
    let (code, _, err) = run_on(
        "morphism-find",
        "ex42.circ",
        &["--from", "Classical", "--to", "Diamond", "--budget", "1"],
    );
    assert_eq!(code, 3);
    assert!(err.contains("budget"));
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = run_on("validate", "does-not-exist.circ", &[]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));

    let tmp = std::env::temp_dir().join(format!("circord-bad-{}.circ", std::process::id()));
    std::fs::write(&tmp, "circuit C { gates: p q; order: p < ; }\n").unwrap();
    let out = run(&["validate", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let tmp = std::env::temp_dir().join(format!("circord-out-{}.dot", std::process::id()));
    let path = corpus("ex23.circ");
    let out = run(&["dot", path.to_str().unwrap(), "--circuit", "C", "-o", tmp.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&tmp).unwrap();
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(written, golden("ex23.C.dot"));
}

#[test]
fn repeated_runs_are_identical() {
    let path = corpus("factorise.circ");
    let args = ["factorise", path.to_str().unwrap(), "--morphism", "f"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

fn run_source(name: &str, src: &str, rest: &[&str]) -> (i32, String) {
    let tmp = std::env::temp_dir().join(format!("circord-{name}-{}.circ", std::process::id()));
    std::fs::write(&tmp, src).unwrap();
    let mut args = vec![rest[0], tmp.to_str().unwrap()];
    args.extend_from_slice(&rest[1..]);
    let out = run(&args);
    std::fs::remove_file(&tmp).unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn negative_answers_exit_one() {
    let src = std::fs::read_to_string(corpus("ex_noniso.circ")).unwrap()
        + "\nmorphism back : Q -> P { x => x; y => y; }\n\nrelation Full { inputs: a; outputs: b; pairs: a - b; }\n\nrelation Empty { inputs: a; outputs: b; }\n";
    let (code, out) = run_source("neg", &src, &["morphism-check", "--morphism", "back"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim_end(), "invalid (outputs)");

    let (code, _) = run_source("neg", &src, &["sandwich", "--relation", "Full", "--circuit", "P"]);
    assert_eq!(code, 0);
    let (code, out) = run_source("neg", &src, &["sandwich", "--relation", "Empty", "--circuit", "Q"]);
    assert_eq!(code, 1, "{out}");
}
