use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cig")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn axiom_under_par_is_correct() {
    let o = cig(&["check", "A | A^", "--links", "0-1", "--oracle"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("Correct"));
    assert!(out.contains("derivable; agrees"));
}

#[test]
fn axiom_under_tensor_has_a_witness() {
    let o = cig(&["check", "A * A^", "--links", "0-1"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("Incorrect"));
    assert!(out.contains("witness: 2 edges, coherent, cyclically alternating, chordless"));
}

#[test]
fn links_must_join_dual_atoms() {
    assert_eq!(code(&cig(&["check", "A * B^", "--links", "0-1"])), 2);
    assert_eq!(code(&cig(&["check", "A |", "--links", "0-1"])), 2);
}

#[test]
fn cograph_as_dot() {
    let o = cig(&["cograph", "(A | B) * (C | D)", "--dot"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("graph G {"));
    assert_eq!(out.matches(" -- ").count(), 4);
}

#[test]
fn two_cycle_is_not_orthogonal() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.cig", "vertex a\nvertex b\nedge x a b\n");
    let h = file(&dir, "h.cig", "vertex a\nvertex b\nedge y b a\n");
    let o = cig(&["orth", path(&g), path(&h)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("a -0:x-> b -1:y-> a"));
    let e = file(&dir, "e.cig", "vertex a\nvertex b\n");
    let o = cig(&["orth", path(&g), path(&e)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "orthogonal");
}

#[test]
fn execution_composes_through_the_middle() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.cig", "vertex a\nvertex m\nedge e a m\n");
    let h = file(&dir, "h.cig", "vertex m\nvertex b\nedge f m b\n");
    let out = dir.path().join("out.cig");
    let o = cig(&["exec", path(&g), path(&h), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("vertex a\nvertex b\n"));
    assert!(text.lines().any(|l| l.starts_with("edge ") && l.ends_with(" a b")));
    assert!(!text.contains("vertex m"));
}

#[test]
fn divergent_execution_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = file(
        &dir,
        "g.cig",
        "vertex a\nvertex b\nvertex c\nvertex d\nedge e1 c a\nedge e2 b a\nedge e3 b d\ncoherence full\n",
    );
    let h = file(&dir, "h.cig", "vertex a\nvertex b\nedge h1 a b\n");
    let o = cig(&["exec", path(&g), path(&h)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverges"));
    assert_eq!(code(&cig(&["exec", "--simple", path(&g), path(&h)])), 0);
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.cig", "edge e a b\n");
    let o = cig(&["normalize", path(&g)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(code(&cig(&["normalize", "/nonexistent/x.cig"])), 2);
    assert_eq!(code(&cig(&["frobnicate"])), 2);
}

#[test]
fn cut_between_matchings() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.cig", "vertex a\nvertex b\nvertex c\nvertex d\nedge x a b\nedge y c d\n");
    let n = file(&dir, "n.cig", "vertex b\nvertex c\nedge z b c\n");
    let o = cig(&["cut", path(&m), path(&n), "--shared", "b,c"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "vertex a\nvertex d\nedge a>d a d\nedge d>a d a\n");

    let loop_ = file(&dir, "l.cig", "vertex b\nvertex c\nedge w c b\n");
    let two = file(&dir, "t.cig", "vertex b\nvertex c\nedge z b c\n");
    let o = cig(&["cut", path(&two), path(&loop_), "--shared", "b,c"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("cycle through the cut"));
}

#[test]
fn normalize_and_rename() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.cig", "vertex a\nvertex b\nedge e a b\nedge f b a\ncoh e f\n");
    let o = cig(&["normalize", path(&g)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("\nedge ").count(), 2);
    assert_eq!(stdout(&o).matches("\ncoh ").count(), 1);

    let o = cig(&["rename", path(&g), "--map", "a=p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "vertex b\nvertex p\nedge e p b\nedge f b p\ncoh e f\n");
    assert_eq!(code(&cig(&["rename", path(&g), "--map", "q=p"])), 2);
}

#[test]
fn small_selftest() {
    let o = cig(&["selftest", "--cases", "5", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("11/11 suites passed (seed 3, 5 cases)"));
}
