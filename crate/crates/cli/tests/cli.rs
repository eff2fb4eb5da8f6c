use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicsq"))
        .args(args)
        .env_remove("MAGICSQ_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn algebra_checks_and_exit_codes() {
    let o = run(&["algebra", "O", "--check", "alternative,composition"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("alternative: ok") && text.contains("composition: ok"));
    assert!(text.contains("derivations 14"));

    let o = run(&["algebra", "cd:++++", "--check", "composition"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("N(xy) != N(x)N(y) for x ="));

    let o = run(&["algebra", "R"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("+e0"));

    assert_eq!(run(&["algebra", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["algebra", "O", "--check", "nonsense"]).status.code(), Some(2));
}

#[test]
fn build_analyze_identify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let e8 = dir.path().join("e8m.json");
    let e8s = e8.to_str().unwrap();
    let o = run(&["build", "--k1", "O", "--k2", "Os", "--n", "3", "--labels", "{+}", "--out", e8s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 248"));

    let o = run(&["analyze", e8s, "--rank"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("jacobi ok"));
    assert!(text.contains("character -24"));
    assert!(text.contains("rank 8"));
    assert!(text.contains("candidates e8(-24)*"));

    let o = run(&["identify", e8s, "--format", "csv"]);
    assert_eq!(stdout(&o), "name,dim,character,designated\ne8(-24),248,-24,true\n");

    let json = stdout(&run(&["analyze", e8s, "--format", "structured"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["killing"]["character"], -24);
    assert_eq!(v["candidates"][0]["name"], "e8(-24)");

    // The file analyze reads is the canonical one build writes.
    let text = std::fs::read_to_string(&e8).unwrap();
    let lie = magic_core::liealg::from_json(&text).unwrap();
    assert_eq!(magic_core::liealg::to_json(&lie), text);
}

#[test]
fn build_errors() {
    let o = run(&["build", "--k1", "O", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("only for n = 3"));
    assert_eq!(run(&["build", "--k1", "Z", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--k1", "R", "--n", "3", "--labels", "{{4;1}}"]).status.code(), Some(2));
    let o = run(&["build", "--k1", "R", "--n", "4", "--labels", "{{4;1}}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 6"));
}

#[test]
fn analyze_flags_forced_builds() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    let fs = f.to_str().unwrap();
    assert_eq!(run(&["build", "--k1", "O", "--n", "2", "--force", "--out", fs]).status.code(), Some(0));
    let o = run(&["analyze", fs]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("jacobi VIOLATION"));
    assert_eq!(run(&["identify", fs]).status.code(), Some(1));

    std::fs::write(&f, "{not json").unwrap();
    assert_eq!(run(&["analyze", fs]).status.code(), Some(2));
}

#[test]
fn identify_by_invariants() {
    let o = run(&["identify", "--dim", "78", "--character", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("candidates e6(6)"));
    let o = run(&["identify", "--dim", "3", "--character", "-3"]);
    assert!(stdout(&o).contains("so(3) su(2) sq(1)"));
    assert_eq!(run(&["identify", "--dim", "77", "--character", "5"]).status.code(), Some(1));
}

#[test]
fn squares_match_golden_files() {
    let o = run(&["square", "--n", "3", "--grand", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("square_n3_grand.csv"));

    let o = run(&["square", "--n", "1", "--grand"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text, golden("square_n1_grand.txt"));
    assert!(text.contains("g2(-14)[14,-14]") && text.contains("g2(2)[14,2]"));
}

#[test]
fn exceptional_table() {
    let o = run(&["tables", "--id", "IV"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("tables_iv.txt"));
    assert_eq!(run(&["tables", "--id", "VI"]).status.code(), Some(2));
}

#[test]
fn config_threads_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("magicsq.toml");
    std::fs::write(&cfg, "format = \"csv\"\nseed = 3\n").unwrap();
    let a = run(&["--config", cfg.to_str().unwrap(), "square", "--n", "2", "--set", "mixed"]);
    assert!(stdout(&a).starts_with("k1,k2,n,labels"));
    let b = Command::new(env!("CARGO_BIN_EXE_magicsq"))
        .args(["--config", cfg.to_str().unwrap(), "square", "--n", "2", "--set", "mixed"])
        .env("MAGICSQ_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));

    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "square"]).status.code(), Some(2));
}
