use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tiedbracket"))
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn unknot_is_one() {
    let o = run(&["bracket", &data("unknot.txt")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn trefoil_matches_kauffman() {
    let o = run(&["bracket", &data("trefoil.txt"), "--method", "closed"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-A^5 - A^-3 + A^-7\n");
}

#[test]
fn both_methods_agree_on_fixtures() {
    for f in ["hopf_2tied.txt", "three_strand_2tied.txt", "chain_3tied.txt"] {
        for s in ["canonical", "first", "seeded:7"] {
            let o = run(&["bracket", &data(f), "--method", "both", "--strategy", s]);
            assert!(o.status.success(), "{f} {s}");
            assert!(stdout(&o).ends_with("EQUAL\n"), "{f} {s}: {}", stdout(&o));
        }
    }
}

#[test]
fn hopf_from_stdin() {
    let mut child = bin()
        .args(["bracket", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read(data("hopf_2tied.txt")).unwrap().as_slice())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-A^4 - A^2 - A^-2 - A^-4 - c\n");
}

#[test]
fn four_colors_rejected_by_closed_form() {
    let o = run(&["bracket", &data("four_colors.txt"), "--method", "closed"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("closed form supports at most 3 colors"));
    // the recursive engine has no such limit
    assert!(run(&["bracket", &data("four_colors.txt")]).status.success());
}

#[test]
fn parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "braid 2 1 1\ncolors 1 q\n").unwrap();
    let o = run(&["bracket", path.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn count_rows_match() {
    for f in ["trefoil.txt", "hopf_2tied.txt", "three_strand_2tied.txt", "chain_3tied.txt"] {
        let o = run(&["count", &data(f)]);
        let out = stdout(&o);
        assert!(o.status.success(), "{f}: {out}");
        assert!(out.contains("MATCH"));
        assert!(!out.contains("MISMATCH"));
    }
    let out = stdout(&run(&["count", &data("chain_3tied.txt")]));
    assert!(out.contains("Γ7 leaves"));
    assert!(out.contains("complexity (4, 2)"));
}

#[test]
fn tree_is_dot() {
    let o = run(&["tree", &data("hopf_2tied.txt")]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert!(out.trim_end().ends_with('}'));
    assert_eq!(out.matches("shape=box").count(), 5);
    let cut = stdout(&run(&["tree", &data("chain_3tied.txt"), "--max-depth", "1"]));
    assert!(cut.contains("dashed"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--count", "6", "--seed", "3", "--max-m", "5"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    assert!(stdout(&a).trim_end().ends_with("ALL PASS"));
}

#[test]
fn verify_json_lines() {
    let o = run(&["verify", "--count", "2", "--max-m", "4", "--json"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn injected_fault_fails() {
    let o = run(&["verify", "--count", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn max_m_is_bounded() {
    assert!(!run(&["verify", "--max-m", "13"]).status.success());
}
