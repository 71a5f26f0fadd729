use std::io::Write;
use std::process::{Command, Output, Stdio};

fn squares(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_squares"))
        .args(args)
        .env_remove("SQUARES_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_the_three_by_three_grid() {
    let o = squares(&["count"], "xxx/xxx/xxx\n");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("squares=6\n"));
    assert!(out.contains("rit=28\n"));
    assert!(out.contains("axis=5\n"));
    assert!(out.contains("rit_minus_3sq=10\n"));
}

#[test]
fn count_json_and_coordinates() {
    let o = squares(&["count", "--json"], "0,0\n1,0\n0,1\n1,1\n");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["squares"], 1);
    assert_eq!(v["rit"], 4);
}

#[test]
fn closing_square_is_not_realizable() {
    let oss = "n=10\n1 3 4 2\n2 5 9 8\n4 7 6 5\n3 6 8 10\n1 10 7 9\n";
    let o = squares(&["realize"], oss);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("realizable=false\n"));
    assert!(out.contains("free_dimension=2\n"));
    assert!(out.contains("certificate="));
}

#[test]
fn bounds_for_seventeen() {
    let out = stdout(&squares(&["bounds", "--n", "17"], ""));
    assert!(out.contains("square.eighth=36\n"));
    assert!(out.contains("square.pairs=68\n"));
    assert!(out.contains("square.exact=22\n"));
}

#[test]
fn ilp_to_file_and_bad_variant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("base5.lp");
    let o = squares(&["ilp", "--n", "5", "--out", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let lp = std::fs::read_to_string(&path).unwrap();
    assert!(lp.starts_with("\\ triangle bound program"));
    assert!(lp.ends_with("End\n"));
    assert_eq!(squares(&["ilp", "--n", "9", "--variant", "mod8"], "").status.code(), Some(2));
}

#[test]
fn corpus_verify_passes_and_flags_mismatches() {
    let o = squares(&["corpus-verify"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("records=349 failed=0\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "id=wrong\nfamily=square\nn=4\nexpected=2\ngrid:\nxx\nxx\n").unwrap();
    let o = squares(&["corpus-verify", "--corpus", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL\twrong"));
    std::fs::write(&path, "id=ragged\nfamily=square\nn=4\nexpected=1\ngrid:\nxx\nxxx\n").unwrap();
    let o = squares(&["corpus-verify", "--corpus", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_and_canon() {
    assert_eq!(stdout(&squares(&["render"], "0,0\n2,1\n")), "..x\nx..\n");
    let a = stdout(&squares(&["canon"], "xx/x.\n"));
    let b = stdout(&squares(&["canon"], "0,0\n4,2\n2,-4\n"));
    assert_eq!(a, b);
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let one = squares(&["--threads", "1", "enum", "--mode", "square-2ext", "--n-max", "9"], "");
    let two = squares(&["--threads", "2", "enum", "--mode", "square-2ext", "--n-max", "9"], "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    assert!(stdout(&one).contains("9\t6\t1\n"));
}

#[test]
fn beam_is_deterministic() {
    let a = squares(&["beam", "--mode", "square", "--width", "40", "--n", "9", "--witnesses"], "");
    let b = squares(&["--threads", "2", "beam", "--mode", "square", "--width", "40", "--n", "9", "--witnesses"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("9\t6\tbeam-square-9\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(squares(&["enum", "--mode", "cubes", "--n-max", "5"], "").status.code(), Some(2));
    assert_eq!(squares(&["count"], "1,2,3\n").status.code(), Some(2));
    assert_eq!(squares(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(squares(&["beam", "--mode", "rit", "--width", "0", "--n", "5"], "").status.code(), Some(2));
}
