use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trackline")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const T1: &str = "1,1,1,0,2,0,0,0,0";
const RED: &str = "2,0,2,4,0,2,3,3,0";

#[test]
fn trefoil_report_layout() {
    let out = stdout(&run(&["analyze", fixture("trefoil.txt").to_str().unwrap()]));
    assert!(out.starts_with("Group presentation:\n\n  c  d : ccc-d-d\n\nJobname: trefoil\n"));
    assert!(out.contains("Triangular 2-complex comprises: 1 0-cells, 4 1-cells and 3 2-cells."));
    assert!(out.contains("Track basis (size 4 x 9)"));
    assert!(out.contains("The track (1, 1, 1, 1, 1, 1, 1, 1, 1)  is untwisted and separating"));
    assert!(out.contains("prune list of"));
}

#[test]
fn higman_report_layout() {
    let out = stdout(&run(&["analyze", fixture("higman4.txt").to_str().unwrap(), "--jobname", "higman"]));
    assert!(out.contains("Jobname: higman"));
    assert!(out.contains("Triangular 2-complex comprises: 1 0-cells, 12 1-cells and 12 2-cells."));
    assert!(out.contains("Track basis (size 12 x 36)"));
    assert!(out.contains("check track basis element 11"));
    assert!(out.contains("Gives a trivial decomposition."));
}

#[test]
fn free_group_has_no_tracks() {
    let out = stdout(&run(&["analyze", fixture("free.txt").to_str().unwrap()]));
    assert!(out.contains("The solution space has rank 0 and gives no tracks."));
}

#[test]
fn json_round_trip_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["trefoil.txt", "higman4.txt", "free.txt"] {
        let json = dir.path().join(format!("{name}.json"));
        let direct = stdout(&run(&["analyze", fixture(name).to_str().unwrap(), "--json", json.to_str().unwrap()]));
        let again = stdout(&run(&["report", json.to_str().unwrap()]));
        assert_eq!(direct, again, "{name}");
        let exported = dir.path().join("export.json");
        stdout(&run(&["export", fixture(name).to_str().unwrap(), "--json", exported.to_str().unwrap()]));
        assert_eq!(std::fs::read(&json).unwrap(), std::fs::read(&exported).unwrap());
    }
}

#[test]
fn structured_input_matches_text_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.txt");
    std::fs::write(&path, "gens c d\nrel c c c -d -d\n").unwrap();
    let a = stdout(&run(&["analyze", path.to_str().unwrap()]));
    let b = stdout(&run(&["analyze", fixture("trefoil.txt").to_str().unwrap()]));
    assert_eq!(a, b);
}

#[test]
fn trefoil_cubing_dump() {
    let f = fixture("trefoil.txt");
    let out = stdout(&run(&["cubing", f.to_str().unwrap(), "--vector", T1, "--vector", RED, "--coeffs", "2,3"]));
    assert!(out.contains("Vertices: 10"));
    assert!(out.contains("Edges: 22"));
    assert!(out.contains("Squares: 12"));
    assert!(out.contains("Euler characteristic: 0"));
    assert!(out.contains("edge counts (2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3)"));
    assert!(!out.contains("Resolved pattern"), "same-sign combinations need no resolution");
}

#[test]
fn ordering_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let ordering = dir.path().join("order.txt");
    // edges c and a carry points of both tracks
    std::fs::write(&ordering, "c: 1 0 1 0\na: 1 0 1 1 0 1\n").unwrap();
    let f = fixture("trefoil.txt");
    let with = run(&["cubing", f.to_str().unwrap(), "--vector", T1, "--vector", RED, "--ordering", ordering.to_str().unwrap()]);
    let without = run(&["cubing", f.to_str().unwrap(), "--vector", T1, "--vector", RED]);
    assert!(with.status.success(), "{}", String::from_utf8_lossy(&with.stderr));
    assert_ne!(stdout(&with), stdout(&without));
    std::fs::write(&ordering, "c: 0 0 0\n").unwrap();
    let bad = run(&["cubing", f.to_str().unwrap(), "--vector", T1, "--vector", RED, "--ordering", ordering.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let f = fixture("trefoil.txt");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["analyze", "/nonexistent/input.txt"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "a b : a?b\n").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    // basis element 1 of the trefoil is twisted
    assert_eq!(run(&["cubing", f, "--tracks", "0,1"]).status.code(), Some(4));
    assert_eq!(run(&["cubing", f, "--vector", T1, "--vector", RED, "--coeffs", "2,-3"]).status.code(), Some(5));
    let unwritable = dir.path().join("missing/dir/out.json");
    assert_eq!(run(&["export", f, "--json", unwritable.to_str().unwrap()]).status.code(), Some(6));
    let stderr = String::from_utf8(run(&["analyze", "/nonexistent/input.txt"]).stderr).unwrap();
    assert!(stderr.starts_with("trackline: "));
}
