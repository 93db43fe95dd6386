use std::process::{Command, Output};

use mtsp_bench::PlanRecord;

fn mtsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtsp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_a_plan_record() {
    let o = mtsp(&["solve", "--instance", "garn9", "--m", "2", "--algorithm", "nearest"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: PlanRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec.routes[0], vec![1, 6, 7, 8, 9, 1]);
    assert!((rec.total_distance - 44.8).abs() < 0.05);
    assert!(rec.status.is_none());
}

#[test]
fn solve_exact_reports_status() {
    let o = mtsp(&["solve-exact", "--instance", "garn9", "--m", "2", "--K", "2", "--L", "5", "--time-limit", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.contains("\"status\":\"Optimal\""), "{line}");
    let rec: PlanRecord = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(rec.lower_bound, Some(rec.total_distance));
    let o = mtsp(&["solve", "--instance", "garn9", "--m", "2", "--algorithm", "oracle", "--K", "4", "--L", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(mtsp(&["solve-exact", "--instance", "garn9", "--m", "4", "--K", "3", "--L", "3"]).status.code(), Some(2));
    assert_eq!(mtsp(&["solve", "--instance", "garn9", "--m", "9"]).status.code(), Some(2));
    assert_eq!(mtsp(&["solve", "--instance", "no-such-instance", "--m", "2"]).status.code(), Some(1));
    assert_eq!(mtsp(&["solve", "--instance", "garn9"]).status.code(), Some(1));
    assert_eq!(mtsp(&["solve", "--instance", "garn9", "--m", "2", "--K", "2"]).status.code(), Some(1));
    assert_eq!(mtsp(&["solve-exact", "--instance", "garn9", "--m", "2", "--K", "2", "--L", "5", "--time-limit", "0"]).status.code(), Some(1));
    assert_eq!(mtsp(&["simulate", "--domain", "hexagon"]).status.code(), Some(1));
    assert_eq!(mtsp(&["--help"]).status.code(), Some(0));
}

#[test]
fn generated_files_can_be_solved() {
    let dir = tempfile::tempdir().unwrap();
    for (format, file) in [("tsplib", "g.tsp"), ("csv", "g.csv")] {
        let path = dir.path().join(file);
        let p = path.to_str().unwrap();
        let o = mtsp(&["generate", "--n", "12", "--seed", "5", "--format", format, "--out", p]);
        assert_eq!(o.status.code(), Some(0));
        let o = mtsp(&["solve", "--instance", p, "--m", "3", "--algorithm", "closest"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let rec: PlanRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(rec.n, 12);
    }
}

#[test]
fn compare_table() {
    let o = mtsp(&["compare", "--instance", "garn9,eil51", "--m", "2", "--algorithms", "nearest,closest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,n,m,nearest,closest,gap_nearest_closest"));
    assert!(lines.nth(1).unwrap().starts_with("eil51,51,2,533.9"));
}

#[test]
fn experiment_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = ["experiment", "--sizes", "30,60", "--m", "2-3", "--samples", "3", "--seed", "9", "--out"];
        let mut full: Vec<&str> = args.to_vec();
        full.push(path.to_str().unwrap());
        assert_eq!(mtsp(&full).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert!(String::from_utf8(a).unwrap().starts_with("t,m,algorithm,mean,std,samples\n"));
}

#[test]
fn law_and_simulate() {
    let o = mtsp(&["law"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 121);
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.csv");
    let o = mtsp(&["simulate", "--kind", "pair", "--reps", "5000", "--domain", "rect:3x4", "--out", hist.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["reps"], 5000);
    let csv = std::fs::read_to_string(hist).unwrap();
    assert!(csv.starts_with("bin_lo,bin_hi,count\n"));
    assert_eq!(csv.lines().count(), 101);
}
