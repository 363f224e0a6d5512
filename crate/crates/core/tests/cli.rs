use std::process::{Command, Output};

use quiver_motive::record::MotiveRecord;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiver-motive"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn motive_examples() {
    let o = run(&["motive", "--quiver", "jordan", "--v", "1", "--w", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("L^2"));
    let o = run(&["motive", "--quiver", "single", "--v", "1", "--w", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("L^2 + L"));
}

#[test]
fn missing_framing_is_a_usage_error() {
    let o = run(&["motive", "--quiver", "jordan", "--v", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["motive", "--quiver", "jordan", "--v", "1,2", "--w", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["motive", "--quiver", "/nonexistent/quiver.json", "--v", "1", "--w", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quiver_file_input() {
    let dir = std::env::temp_dir().join(format!("quiver-motive-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, r#"{"vertices": 2, "edges": [[0, 1]], "w": [1, 0], "v": [1, 1]}"#).unwrap();
    let o = run(&["motive", "--quiver", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"vertices": 2, "edges": [[0, 5]]}"#).unwrap();
    let o = run(&["motive", "--quiver", bad.to_str().unwrap(), "--v", "1,1", "--w", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges[0]"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn series_rows() {
    let o = run(&["series", "--quiver", "jordan", "--w", "1", "--max-degree", "2"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    // two points on the plane: L^3 + L^4
    assert!(out.lines().last().unwrap().ends_with("L^4 + L^3"));
    let o = run(&["series", "--quiver", "jordan", "--w", "1", "--max-degree", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).trim_end().ends_with(" 1"));
}

#[test]
fn records_reparse() {
    let o = run(&[
        "series",
        "--quiver",
        "a2",
        "--w",
        "2,1",
        "--max-degree",
        "4",
        "--format",
        "records",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 15);
    for line in out.lines() {
        let rec = MotiveRecord::parse_line(line).unwrap();
        assert_eq!(rec.to_line(), line);
    }
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "centralizer", "--q", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("11 passed, 0 flagged, 0 skipped, 0 failed"));
    let o = run(&["verify", "harmonic", "--q", "2,3,5"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() > 0);
    assert!(!stdout(&o).contains("FAIL "));
    let o = run(&["verify", "ffcount", "--quiver", "jordan", "--q", "2,3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS ffcount      v=(1) w=(1) q=3 alpha=1"));
    assert!(out.contains("fiber count 18"));
    // the v = 2 case at q = 2 has non-free points and is flagged, not failed
    assert!(out.contains("FLAG ffcount      v=(2) w=(1) q=2"));
    let o = run(&["verify", "ffcount", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_budget_skips() {
    let o = run(&["verify", "ffcount", "--quiver", "jordan", "--v", "2", "--w", "1", "--q", "5", "--budget", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("SKIP"));
}

#[test]
fn selftest_runs() {
    let o = run(&["selftest", "--fast"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["selftest", "--fast", "--inject-fault", "pairing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("pairing"));
}
