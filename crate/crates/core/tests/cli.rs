use std::path::Path;
use std::process::{Command, Output};

use gabriel_lab::cli::FailureRecord;
use gabriel_lab::inequalities::InequalityReport;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gabriel-lab"))
        .args(args)
        .env_remove("GABRIEL_LAB_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_random_suite() {
    let out = lab(&["verify", "--theorem", "main", "--p", "2", "--random-polys", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Vec<InequalityReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 50 * 14);
    assert!(reports.iter().all(|r| r.pass == Some(true)));
}

#[test]
fn csv_is_byte_identical_across_runs_and_job_counts() {
    let args = [
        "sweep",
        "--theorem",
        "small_p,kalaj",
        "--p-grid",
        "0.5,1.5",
        "--random-polys",
        "3",
        "--seed",
        "11",
        "--format",
        "csv",
    ];
    let a = lab(&args);
    let b = lab(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("theorem_id,p,curve,lhs,rhs,ratio,slack,pass\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 14 + 3);
}

#[test]
fn blowup_csv() {
    let out = lab(&["blowup", "--p-grid", "0.9,0.95,0.99"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let ratios: Vec<f64> =
        text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(ratios.len(), 3);
    assert!((ratios[0] - 1.441).abs() < 0.01 && (ratios[2] - 15.68).abs() < 0.1);
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn catalog_and_usage_errors() {
    let out = lab(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let cat: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(cat["functions"].as_array().unwrap().iter().any(|f| f["name"] == "cayley_power"));

    assert_eq!(lab(&["verify", "--p", "2"]).status.code(), Some(64));
    assert_eq!(lab(&["verify", "--theorem", "main", "--p", "0.5"]).status.code(), Some(64));
    assert_eq!(lab(&["verify", "--theorem", "nope"]).status.code(), Some(64));
    assert_eq!(
        lab(&["verify", "--theorem", "main", "--curve", "{\"variant\":\"circle\"}"]).status.code(),
        Some(64)
    );
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gabriel-lab"))
        .args(["verify", "--theorem", "kalaj", "--p", "3", "--random-polys", "1"])
        .env("GABRIEL_LAB_TOL", "garbage")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn job_files_outputs_and_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    let out = dir.path().join("reports.json");
    let spec = serde_json::json!({
        "command": "verify",
        "theorems": ["gabriel"],
        "ps": [1.0],
        "functions": [{"kind": "named", "name": "monomial", "params": {"k": 4, "part": "analytic"}}],
        "curves": [{"variant": "segment", "a": [-1.0, 0.0], "b": [1.0, 0.0]}],
        "out": out,
    });
    write(&job, &spec.to_string());
    let res = lab(&["verify", "--job", job.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let reports: Vec<InequalityReport> =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(reports.len(), 1);

    // flags win over the job file: frazer on a non-circle is a usage error
    let res = lab(&["verify", "--job", job.to_str().unwrap(), "--theorem", "frazer"]);
    assert_eq!(res.status.code(), Some(64));

    // a failing report: exit 1 and a record next to the output
    let mut failing = reports[0].clone();
    failing.verdict = gabriel_lab::inequalities::Verdict::Fail;
    failing.pass = Some(false);
    let saved = dir.path().join("saved.json");
    write(&saved, &serde_json::to_string(&vec![reports[0].clone(), failing]).unwrap());
    let reemit = dir.path().join("reemit.csv");
    let res = lab(&[
        "report",
        "--input",
        saved.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        reemit.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(1));
    assert_eq!(std::fs::read_to_string(&reemit).unwrap().lines().count(), 3);
    let records: Vec<FailureRecord> = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("reemit.counterexamples.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].version, gabriel_lab::VERSION);
    assert!(records[0].report.function().is_some());
}
