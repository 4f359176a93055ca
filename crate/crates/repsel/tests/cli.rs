//! End-to-end checks of the `repsel` binary: exit codes, file outputs,
//! and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn repsel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repsel"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn gen_toy(dir: &Path, n: u32, seed: u64, name: &str) {
    let out = repsel(
        dir,
        &[
            "gen-toy",
            "--n",
            &n.to_string(),
            "--seed",
            &seed.to_string(),
            "--out",
            name,
        ],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
}

#[test]
fn gen_toy_is_byte_identical_and_oracle_consistent() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 100, 1, "a.csv");
    gen_toy(dir.path(), 100, 1, "b.csv");
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);

    let content = String::from_utf8(a).unwrap();
    let mut lines = content.lines();
    assert_eq!(lines.next(), Some("x1,x2,y"));
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 3);
        let x1: f64 = cells[0].parse().unwrap();
        let x2: f64 = cells[1].parse().unwrap();
        let expected = if x1 * x1 - x1 * x2 - x1 - 3.0 > 0.0 { "1" } else { "0" };
        assert_eq!(cells[2], expected, "label mismatch at {line}");
        rows += 1;
    }
    assert_eq!(rows, 100);
}

#[test]
fn gen_toy_rejects_tiny_n() {
    let dir = tempfile::tempdir().unwrap();
    let out = repsel(dir.path(), &["gen-toy", "--n", "1", "--out", "x.csv"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn select_writes_ids_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 100, 1, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "select", "--input", "toy.csv", "--label-col", "y", "--ratio", "0.2", "--method",
            "spnn", "--seed", "7",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));

    let ids = std::fs::read_to_string(dir.path().join("ids.csv")).unwrap();
    assert_eq!(ids.lines().count(), 21); // header + 20 ids
    assert_eq!(ids.lines().next(), Some("row_id"));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["method"], "spnn");
    assert_eq!(report["nv"], 20);

    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("ids.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "select");
    assert_eq!(manifest["seed"], 7);
    assert!(manifest["input_digest"].as_str().unwrap().len() == 64);
}

#[test]
fn select_rejects_ratio_nv_conflict() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 50, 1, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "select", "--input", "toy.csv", "--label-col", "y", "--ratio", "0.2", "--nv", "10",
        ],
    );
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn select_requires_a_size_and_label_col() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 50, 1, "toy.csv");
    let out = repsel(dir.path(), &["select", "--input", "toy.csv", "--label-col", "y"]);
    assert_eq!(exit_code(&out), 2); // neither --ratio nor --nv
    let out = repsel(dir.path(), &["select", "--input", "toy.csv", "--ratio", "0.2"]);
    assert_eq!(exit_code(&out), 2); // missing --label-col
}

#[test]
fn select_maps_data_problems_to_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 50, 1, "toy.csv");
    // unknown label column
    let out = repsel(
        dir.path(),
        &["select", "--input", "toy.csv", "--label-col", "label", "--ratio", "0.2"],
    );
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("label"));

    // non-numeric feature cell names row and column
    std::fs::write(dir.path().join("bad.csv"), "a,b,y\n1,2,0\n1,oops,1\n2,3,0\n").unwrap();
    let out = repsel(
        dir.path(),
        &["select", "--input", "bad.csv", "--label-col", "y", "--ratio", "0.5"],
    );
    assert_eq!(exit_code(&out), 3);
    let msg = stderr(&out);
    assert!(msg.contains("row 3") && msg.contains('b'), "{msg}");

    // missing input file
    let out = repsel(
        dir.path(),
        &["select", "--input", "nope.csv", "--label-col", "y", "--ratio", "0.5"],
    );
    assert_eq!(exit_code(&out), 3);
}

fn write_separable(dir: &Path) {
    let mut csv = String::from("x,y\n");
    for i in 0..10 {
        csv.push_str(&format!("{},0\n", -1.0 - 0.1 * f64::from(i)));
        csv.push_str(&format!("{},1\n", 1.0 + 0.1 * f64::from(i)));
    }
    std::fs::write(dir.join("sep.csv"), csv).unwrap();
}

#[test]
fn evaluate_separable_split_reports_zero_error() {
    let dir = tempfile::tempdir().unwrap();
    write_separable(dir.path());
    std::fs::write(dir.path().join("ids.csv"), "row_id\n0\n1\n2\n3\n").unwrap();
    let out = repsel(
        dir.path(),
        &["evaluate", "--input", "sep.csv", "--label-col", "y", "--ids", "ids.csv"],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metrics.json")).unwrap())
            .unwrap();
    assert_eq!(metrics["validation"]["eps"], 0.0);
    assert_eq!(metrics["loo_train"]["eps"], 0.0);
    assert_eq!(metrics["validation"]["source"], "validation");
    assert_eq!(metrics["loo_train"]["source"], "loo-train");
}

#[test]
fn evaluate_rejects_bad_id_files() {
    let dir = tempfile::tempdir().unwrap();
    write_separable(dir.path());
    std::fs::write(dir.path().join("dup.csv"), "row_id\n0\n0\n").unwrap();
    let out = repsel(
        dir.path(),
        &["evaluate", "--input", "sep.csv", "--label-col", "y", "--ids", "dup.csv"],
    );
    assert_eq!(exit_code(&out), 3);

    std::fs::write(dir.path().join("unknown.csv"), "row_id\n999\n").unwrap();
    let out = repsel(
        dir.path(),
        &["evaluate", "--input", "sep.csv", "--label-col", "y", "--ids", "unknown.csv"],
    );
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn evaluate_metrics_stay_in_unit_interval_on_spnn_split() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 80, 3, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "select", "--input", "toy.csv", "--label-col", "y", "--ratio", "0.25", "--seed", "2",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let out = repsel(
        dir.path(),
        &["evaluate", "--input", "toy.csv", "--label-col", "y", "--ids", "ids.csv"],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metrics.json")).unwrap())
            .unwrap();
    for block in ["validation", "loo_train"] {
        let eps = metrics[block]["eps"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&eps));
        if let Some(tau) = metrics[block]["tau"].as_f64() {
            assert!((0.0..=1.0).contains(&tau));
        }
    }
}

#[test]
fn compare_rejects_too_few_replicates() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 60, 1, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "compare", "--input", "toy.csv", "--label-col", "y", "--replicates", "5",
        ],
    );
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn compare_emits_table_with_constant_reference() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 60, 5, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "compare",
            "--input",
            "toy.csv",
            "--label-col",
            "y",
            "--ratios",
            "0.2,0.4",
            "--replicates",
            "20",
            "--seed",
            "3",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let table = std::fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("ratio,nv,eps_ref,tau_ref,eps_spnn_val"));
    let row1: Vec<&str> = lines[1].split(',').collect();
    let row2: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(row1[2], row2[2], "eps_ref must not vary with ratio");
    assert_eq!(row1[3], row2[3], "tau_ref must not vary with ratio");
    assert!(dir.path().join("compare.csv.manifest.json").exists());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 60, 5, "toy.csv");
    let args = [
        "compare", "--input", "toy.csv", "--label-col", "y", "--ratios", "0.25",
        "--replicates", "20", "--seed", "3", "--out",
    ];
    for (threads, out_name) in [("1", "one.csv"), ("4", "four.csv")] {
        let out = Command::new(env!("CARGO_BIN_EXE_repsel"))
            .args(args)
            .arg(out_name)
            .env("REPSEL_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    }
    let one = std::fs::read(dir.path().join("one.csv")).unwrap();
    let four = std::fs::read(dir.path().join("four.csv")).unwrap();
    assert_eq!(one, four);
}

#[test]
fn bad_ratio_list_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    gen_toy(dir.path(), 60, 1, "toy.csv");
    let out = repsel(
        dir.path(),
        &[
            "compare", "--input", "toy.csv", "--label-col", "y", "--ratios", "0.2,2.5",
            "--replicates", "20",
        ],
    );
    assert_eq!(exit_code(&out), 2);
}
