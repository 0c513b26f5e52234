//! End-to-end checks of the command-line interface: file formats, report
//! fields, and the exit-code contract.

use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_avgdepth")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exact_reports_fractions_with_ambient_denominator() {
    let dir = tempfile::tempdir().unwrap();
    let xor4 = dir.path().join("xor4.txt");
    let out = run(&[
        "construct",
        "named",
        "--kind",
        "xor",
        "--n",
        "4",
        "--out",
        xor4.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let report = stdout_json(&run(&["exact", xor4.to_str().unwrap()]));
    assert_eq!(report["dave"]["fraction"], "64/16");
    assert_eq!(report["dave"]["decimal"], "4.00000000000");
    assert_eq!(report["depth"], 4);

    let pso2 = dir.path().join("pso2.txt");
    run(&["construct", "pso", "--rounds", "2", "--out", pso2.to_str().unwrap()]);
    let report = stdout_json(&run(&["exact", pso2.to_str().unwrap()]));
    assert_eq!(report["dave"]["fraction"], "104/32");
    assert_eq!(report["depth"], 5);
}

#[test]
fn malformed_table_exits_2_and_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0101").unwrap();
    let out = run(&["exact", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");

    let missing = dir.path().join("nyet.txt");
    let out = run(&["exact", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dp_limit_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("big.txt");
    run(&["construct", "named", "--kind", "xor", "--n", "9", "--out", f.to_str().unwrap()]);
    let out = run(&["--dp-limit", "8", "exact", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn strategy_bounds_and_precondition_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sample.txt");
    run(&["--seed", "5", "sample", "--n", "12", "--m", "16", "--out", table.to_str().unwrap()]);

    let report = stdout_json(&run(&["strategy", table.to_str().unwrap(), "--name", "naive"]));
    assert_eq!(report["bound"]["value"], 6.0);
    assert_eq!(report["verdict"], "pass");

    // Weight 16 >= log2(12), so the correlated-pair hypothesis fails.
    let out = run(&["strategy", table.to_str().unwrap(), "--name", "ecs"]);
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("wt(f) < log"), "stderr: {stderr}");

    let report = stdout_json(&run(&["strategy", table.to_str().unwrap(), "--name", "partition"]));
    assert_eq!(report["bound"]["value"], 40.0);

    let report = stdout_json(&run(&[
        "strategy",
        table.to_str().unwrap(),
        "--name",
        "restriction:1/4",
        "--mode",
        "mc:500",
    ]));
    assert_eq!(report["cost"]["mode"], "monte_carlo");
}

#[test]
fn parity_subcommand_checks_paths_and_radii() {
    let dir = tempfile::tempdir().unwrap();
    let xor3 = dir.path().join("xor3.txt");
    run(&["construct", "named", "--kind", "xor", "--n", "3", "--out", xor3.to_str().unwrap()]);

    let report = stdout_json(&run(&[
        "parity",
        xor3.to_str().unwrap(),
        "--path",
        "2=1",
        "--delta",
        "0",
    ]));
    assert_eq!(report["parity"], true);

    let report = stdout_json(&run(&[
        "parity",
        xor3.to_str().unwrap(),
        "--t",
        "2",
        "--delta",
        "0",
    ]));
    assert_eq!(report["parity"], true);

    let and2 = dir.path().join("and2.txt");
    run(&["construct", "named", "--kind", "and", "--n", "2", "--out", and2.to_str().unwrap()]);
    let report = stdout_json(&run(&[
        "parity",
        and2.to_str().unwrap(),
        "--t",
        "1",
        "--delta",
        "1/2",
    ]));
    assert_eq!(report["parity"], false);
}

#[test]
fn construct_writes_formula_files_that_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let dnf = dir.path().join("hard.dnf");
    let report = stdout_json(&run(&[
        "construct",
        "theorem13",
        "--n",
        "16",
        "--w",
        "8",
        "--candidates",
        "4",
        "--dnf-out",
        dnf.to_str().unwrap(),
    ]));
    assert_eq!(report["m"], 8);
    assert_eq!(report["h"], 2);
    let text = std::fs::read_to_string(&dnf).unwrap();
    let formula = avgdepth::dnf::DnfFormula::parse_file(&text).unwrap();
    assert_eq!(formula.size(), 16);
    assert_eq!(formula.width(), 8);
}

#[test]
fn bounds_calculators() {
    let report = stdout_json(&run(&["bounds", "critical", "--n", "16", "--lambda", "4"]));
    assert_eq!(report["value"], 16.0);
    let report = stdout_json(&run(&["bounds", "width", "--n", "16", "--w", "4"]));
    assert_eq!(report["value"], 12.0);
    let out = run(&["bounds", "circuit", "--n", "16", "--d", "1", "--s", "8"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn experiment_reports_have_the_fixed_schema() {
    let out = run(&["--seed", "3", "experiment", "pso-table", "n=0..2"]);
    let report = stdout_json(&out);
    for key in ["schema", "experiment", "params", "seed", "trials", "statistics", "bound", "verdict"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["schema"], 1);
    assert_eq!(report["verdict"], "pass");

    let out = run(&["experiment", "pso-table", "n=0..2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mut sorted = header.clone();
    sorted.sort_unstable();
    assert_eq!(header, sorted, "CSV columns sorted");
    assert_eq!(lines.count(), 1);
}

#[test]
fn unknown_experiment_exits_5() {
    let out = run(&["experiment", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn sample_tables_parse_back_with_exact_weight() {
    let out = run(&["--seed", "9", "sample", "--n", "10", "--m", "77"]);
    assert!(out.status.success());
    let table =
        avgdepth::TruthTable::parse_text(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(table.n(), 10);
    assert_eq!(table.weight(), 77);

    // Same seed, same bytes.
    let again = run(&["--seed", "9", "sample", "--n", "10", "--m", "77"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn criticality_subcommand_reports_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let xor8 = dir.path().join("xor8.txt");
    run(&["construct", "named", "--kind", "xor", "--n", "8", "--out", xor8.to_str().unwrap()]);
    let report = stdout_json(&run(&[
        "criticality",
        xor8.to_str().unwrap(),
        "--grid",
        "1/2,1/4,1/8,1/16,1/32,1/64,1/128,1/256",
    ]));
    let lambda = report["lambda"].as_f64().unwrap();
    assert!(lambda > 7.5 && lambda < 8.5, "lambda = {lambda}");
}
