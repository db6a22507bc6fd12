//! End-to-end tests of the `wfdr` binary: exit codes, file outputs and
//! reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wfdr_core::{generate_batch, GaussianComponent, GroupSpec, MixtureModel, WeightScheme};

fn wfdr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wfdr"))
}

fn run(args: &[&str]) -> Output {
    wfdr().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn demo_ranking_reverses_with_level() {
    let low = run(&["demo-ranking", "--alpha", "0.01"]);
    assert_eq!(code(&low), 0);
    let text = stdout(&low);
    assert!(text.contains("order: A first"), "{text}");
    assert!(text.contains("725.4"), "{text}");
    assert!(text.contains("250.9"), "{text}");

    let high = run(&["demo-ranking", "--alpha", "0.05"]);
    let text = stdout(&high);
    assert!(text.contains("order: B first"), "{text}");
    assert!(text.contains("1193.4") || text.contains("1193.5"), "{text}");
    assert!(text.contains("2258.5") || text.contains("2258.6"), "{text}");
}

#[test]
fn unknown_flags_and_missing_out_exit_2() {
    assert_eq!(code(&run(&["demo-ranking", "--bogus"])), 2);
    assert_eq!(code(&run(&["simulate", "--builtin", "study2"])), 2, "missing --out");
    assert_eq!(code(&run(&["simulate", "--out", "/tmp/x"])), 2, "missing source");
    let both = run(&[
        "simulate",
        "--builtin",
        "study2",
        "--config",
        "/tmp/c.json",
        "--out",
        "/tmp/x",
    ]);
    assert_eq!(code(&both), 2, "--config conflicts with --builtin");
}

#[test]
fn unknown_builtin_and_bad_config_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    let bad = run(&[
        "simulate",
        "--builtin",
        "study99",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&bad), 2);

    let config_path = dir.path().join("broken.json");
    std::fs::write(&config_path, "{ not json").unwrap();
    let broken = run(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&broken), 2);
}

#[test]
fn simulate_builtin_writes_deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("run1");
    let out2 = dir.path().join("run2");
    for out in [&out1, &out2] {
        let output = run(&[
            "simulate",
            "--builtin",
            "appendixA-demo",
            "--out",
            out.to_str().unwrap(),
            "--reps",
            "3",
            "--seed",
            "99",
            "--threads",
            "2",
        ]);
        assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    }
    let csv1 = std::fs::read_to_string(out1.join("appendixA-demo.csv")).unwrap();
    let csv2 = std::fs::read_to_string(out2.join("appendixA-demo.csv")).unwrap();
    assert_eq!(csv1, csv2, "same seed must give identical bytes");
    assert!(csv1.starts_with(
        "sweep_param,sweep_value,procedure,wfdr_bh,wfdr_ratio,etp,etp_unweighted,se_wfdr,se_etp,reps"
    ));
    assert_eq!(csv1.lines().count(), 3, "header + one row per procedure");

    // Serial run reproduces the parallel bytes.
    let out3 = dir.path().join("run3");
    let output = run(&[
        "simulate",
        "--builtin",
        "appendixA-demo",
        "--out",
        out3.to_str().unwrap(),
        "--reps",
        "3",
        "--seed",
        "99",
        "--threads",
        "1",
    ]);
    assert_eq!(code(&output), 0);
    let csv3 = std::fs::read_to_string(out3.join("appendixA-demo.csv")).unwrap();
    assert_eq!(csv1, csv3);

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out1.join("appendixA-demo.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["masterSeed"], 99);
    assert_eq!(manifest["reps"], 3);
    assert!(manifest["wallTimeSeconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(manifest["config"]["name"], "appendixA-demo");
}

#[test]
fn simulate_single_rep_has_zero_standard_errors() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "simulate",
        "--builtin",
        "appendixA-demo",
        "--out",
        dir.path().to_str().unwrap(),
        "--reps",
        "1",
    ]);
    assert_eq!(code(&output), 0);
    let csv = std::fs::read_to_string(dir.path().join("appendixA-demo.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[7], "0", "se_wfdr must be 0 for one rep: {line}");
        assert_eq!(fields[8], "0", "se_etp must be 0 for one rep: {line}");
        assert_eq!(fields[9], "1");
    }
}

#[test]
fn simulate_study2_shape_single_rep() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "simulate",
        "--builtin",
        "study2",
        "--out",
        dir.path().to_str().unwrap(),
        "--reps",
        "1",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let csv = std::fs::read_to_string(dir.path().join("study2.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 45, "header + 11 signal values x 4 procedures");
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "non-null-mean");
        assert_eq!(fields[7], "0", "se_wfdr is 0 at one rep");
        assert_eq!(fields[8], "0", "se_etp is 0 at one rep");
    }
}

#[test]
fn analyze_rejects_nothing_on_pure_noise() {
    let dir = tempfile::tempdir().unwrap();
    let model = MixtureModel::single(
        200,
        0.0,
        GaussianComponent::standard(),
        GaussianComponent { mean: 2.0, sd: 1.0 },
    )
    .unwrap();
    let batch = generate_batch(&model, &WeightScheme::unit(), 3).unwrap();
    let mut text = String::from("x\n");
    for x in &batch.x {
        text.push_str(&format!("{x}\n"));
    }
    let input = dir.path().join("noise.csv");
    std::fs::write(&input, text).unwrap();
    let out = dir.path().join("noise-out.csv");
    let output = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    let summary: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("noise-out.summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["numRejected"], 0);
}

#[test]
fn simulate_runtime_failure_exits_3_naming_the_replication() {
    // Estimation on a group below the floor only fails inside a
    // replication, which is a runtime failure for `simulate`.
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "name": "too-small",
        "model": { "groups": [
            { "size": 20, "nonNullProportion": 0.2,
              "null": { "mean": 0.0, "sd": 1.0 },
              "nonNull": { "mean": 2.0, "sd": 1.0 } }
        ]},
        "weights": { "kind": "constant", "a": 1.0, "b": 1.0 },
        "alpha": 0.1,
        "procedures": ["dd"],
        "reps": 2,
        "masterSeed": 1,
        "lfdrSource": "estimated"
    }"#;
    let config_path = dir.path().join("small.json");
    std::fs::write(&config_path, config).unwrap();
    let output = run(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 3);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("replication"), "{stderr}");
    assert!(stderr.contains("estimation floor"), "{stderr}");
}

#[test]
fn simulate_custom_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "name": "custom",
        "model": { "groups": [
            { "size": 400, "nonNullProportion": 0.2,
              "null": { "mean": 0.0, "sd": 1.0 },
              "nonNull": { "mean": 2.0, "sd": 1.0 } }
        ]},
        "weights": { "kind": "constant", "a": 1.0, "b": 1.0 },
        "alpha": 0.1,
        "procedures": ["dd", "az", "oracle"],
        "reps": 4,
        "masterSeed": 11,
        "lfdrSource": "oracle",
        "sweep": { "parameter": { "path": "alpha" }, "values": [0.05, 0.1] }
    }"#;
    let config_path = dir.path().join("custom.json");
    std::fs::write(&config_path, config).unwrap();
    let output = run(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let csv = std::fs::read_to_string(dir.path().join("custom.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7, "header + 2 sweep values x 3 procedures");
    assert!(csv.contains("alpha,0.05,dd"));
}

fn write_two_group_batch(path: &Path, b_group0: f64) -> PathBuf {
    let model = MixtureModel::new(vec![
        GroupSpec {
            size: 300,
            non_null_proportion: 0.2,
            null: GaussianComponent::standard(),
            non_null: GaussianComponent { mean: 2.2, sd: 1.0 },
        },
        GroupSpec {
            size: 300,
            non_null_proportion: 0.2,
            null: GaussianComponent::standard(),
            non_null: GaussianComponent { mean: 2.2, sd: 1.0 },
        },
    ])
    .unwrap();
    let batch = generate_batch(&model, &WeightScheme::unit(), 424242).unwrap();
    let mut text = String::from("x,a,b,group,theta\n");
    for i in 0..batch.len() {
        let b = if batch.group[i] == 0 { b_group0 } else { 1.0 };
        text.push_str(&format!(
            "{},1.0,{},{},{}\n",
            batch.x[i],
            b,
            batch.group[i],
            batch.theta.as_ref().unwrap()[i] as u8
        ));
    }
    std::fs::write(path, text).unwrap();
    path.to_path_buf()
}

#[test]
fn analyze_writes_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_two_group_batch(&dir.path().join("batch.csv"), 1.0);
    let out = dir.path().join("analysis.csv");
    let output = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--alpha",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let rows = std::fs::read_to_string(&out).unwrap();
    assert!(rows.starts_with("index,x,a,b,group,lfdr,r_stat,rank,rejected"));
    assert_eq!(rows.lines().count(), 601, "header + one row per hypothesis");
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("analysis.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["method"], "dd");
    assert_eq!(summary["hypotheses"], 600);
    assert!(
        summary["realizedWeightedFdp"].is_number(),
        "theta present, so the realized weighted FDP is reported"
    );
    assert_eq!(summary["groups"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_power_weights_deepen_group_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let unit_input = write_two_group_batch(&dir.path().join("unit.csv"), 1.0);
    let heavy_input = write_two_group_batch(&dir.path().join("heavy.csv"), 6.0);
    let max_p_group0 = |input: &Path, tag: &str| -> f64 {
        let out = dir.path().join(format!("{tag}.csv"));
        let output = run(&[
            "analyze",
            "--input",
            input.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&output), 0);
        let summary: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join(format!("{tag}.summary.json"))).unwrap(),
        )
        .unwrap();
        summary["groups"][0]["maxRejectedPvalue"].as_f64().unwrap()
    };
    let unit_p = max_p_group0(&unit_input, "unit");
    let heavy_p = max_p_group0(&heavy_input, "heavy");
    assert!(
        heavy_p > unit_p,
        "up-weighting group 0 must deepen its rejection threshold: {heavy_p} vs {unit_p}"
    );
}

#[test]
fn analyze_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");

    // Malformed input: missing x column.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "y,a\n1.0,1.0\n").unwrap();
    let output = run(&["analyze", "--input", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&output), 2);

    // Missing file.
    let output = run(&["analyze", "--input", "/nonexistent.csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&output), 2);

    // Group below the estimation floor.
    let small = dir.path().join("small.csv");
    std::fs::write(&small, "x\n0.1\n0.5\n-0.3\n1.2\n").unwrap();
    let output = run(&["analyze", "--input", small.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&output), 4);

    // Oracle lfdr without model parameters.
    let input = write_two_group_batch(&dir.path().join("batch.csv"), 1.0);
    let output = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--lfdr",
        "oracle",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn analyze_oracle_mode_with_model_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_two_group_batch(&dir.path().join("batch.csv"), 1.0);
    let out = dir.path().join("oracle.csv");
    let output = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--lfdr",
        "oracle",
        "--prop",
        "0.2",
        "--non-null-mean",
        "2.2",
        "--method",
        "oracle",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("oracle.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["lfdrSource"], "oracle");
    assert!(summary["randomizedProbability"].is_number());
}

#[test]
fn list_configs_names_all_builtins() {
    let output = run(&["list-configs"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    for name in [
        "study1",
        "study2",
        "study3-mu",
        "study3-p",
        "study3-alpha",
        "study4",
        "e3-definitions",
        "e5-informative",
        "e5-moderate",
        "e5-anti",
        "appendixA-demo",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
}
