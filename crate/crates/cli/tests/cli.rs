//! End-to-end tests against the compiled binary: output shapes, file
//! formats, exit codes, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn dvgrover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dvgrover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn dvgrover_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dvgrover"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

const ZERO_SEED: [&str; 16] = ["00000000"; 16];

fn seed_args(words: &[&str]) -> Vec<String> {
    let mut args = vec!["expand".to_string(), "--seed".to_string()];
    args.extend(words.iter().map(|w| w.to_string()));
    args
}

#[test]
fn simulate_minimal_run_reports_unit_probability() {
    let out = dvgrover(&["simulate", "--n", "2", "--oracle", "toy", "--m", "1", "--t", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p_valid = 1.000000"), "{text}");
    assert!(text.contains("amplified controls: 0"), "{text}");
}

#[test]
fn simulate_table_run_amplifies_the_zero_start_lines() {
    let out = dvgrover(&["simulate", "--n", "5", "--oracle", "table"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("amplified controls: 0, 2, 8, 13, 14, 16"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn trace_csv_has_the_fixed_schema_and_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dvgrover(&[
        "simulate",
        "--n",
        "7",
        "--oracle",
        "toy",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "step,phase,p_valid,p_regular,p_tail,p_best_valid,best_valid_index"
    );
    // init + 11 entangling + oracle + 11 amplification records
    assert_eq!(lines.len(), 1 + 24);
    let phase_count = |phase: &str| {
        lines[1..]
            .iter()
            .filter(|l| l.split(',').nth(1) == Some(phase))
            .count()
    };
    assert_eq!(phase_count("init"), 1);
    assert_eq!(phase_count("dp"), 11);
    assert_eq!(phase_count("oracle"), 1);
    assert_eq!(phase_count("grover"), 11);
}

#[test]
fn identical_flags_and_seed_give_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &Path| {
        vec![
            "simulate".to_string(),
            "--n".into(),
            "4".into(),
            "--oracle".into(),
            "toy".into(),
            "--shots".into(),
            "500".into(),
            "--seed".into(),
            "42".into(),
            "--trace".into(),
            path.to_str().unwrap().to_string(),
        ]
    };
    let trace_a = dir.path().join("a.csv");
    let trace_b = dir.path().join("b.csv");
    let out_a = dvgrover(&args(&trace_a).iter().map(String::as_str).collect::<Vec<_>>());
    let out_b = dvgrover(&args(&trace_b).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out_a.status.success() && out_b.status.success());
    // stdout differs only in the trace path; compare everything before it
    let text_a = stdout(&out_a);
    let text_b = stdout(&out_b);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with("trace written"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&text_a), strip(&text_b));
    assert_eq!(
        std::fs::read(&trace_a).unwrap(),
        std::fs::read(&trace_b).unwrap()
    );
}

#[test]
fn json_trace_mirrors_the_csv_field_names() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let out = dvgrover(&[
        "simulate",
        "--n",
        "3",
        "--oracle",
        "toy",
        "--trace",
        trace.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 2 + 2 * 2); // m = t = 2 at n = 3
    for key in [
        "step",
        "phase",
        "p_valid",
        "p_regular",
        "p_tail",
        "p_best_valid",
        "best_valid_index",
    ] {
        assert!(records[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(records[0]["phase"], "init");
}

#[test]
fn full_dist_writes_the_distribution_file() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dvgrover(&[
        "simulate",
        "--n",
        "2",
        "--oracle",
        "toy",
        "--trace",
        trace.to_str().unwrap(),
        "--full-dist",
    ]);
    assert!(out.status.success());
    let dist = std::fs::read_to_string(dir.path().join("trace.dist.csv")).unwrap();
    let lines: Vec<&str> = dist.lines().collect();
    assert_eq!(lines[0], "step,index,probability");
    // 6 records (m = t = 2) at 16 states each
    assert_eq!(lines.len(), 1 + 6 * 16);
}

#[test]
fn full_dist_without_trace_is_a_usage_error() {
    let out = dvgrover(&["simulate", "--n", "2", "--oracle", "toy", "--full-dist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expand_of_zero_seed_prints_eighty_zero_words() {
    let args = seed_args(&ZERO_SEED);
    let out = dvgrover(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines.len(), 80);
    assert!(lines.iter().all(|l| *l == "00000000"));
}

#[test]
fn expand_single_bit_seed_rotates_into_line_17() {
    let mut words = ZERO_SEED;
    words[0] = "00000001";
    let args = seed_args(&words);
    let out = dvgrover(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 80);
    assert_eq!(lines[16], "00000002");
}

#[test]
fn expand_backward_round_trips_through_the_next_window() {
    let mut words = ZERO_SEED;
    words[0] = "deadbeef";
    words[5] = "0000cafe";
    let args = seed_args(&words);
    let out = dvgrover(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let text = stdout(&out);
    let window: Vec<&str> = text.lines().skip(16).take(16).collect();

    let mut back_args = vec!["expand".to_string(), "--seed".to_string()];
    back_args.extend(window.iter().map(|w| w.to_string()));
    back_args.push("--backward".into());
    back_args.push("--steps".into());
    back_args.push("16".into());
    let out = dvgrover(&back_args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    let recovered: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(recovered, words.map(str::to_string));
}

#[test]
fn expand_reads_words_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seed.txt");
    std::fs::write(&path, "00000001 00000000 00000000 00000000\n00000000 00000000 00000000 00000000\n00000000 00000000 00000000 00000000\n00000000 00000000 00000000 00000000\n").unwrap();
    let out = dvgrover(&["expand", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 80);
    assert_eq!(text.lines().nth(16), Some("00000002"));
}

#[test]
fn expand_rejects_malformed_words() {
    let mut words = ZERO_SEED;
    words[3] = "nothex!!";
    let args = seed_args(&words);
    let out = dvgrover(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_output_is_exact_and_stable() {
    let expected = "line,start\n0,0\n1,6\n2,0\n3,10\n4,1\n5,1\n6,5\n7,2\n8,0\n9,6\n10,1\n11,1\n12,1\n13,0\n14,0\n15,2\n16,0\n17,5\n";
    let a = dvgrover(&["table"]);
    let b = dvgrover(&["table"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), expected);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_file_runs_and_marks_the_listed_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let oracle = dir.path().join("oracle.txt");
    std::fs::write(&oracle, "# one valid candidate\n3 0\n").unwrap();
    let spec = format!("file:{}", oracle.display());
    let out = dvgrover(&["simulate", "--n", "3", "--oracle", &spec]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("amplified controls: 3"), "{}", stdout(&out));
}

#[test]
fn missing_oracle_file_exits_3() {
    let out = dvgrover(&["simulate", "--n", "3", "--oracle", "file:/no/such/file"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_oracle_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let oracle = dir.path().join("oracle.txt");
    std::fs::write(&oracle, "1 0\n1 2\n").unwrap();
    let spec = format!("file:{}", oracle.display());
    let out = dvgrover(&["simulate", "--n", "3", "--oracle", &spec]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn capacity_overflow_exits_4() {
    let out = dvgrover(&["bench", "--n", "20"]);
    assert_eq!(out.status.code(), Some(4));
    let out = dvgrover(&["simulate", "--n", "14", "--oracle", "toy"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn capacity_env_var_overrides_the_cap() {
    let out = dvgrover_env(
        &["simulate", "--n", "5", "--oracle", "toy"],
        "DVGROVER_MAX_QUBITS",
        "8",
    );
    assert_eq!(out.status.code(), Some(4));
    let out = dvgrover_env(
        &["simulate", "--n", "2", "--oracle", "toy"],
        "DVGROVER_MAX_QUBITS",
        "not a number",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "qubits = 4\n").unwrap();
    let out = dvgrover(&["simulate", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "n = 2\noracle = toy\nm = 1\nt = 1\n").unwrap();
    let from_config = dvgrover(&["simulate", "--config", config.to_str().unwrap()]);
    assert!(from_config.status.success());
    let explicit = dvgrover(&["simulate", "--n", "2", "--oracle", "toy", "--m", "1", "--t", "1"]);
    assert_eq!(stdout(&from_config), stdout(&explicit));

    // explicit flag wins over the config value
    let overridden = dvgrover(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--t",
        "2",
    ]);
    assert!(stdout(&overridden).contains("t = 2"), "{}", stdout(&overridden));
}

#[test]
fn bench_reports_all_five_gate_kernels() {
    let out = dvgrover(&["bench", "--n", "4", "--reps", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for kernel in [
        "phase_diagonal",
        "diffusion",
        "phase_work_zero",
        "reflection",
        "oracle",
        "pipeline",
    ] {
        assert!(text.contains(kernel), "missing {kernel} in {text}");
    }

    let out = dvgrover(&["bench", "--n", "4", "--reps", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["gates"].as_object().unwrap().len(), 5);
    assert!(doc["pipeline"]["median_ns"].as_u64().unwrap() > 0);
}
