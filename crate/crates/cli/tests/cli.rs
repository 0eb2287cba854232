use hombias_cli::{run, Outcome, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn hombias(args: &[&str]) -> Outcome {
    run(std::iter::once("hombias").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_line(out: &Outcome) -> Value {
    assert_eq!(out.stderr.lines().count(), 1);
    serde_json::from_str(out.stderr.trim()).unwrap()
}

#[test]
fn bound_on_abelian_is_vacuous() {
    let v = json(&hombias(&["bound", "Z6"]));
    assert_eq!(v["d_min"], 1);
    assert_eq!(v["upper_bound_thm1"], 1.0);
    assert_eq!(v["upper_bound_thm2"], "1/1");
    assert!(v["version"].as_str().unwrap().starts_with("hombias "));
}

#[test]
fn bound_on_a5() {
    let v = json(&hombias(&["bound", "A5"]));
    assert_eq!(v["d_min"], 3);
    assert!((v["upper_bound_thm1"].as_f64().unwrap() - 0.788675).abs() < 1e-6);
    assert_eq!(v["upper_bound_thm2"], "2/3");
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["bound"],
        vec!["bound", "Q8"],
        vec!["frobnicate"],
        vec!["construct", "A5"],
        vec!["construct", "A6", "--n", "5"],
        vec!["search", "Z3"],
        vec!["search", "S5"],
        vec!["fourier-verify", "A5"],
        vec!["--threads", "0", "bound", "Z4"],
        vec!["an-gap", "--n", "9"],
    ] {
        let out = hombias(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stdout.is_empty());
        let e = error_line(&out);
        assert_eq!(e["exit_code"], 1);
        assert!(e["error"].is_string() && e["message"].is_string());
    }
}

#[test]
fn computational_failures_exit_2() {
    let out = hombias(&["search", "A5", "--strategy", "class"]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert_eq!(error_line(&out)["error"], "no_balanced_class_function");
}

#[test]
fn help_exits_0() {
    let out = hombias(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("an-gap"));
}

#[test]
fn fourier_verify_s4() {
    let v = json(&hombias(&[
        "fourier-verify",
        "S4",
        "--seed",
        "1",
        "--count",
        "100",
    ]));
    assert_eq!(v["passed"], true);
    assert!(v["max_spectral_T_error"].as_f64().unwrap() <= 1e-9);
    assert!(v["max_plancherel_residual_rel"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn chartab_json_shape() {
    let v = json(&hombias(&["chartab", "S3"]));
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2]));
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 3);
    assert_eq!(chars[2][0], serde_json::json!([2.0, 0.0]));
    assert_eq!(v["classes"][1]["size"], 3);
}

#[test]
fn construct_z4() {
    let v = json(&hombias(&[
        "construct",
        "Z4",
        "--subgroup",
        "2",
        "--trials",
        "4",
        "--exact-signs",
        "--dump-f",
    ]));
    assert_eq!(v["best_T"], "1/2");
    assert_eq!(v["exact_mean_T"], "1/2");
    assert_eq!(v["thm3_bound"], "1/4");
    assert_eq!(v["y_in_H_contribution"], "1/2");
    assert_eq!(v["f"].as_array().unwrap().len(), 4);
}

#[test]
fn construct_a5_involutive() {
    let v = json(&hombias(&[
        "construct",
        "A5",
        "--n",
        "5",
        "--trials",
        "50",
        "--exact-signs",
    ]));
    assert_eq!(v["transversal_involutive"], true);
    assert_eq!(v["weakened_premise_holds"], true);
    assert_eq!(v["thm4_bound"], "1/10");
    assert_eq!(v["exact_mean_T"], "7/50");
    assert_eq!(v["y_in_H_contribution"], "1/10");
}

#[test]
fn search_strategies() {
    let v = json(&hombias(&["search", "A4"]));
    assert_eq!(v["best_bias"], "13/18");
    assert_eq!(v["exhaustive"], true);
    let v = json(&hombias(&[
        "search",
        "A5",
        "--strategy",
        "coset",
        "--subgroup",
        "(1 2 3 4 5)",
    ]));
    assert_eq!(v["best_bias"], "13/18");
    assert_eq!(v["evaluations"], 924);
    let v = json(&hombias(&[
        "search",
        "A5",
        "--strategy",
        "local",
        "--restarts",
        "3",
        "--seed",
        "5",
    ]));
    assert_eq!(v["exhaustive"], false);
    assert_eq!(v["evidence"], "empirical lower bound");
    assert_eq!(v["seed"], 5);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.csv");
    let out = hombias(&[
        "bound",
        "A5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out.stdout);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("d_min"));
}

#[test]
fn gap_report_schema() {
    let v = json(&hombias(&[
        "an-gap", "--n", "5", "--trials", "50", "--seed", "7",
    ]));
    for key in [
        "group",
        "order",
        "d_min",
        "upper_bound_thm1",
        "upper_bound_thm2",
        "thm3_bound",
        "thm4_bound",
        "mc_mean_T",
        "mc_std",
        "trials",
        "best_search_bias",
        "seed",
        "runtime_ms",
        "version",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let report: hombias_cli::report::GapReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.d_min, 3);
    let v = json(&hombias(&["an-gap", "--n", "5", "--trials", "0"]));
    assert!(v.get("mc_mean_T").is_none() && v.get("mc_std").is_none());
}

#[test]
fn thread_count_does_not_change_output() {
    let a = hombias(&["--threads", "1", "search", "S4"]);
    let b = hombias(&["--threads", "3", "search", "S4"]);
    assert_eq!(a, b);
    let a = hombias(&[
        "--threads",
        "1",
        "construct",
        "A5",
        "--n",
        "5",
        "--trials",
        "40",
    ]);
    let b = hombias(&[
        "--threads",
        "4",
        "construct",
        "A5",
        "--n",
        "5",
        "--trials",
        "40",
    ]);
    assert_eq!(a, b);
}
