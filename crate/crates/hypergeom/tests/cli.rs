//! Integration tests of the command-line interface: exit codes, output
//! schemas, determinism and the JSON/CSV value agreement.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypergeom"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

const REF: &[&str] = &["--alpha", "1/3", "--beta", "1/5", "--mu", "7/2", "--l", "2"];

#[test]
fn eval_f_mu_json_schema() {
    let mut args = vec!["eval", "--fn", "F_mu", "--lambda", "0.5"];
    args.extend_from_slice(REF);
    let (code, stdout, _) = run(&args);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let row = &rows[0];
    assert!((row["value_re"].as_f64().unwrap()).abs() < 1e-12);
    assert!((row["value_im"].as_f64().unwrap() + 0.02545668372495648).abs() < 1e-12);
    assert!(row["residual"].as_f64().is_some());
    assert!(row["est_error"].as_f64().unwrap() < 1e-10);
    assert!(row["terms_used"].as_u64().unwrap() > 3);
}

#[test]
fn eval_pfq_reports_terms_and_error() {
    let (code, stdout, _) = run(&[
        "eval", "--fn", "pFq", "--upper", "0.5;7", "--lower", "7", "--lambda", "0.3",
    ]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!((rows[0]["value_re"].as_f64().unwrap() - 1.1952286093343936).abs() < 1e-12);
    assert!(rows[0]["terms_used"].as_u64().unwrap() > 3);
    assert!(rows[0]["est_error"].as_f64().unwrap() < 1e-10);
}

#[test]
fn violated_hypothesis_exits_2_and_names_it() {
    // mu = 1/3 with alpha = 1/3 is congruent to alpha mod Z (and fails
    // mu > 1 first, also by name)
    let (code, _, stderr) = run(&[
        "eval", "--fn", "F_mu", "--alpha", "1/3", "--beta", "1/5", "--mu", "1/3", "--l", "3",
        "--lambda", "0.5",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("mu"), "stderr: {stderr}");
    // q = 0 (mod Z) is reported by name
    let (code, _, stderr) = run(&[
        "eval", "--fn", "F_mu", "--alpha", "1/3", "--beta", "1/5", "--mu", "3", "--l", "1",
        "--lambda", "0.5",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("congruent to 0"), "stderr: {stderr}");
}

#[test]
fn decimal_parameters_rejected() {
    let (code, _, stderr) = run(&[
        "eval", "--fn", "F_mu", "--alpha", "0.333", "--beta", "1/5", "--mu", "7/2", "--l", "2",
        "--lambda", "0.5",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exact fraction"), "stderr: {stderr}");
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.cfg");
    std::fs::write(&cfg, "alpha = 1/3\nbeta = 1/5\nmu = 7/2\nl = 2\n").unwrap();
    let (code, stdout, _) = run(&[
        "eval",
        "--fn",
        "F_mu",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda",
        "0.5",
    ]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!((rows[0]["value_im"].as_f64().unwrap() + 0.02545668372495648).abs() < 1e-12);
}

#[test]
fn csv_and_json_values_agree_to_17_digits() {
    let grid = "lin:0.3,0.1:0.7,-0.2:5";
    let mut base = vec!["eval", "--fn", "F_mu", "--lambda", grid];
    base.extend_from_slice(REF);
    let mut jargs = base.clone();
    jargs.extend_from_slice(&["--format", "json"]);
    let mut cargs = base.clone();
    cargs.extend_from_slice(&["--format", "csv"]);
    let (c1, json_out, _) = run(&jargs);
    let (c2, csv_out, _) = run(&cargs);
    assert_eq!((c1, c2), (0, 0));
    let rows: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let lines: Vec<&str> = csv_out.lines().skip(1).collect();
    assert_eq!(lines.len(), rows.as_array().unwrap().len());
    for (line, row) in lines.iter().zip(rows.as_array().unwrap()) {
        let f: Vec<&str> = line.split(',').collect();
        // identical f64 values after parsing back
        assert_eq!(
            f[1].parse::<f64>().unwrap(),
            row["lambda_re"].as_f64().unwrap()
        );
        assert_eq!(
            f[2].parse::<f64>().unwrap(),
            row["lambda_im"].as_f64().unwrap()
        );
        assert_eq!(
            f[3].parse::<f64>().unwrap(),
            row["value_re"].as_f64().unwrap()
        );
        assert_eq!(
            f[4].parse::<f64>().unwrap(),
            row["value_im"].as_f64().unwrap()
        );
    }
}

#[test]
fn verify_subset_is_deterministic_under_seed() {
    let args = ["verify", "--suite", "core", "--seed", "7"];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(out1, out2);
}

#[test]
fn report_round_trip_json_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let (code, _, _) = run(&[
        "verify",
        "--suite",
        "core",
        "--seed",
        "3",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, csv_out, _) = run(&[
        "report",
        "--in",
        report_path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(csv_out.starts_with("check_id,params,samples,residual,threshold,pass"));
    let json_text = std::fs::read_to_string(&report_path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    for (line, rec) in csv_out
        .lines()
        .skip(1)
        .zip(report["records"].as_array().unwrap())
    {
        let cols: Vec<&str> = line.split(',').collect();
        // residual column round-trips to the identical f64
        let resid_csv: f64 = cols[cols.len() - 3].parse().unwrap();
        assert_eq!(resid_csv, rec["residual"].as_f64().unwrap());
    }
    // missing input file is an I/O error: exit 3
    let (code, _, _) = run(&["report", "--in", "/nonexistent/really.json"]);
    assert_eq!(code, 3);
}

#[test]
fn monodromy_json_matches_closed_form() {
    let mut args = vec!["monodromy", "--around", "zero"];
    args.extend_from_slice(REF);
    let (code, stdout, _) = run(&args);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    // xi = e^{2 pi i (mu - alpha - beta)} with mu - alpha - beta = 89/30
    let theta = 2.0 * std::f64::consts::PI * (89.0 / 30.0 - 2.0);
    let m00 = &v["entries"][0][0];
    assert!((m00[0].as_f64().unwrap() - theta.cos()).abs() < 1e-6);
    assert!((m00[1].as_f64().unwrap() - theta.sin()).abs() < 1e-6);
    let m01 = &v["entries"][0][1];
    assert!(m01[0].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn fixtures_check_mode_passes_on_fresh_checkout() {
    let (code, _, stderr) = run(&["fixtures", "--check"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stderr.contains("stored fixtures vs regenerated"));
}
