//! CLI surface tests: exit codes, structured errors, and configuration
//! precedence.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wordmap"))
}

#[test]
fn unknown_subcommand_exits_2() {
    let output = bin().arg("no-such-command").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn domain_error_exits_1_with_structured_json() {
    // nonsolvable group rejected by the kernel witness
    let output = bin()
        .args(["kernel-witness", "--group", "SL2:p=5", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("structured error JSON");
    assert_eq!(report["command"], "kernel-witness");
    assert!(report["error"].as_str().unwrap().contains("nonsolvable"));
}

#[test]
fn bad_descriptor_is_a_domain_error() {
    let output = bin()
        .args(["orbits", "--group", "Sporadic:p=7", "--n", "1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert!(report.get("error").is_some());
}

#[test]
fn failed_verdict_exits_1_but_reports() {
    // theta twist cannot move tuples of an abelian group: search fails
    let dir = std::env::temp_dir().join("wordmap-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta_sigma.txt");
    std::fs::write(&path, "[f1, f2, f3 f1 f2 f1^-1 f2^-1]").unwrap();
    let output = bin()
        .args(["faithful-search", "--group", "Unipotent:s=2,p=3", "--sigma"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["verdicts"]["search"]["outcome"], "none_found");
    assert_eq!(report["verdicts"]["search"]["mode"]["mode"], "exhaustive");
}

#[test]
fn cap_env_variable_is_honored_and_flag_wins() {
    // 24^2 = 576 tuples; an env cap of 10 must reject the build
    let output = bin()
        .args(["orbits", "--group", "SL2:p=3", "--n", "2"])
        .env("WORDMAP_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert!(report["error"].as_str().unwrap().contains("cap"));

    // an explicit flag overrides the environment
    let output = bin()
        .args(["orbits", "--group", "SL2:p=3", "--n", "2", "--cap", "1000"])
        .env("WORDMAP_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn eval_reports_the_identity() {
    let output = bin()
        .args([
            "eval",
            "--group",
            "SL2:p=3",
            "--word",
            "1",
            "--tuple",
            "[[[1,1],[0,1]]]",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["verdicts"]["is_identity"], true);
    assert_eq!(report["verdicts"]["result"], serde_json::json!([[1, 0], [0, 1]]));
}

#[test]
fn compose_matches_the_substitution_convention() {
    let dir = std::env::temp_dir().join("wordmap-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let sigma = dir.join("sigma.txt");
    let tau = dir.join("tau.txt");
    std::fs::write(&sigma, "[f2, f1]").unwrap();
    std::fs::write(&tau, "[f1 f2, f2]").unwrap();
    let output = bin()
        .arg("compose")
        .arg("--sigma")
        .arg(&sigma)
        .arg("--tau")
        .arg(&tau)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    // (sigma.tau)(f1) = tau(f1) with f_j -> sigma(f_j): f1 f2 -> f2 f1
    assert_eq!(report["verdicts"]["composed_display"], "[f2 f1, f1]");
}
