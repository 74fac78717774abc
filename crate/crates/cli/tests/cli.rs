use std::process::{Command, Output};

fn niven(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_niven"))
        .args(args)
        .env_remove("NIVEN_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = niven(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn witness_e_emits_a_certificate() {
    let out = niven(&["witness", "e", "--q", "10", "--eps", "1e-30", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "witness e");
    assert_eq!(v["status"], "falsified");
    assert_eq!(v["results"]["kind"], "fourier-e");
    assert_eq!(v["results"]["integer_side"], "9864101");
    assert_eq!(v["inputs"]["q"], "10");
}

#[test]
fn witness_pi_narrates_the_contradiction() {
    let out = niven(&["witness", "pi", "--candidate", "22/7", "--eps", "1e-40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n = 1313"));
    assert!(text.contains("no integer lives"));
    assert!(text.ends_with("verdict: falsified\n"));
}

#[test]
fn eps_spellings_give_identical_reports() {
    let a = json(&["witness", "e", "--q", "5", "--eps", "1e-30"]);
    let b = json(&["witness", "e", "--q", "5", "--eps", "1/10^30"]);
    assert_eq!(a, b);
    assert_eq!(a["precision"], format!("1/1{}", "0".repeat(30)));
}

#[test]
fn rationals_are_strings() {
    let v = json(&["naive-bound", "demo", "--q-max", "4"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["bound"] == "32/3" && r["fails"] == true));
    assert!(rows.iter().all(|r| r["bound"].is_string()));
}

#[test]
fn exit_codes() {
    assert_eq!(niven(&["witness", "e"]).status.code(), Some(2));
    assert_eq!(
        niven(&["witness", "e", "--q", "3", "--eps", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        niven(&["witness", "pi", "--candidate", "x/7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        niven(&["bounds", "solve", "exp", "--r", "0", "--q", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(niven(&["witness", "e", "--q", "0"]).status.code(), Some(2));
    let capped = niven(&[
        "bounds",
        "solve",
        "pi",
        "--candidate",
        "355/113",
        "--cap",
        "1000",
        "--json",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&capped.stdout).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn cap_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_niven"))
        .args(["bounds", "solve", "pi", "--candidate", "22/7"])
        .env("NIVEN_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("niven-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = niven(&[
        "bounds",
        "solve",
        "pi",
        "--candidate",
        "3",
        "--json",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["results"]["n"], "24");
}

#[test]
fn table_commands_report_their_checks() {
    let v = json(&["legendre", "verify", "--n-max", "8", "--r", "1"]);
    assert_eq!(v["results"]["all_passed"], true);
    let v = json(&["approx", "e", "--r", "2", "--n-max", "3"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["degenerate"], true);
    assert!(rows
        .iter()
        .filter(|r| r["degenerate"] == false)
        .all(|r| r["error_within_bound"] == true));
    let v = json(&["identity", "check", "--samples", "10"]);
    assert_eq!(v["results"]["failures"], "0");
}
