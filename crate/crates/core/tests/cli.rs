use std::process::Command;

fn siblings(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_siblings"))
        .args(args)
        .env_remove("SIBLINGS_CACHE_DIR")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn splitting_of_the_example_quartic() {
    let (code, out, _) = siblings(&["splitting", "--field", "paper:K", "--base", "4", "--prime", "T^4+z*T^2+(z+1)*T+(z+1)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[2,2]\n");
    let (_, out, _) = siblings(&["splitting", "--field", "paper:Kprime", "--base", "4", "--prime", "T^4+z*T^2+(z+1)*T+(z+1)"]);
    assert_eq!(out, "[1,1,1,1]\n");
}

#[test]
fn factor_over_f4() {
    let (code, out, _) = siblings(&["factor", "--q", "4", "--poly", "T^8+T^6+T^5+T^3+1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("T^4")));
    let (_, json, _) = siblings(&["factor", "--q", "2", "--poly", "T^2+1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["factors"][0]["multiplicity"], 2);
}

#[test]
fn verify_paper_report_is_clean_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let (code, _, _) = siblings(&["verify-paper", "--p", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().all(|c| !c["cite"].as_str().unwrap().is_empty()));
    let displays: std::collections::BTreeSet<&str> = checks
        .iter()
        .filter_map(|c| c["cite"].as_str().filter(|s| s.starts_with("display:")))
        .collect();
    assert!(displays.len() >= 5, "{displays:?}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(siblings(&["no-such-command"]).0, 2);
    assert_eq!(siblings(&["family", "--p", "4"]).0, 2);
    assert_eq!(siblings(&["splitting", "--field", "paper:K", "--prime", "T^2+"]).0, 2);
    let (code, _, err) = siblings(&["splitting", "--field", "nope", "--prime", "T"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
}

#[test]
fn other_subcommands() {
    let (code, out, _) = siblings(&["gassmann", "--format", "tsv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("check\tcite\tstatus"));
    let (code, out, _) = siblings(&["sweep", "--max-deg", "4"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("0 of 8 primes differ\n"));
    let (code, out, _) = siblings(&["zeta", "--max-deg", "2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    let (code, out, _) = siblings(&["family", "--p", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("paper-discrepancy"));
}
