//! End-to-end tests of the `peterson` binary: golden outputs, exit codes,
//! format selection, and cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn peterson() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_peterson"));
    // keep runs hermetic regardless of the ambient environment
    cmd.env_remove("PETERSON_CACHE_DIR");
    cmd.env_remove("XDG_CACHE_HOME");
    cmd
}

fn run(args: &[&str]) -> Output {
    peterson().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process not killed by signal")
}

fn parse_json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("stdout is valid JSON")
}

#[test]
fn sc_b3_golden_terms() {
    let text = stdout_of(&[
        "sc", "--type", "B3", "--I", "2", "--J", "1,2", "--basis", "peterson", "--no-cache",
    ]);
    let value = parse_json(&text);
    assert_eq!(value, serde_json::json!({"{1,2}": "2t", "{1,2,3}": "16"}));
    // keys in graded-lex order, and pretty-printing round-trips byte-identically
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text.trim_end());
}

#[test]
fn sc_default_basis_is_peterson() {
    let with_flag = stdout_of(&[
        "sc", "--type", "B3", "--I", "2", "--J", "1,2", "--basis", "peterson", "--no-cache",
    ]);
    let without = stdout_of(&["sc", "--type", "B3", "--I", "2", "--J", "1,2", "--no-cache"]);
    assert_eq!(with_flag, without);
}

#[test]
fn sc_b3_monomial_basis() {
    let text = stdout_of(&[
        "sc", "--type", "B3", "--I", "2", "--J", "1,2", "--basis", "monomial", "--no-cache",
    ]);
    assert_eq!(parse_json(&text), serde_json::json!({"{1,2}": "2t", "{1,2,3}": "4/3"}));
}

#[test]
fn sc_a9_at_zero_golden() {
    let text = stdout_of(&[
        "sc", "--type", "A9", "--I", "3,6,8", "--J", "1,3,5,6,7", "--at-zero", "--basis",
        "peterson", "--no-cache",
    ]);
    assert_eq!(
        parse_json(&text),
        serde_json::json!({
            "{1,2,3,4,5,6,7,8}": "3456",
            "{1,2,3,5,6,7,8,9}": "24",
            "{1,3,4,5,6,7,8,9}": "240",
        })
    );
}

#[test]
fn sc_rank_one_diagonal() {
    let text = stdout_of(&["sc", "--type", "A1", "--I", "1", "--J", "1", "--no-cache"]);
    assert_eq!(parse_json(&text), serde_json::json!({"{1}": "t"}));
}

#[test]
fn sc_empty_left_factor_is_identity() {
    let text = stdout_of(&["sc", "--type", "B3", "--I", "{}", "--J", "1,3", "--no-cache"]);
    assert_eq!(parse_json(&text), serde_json::json!({"{1,3}": "1"}));
}

#[test]
fn sc_csv_has_contract_columns() {
    let text = stdout_of(&[
        "sc", "--type", "B3", "--I", "2", "--J", "1,2", "--no-cache", "--format", "csv",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row_subset,col_subset,t_power,value");
    assert!(lines.contains(&"\"{1,2}\",\"{1,2}\",1,2"));
    assert!(lines.contains(&"\"{1,2}\",\"{1,2,3}\",0,16"));
}

#[test]
fn sc_latex_expansion() {
    let text = stdout_of(&[
        "sc", "--type", "B3", "--I", "2", "--J", "1,2", "--no-cache", "--format", "latex",
    ]);
    assert_eq!(text.trim_end(), r"2t\,p_{\{1,2\}} + 16\,p_{\{1,2,3\}}");
}

#[test]
fn sc_rejects_nodes_outside_the_system() {
    let out = run(&["sc", "--type", "A2", "--I", "5", "--J", "1", "--no-cache"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("node"));
}

#[test]
fn cartan_reports_b3_data() {
    let text = stdout_of(&["cartan", "--type", "B3", "--no-cache"]);
    let value = parse_json(&text);
    assert_eq!(value["det"], "2");
    assert_eq!(value["weyl_order"], "48");
    assert_eq!(value["rank"], 3);
    assert_eq!(value["cartan"], serde_json::json!([[2, -1, 0], [-1, 2, -2], [0, -1, 2]]));
    assert_eq!(value["exponents"]["{1,2,3}"], serde_json::json!([1, 3, 5]));
}

#[test]
fn cartan_rank_one() {
    let text = stdout_of(&["cartan", "--type", "A1", "--no-cache"]);
    assert_eq!(parse_json(&text)["cartan"], serde_json::json!([[2]]));
}

#[test]
fn cartan_rejects_affine_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("affine.json");
    std::fs::write(&path, r#"{"cartan": [[2, -2], [-2, 2]]}"#).unwrap();
    let out = run(&["cartan", "--file", path.to_str().unwrap(), "--no-cache"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("finite type"), "stderr: {stderr}");
}

#[test]
fn cartan_accepts_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    std::fs::write(&path, r#"{"cartan": [[2, -1], [-3, 2]]}"#).unwrap();
    let text = stdout_of(&["cartan", "--file", path.to_str().unwrap(), "--no-cache"]);
    let value = parse_json(&text);
    assert_eq!(value["weyl_order"], "12");
    assert_eq!(value["det"], "1");
}

#[test]
fn requires_exactly_one_system_source() {
    assert_eq!(exit_code(&run(&["cartan", "--no-cache"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, r#"{"components": [["A", 1]]}"#).unwrap();
    let both = run(&["cartan", "--type", "A1", "--file", path.to_str().unwrap(), "--no-cache"]);
    assert_eq!(exit_code(&both), 2);
}

#[test]
fn table_rank_one_has_two_rows() {
    let text = stdout_of(&["table", "--type", "A1", "--i", "1", "--no-cache"]);
    let value = parse_json(&text);
    let rows = value["rows"].as_object().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows["{}"], serde_json::json!({"{1}": "1"}));
    assert_eq!(rows["{1}"], serde_json::json!({"{1}": "t"}));
}

#[test]
fn table_a9_has_512_rows() {
    let text = stdout_of(&["table", "--type", "A9", "--i", "1", "--no-cache"]);
    let value = parse_json(&text);
    assert_eq!(value["rows"].as_object().unwrap().len(), 512);
}

#[test]
fn table_latex_matches_rank_three_layout() {
    let text =
        stdout_of(&["table", "--type", "B3", "--i", "2", "--no-cache", "--format", "latex"]);
    assert!(text.starts_with("\\begin{array}{c|cccccccc}"));
    assert!(text.contains(r"\{2\} & 0 & 0 & t & 0 & \frac{1}{2} & 0 & 1 & 0 \\"));
    // 1 header + 8 entry rows
    assert_eq!(text.lines().filter(|l| l.ends_with("\\\\")).count(), 9);
}

#[test]
fn table_refuses_rank_beyond_tabulation_cap() {
    let out = run(&["table", "--type", "A15", "--i", "1", "--no-cache"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("14"));
}

#[test]
fn eulerian_golden_values() {
    let a8 = stdout_of(&[
        "eulerian", "--type", "A8", "--c", "1,0,2,3,0,0,1,1", "--no-cache", "--format", "pretty",
    ]);
    assert_eq!(a8.trim_end(), "23616");
    let e6 = stdout_of(&[
        "eulerian", "--type", "E6", "--c", "0,1,0,2,3,0", "--no-cache", "--format", "pretty",
    ]);
    assert_eq!(e6.trim_end(), "34992");
}

#[test]
fn eulerian_json_exposes_exact_intermediates() {
    let text = stdout_of(&["eulerian", "--type", "A8", "--c", "1,0,2,3,0,0,1,1", "--no-cache"]);
    let value = parse_json(&text);
    assert_eq!(value["value"], "23616");
    assert_eq!(value["prefactor"], "40320");
    assert_eq!(value["raw_entry"], "41/70");
}

#[test]
fn eulerian_rejects_bad_compositions() {
    // wrong sum
    let out = run(&["eulerian", "--type", "A2", "--c", "2,1", "--no-cache"]);
    assert_eq!(exit_code(&out), 2);
    // wrong length
    let out = run(&["eulerian", "--type", "A2", "--c", "2", "--no-cache"]);
    assert_eq!(exit_code(&out), 2);
    // not a number
    let out = run(&["eulerian", "--type", "A2", "--c", "1,x", "--no-cache"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn eulerian_refuses_reducible_systems() {
    let out = run(&["eulerian", "--type", "A1,A1", "--c", "1,1", "--no-cache"]);
    assert_eq!(exit_code(&out), 3);
    let out = run(&["volume", "--type", "A1,A1", "--no-cache"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn volume_a2_table() {
    let text = stdout_of(&["volume", "--type", "A2", "--no-cache"]);
    assert_eq!(
        parse_json(&text),
        serde_json::json!({"0,2": "1", "1,1": "2", "2,0": "1"})
    );
}

#[test]
fn volume_csv_lists_all_compositions() {
    let text = stdout_of(&["volume", "--type", "B3", "--no-cache", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "composition,value");
    assert_eq!(lines.len(), 1 + 10); // compositions of 3 into 3 parts
}

#[test]
fn verify_suites_pass_and_report() {
    let text = stdout_of(&["verify", "--type", "B3", "--suite", "oracle", "--no-cache"]);
    let value = parse_json(&text);
    assert_eq!(value["passed"], true);
    assert_eq!(value["suite"], "oracle");
    assert!(value["cases"].as_u64().unwrap() > 0);

    let pretty = stdout_of(&[
        "verify", "--type", "G2", "--suite", "convergence", "--no-cache", "--format", "pretty",
    ]);
    assert!(pretty.contains("PASS"), "got: {pretty}");

    let text = stdout_of(&["verify", "--type", "A4", "--suite", "commutativity", "--no-cache"]);
    assert_eq!(parse_json(&text)["passed"], true);
}

#[test]
fn verify_respects_rank_caps() {
    let out = run(&["verify", "--type", "A11", "--suite", "oracle", "--no-cache"]);
    assert_eq!(exit_code(&out), 3);
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let versioned = dir.join("v1");
    if !versioned.exists() {
        return Vec::new();
    }
    let mut files: Vec<_> = std::fs::read_dir(versioned)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

#[test]
fn cache_writes_versioned_digest_keyed_entries() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();

    let first = stdout_of(&["cartan", "--type", "E6", "--cache-dir", dir_arg]);
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1, "one digest-keyed entry");
    let name = files[0].file_name().unwrap().to_str().unwrap();
    assert_eq!(name.len(), 64 + ".json".len(), "SHA-256 hex digest name");

    // a second run reads the cache and prints byte-identical output
    let second = stdout_of(&["cartan", "--type", "E6", "--cache-dir", dir_arg]);
    assert_eq!(first, second);

    // a different matrix gets its own entry
    stdout_of(&["cartan", "--type", "B3", "--cache-dir", dir_arg]);
    assert_eq!(cache_files(dir.path()).len(), 2);
}

#[test]
fn cache_ignores_stale_versions_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let clean = stdout_of(&["cartan", "--type", "B3", "--cache-dir", dir_arg]);
    let entry = cache_files(dir.path()).remove(0);

    let stale = std::fs::read_to_string(&entry)
        .unwrap()
        .replace("\"version\": 1", "\"version\": 999");
    std::fs::write(&entry, stale).unwrap();
    assert_eq!(stdout_of(&["cartan", "--type", "B3", "--cache-dir", dir_arg]), clean);
    // the fresh run rewrote the entry at the current version
    assert!(std::fs::read_to_string(&entry).unwrap().contains("\"version\": 1"));

    std::fs::write(&entry, "{ not json").unwrap();
    assert_eq!(stdout_of(&["cartan", "--type", "B3", "--cache-dir", dir_arg]), clean);
}

#[test]
fn cache_tampered_values_do_not_change_safe_queries() {
    // entries that do not fit the matrix (unknown nodes, unparsable numbers)
    // are ignored on load
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let clean = stdout_of(&["cartan", "--type", "A2", "--cache-dir", dir_arg]);
    let entry = cache_files(dir.path()).remove(0);
    let tampered = std::fs::read_to_string(&entry)
        .unwrap()
        .replace("\"{1,2}\": \"3\"", "\"{7,9}\": \"3\"");
    std::fs::write(&entry, tampered).unwrap();
    assert_eq!(stdout_of(&["cartan", "--type", "A2", "--cache-dir", dir_arg]), clean);
}

#[test]
fn cache_env_var_is_honored_and_flag_wins() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();

    let out = peterson()
        .args(["cartan", "--type", "A2"])
        .env("PETERSON_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(cache_files(env_dir.path()).len(), 1);

    let out = peterson()
        .args(["cartan", "--type", "B3", "--cache-dir", flag_dir.path().to_str().unwrap()])
        .env("PETERSON_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(cache_files(env_dir.path()).len(), 1, "env dir untouched by flagged run");
    assert_eq!(cache_files(flag_dir.path()).len(), 1);
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = peterson()
        .args(["cartan", "--type", "A2", "--no-cache"])
        .env("PETERSON_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache_files(dir.path()).is_empty());
}

#[test]
fn json_outputs_reserialize_byte_identically() {
    for args in [
        vec!["cartan", "--type", "B3", "--no-cache"],
        vec!["sc", "--type", "A9", "--I", "3,6,8", "--J", "1,3,5,6,7", "--no-cache"],
        vec!["table", "--type", "B3", "--i", "2", "--no-cache"],
        vec!["eulerian", "--type", "E6", "--c", "0,1,0,2,3,0", "--no-cache"],
        vec!["volume", "--type", "B3", "--no-cache"],
        vec!["verify", "--type", "A2", "--suite", "exhaustive", "--no-cache"],
    ] {
        let text = stdout_of(&args);
        let value = parse_json(&text);
        assert_eq!(
            serde_json::to_string_pretty(&value).unwrap(),
            text.trim_end(),
            "round trip for {args:?}"
        );
    }
}
