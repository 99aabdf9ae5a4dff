use std::process::{Command, Output};

fn vogel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vogel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_e8_adjoint() {
    let o = vogel(&["eval", "--builtin", "adjoint", "--algebra", "exc", "--param", "8", "--classical"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "248");
}

#[test]
fn eval_symbolic_sl() {
    let o = vogel(&["eval", "--builtin", "adjoint", "--algebra", "sl", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N^2 - 1"));
}

#[test]
fn eval_point_json() {
    let o = vogel(&["--json", "eval", "--builtin", "adjoint", "--point", "-2,2,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("result").is_some());
}

#[test]
fn check_identity_q33() {
    let o = vogel(&["check-identity", "--builtin", "q33", "--params", "2,3,1,1", "--lines", "sl,so,exc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("IdenticallyOne").count(), 3);
}

#[test]
fn check_identity_plane_is_negative() {
    let o = vogel(&["check-identity", "--builtin", "q33", "--params", "2,3,1,1", "--plane"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("27/26"));
}

#[test]
fn configs_enumerate_9_3() {
    let o = vogel(&["configs-enumerate", "--type", "9_3", "--color"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3 classes, 1 colorable"));
}

#[test]
fn configs_color_exit_codes() {
    let pappus = vogel(&["configs-color", "--table", "123 456 789 147 258 369 159 267 348"]);
    assert_eq!(pappus.status.code(), Some(0));
    let other = vogel(&["configs-color", "--table", "123 145 167 248 259 368 379 469 578"]);
    assert_eq!(other.status.code(), Some(1));
    let broken = vogel(&["configs-color", "--table", "123 124"]);
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn extract_perms_from_coloring_file() {
    let dir = std::env::temp_dir().join(format!("vogel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("table.json");
    let coloring = dir.join("coloring.json");
    let t = vogel(&["--json", "sketch", "--builtin", "prop4", "--params", "2,3,5,7", "--lines", "sl,so,exc,sp"]);
    assert_eq!(t.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    std::fs::write(&table, v["table"].to_string()).unwrap();
    let c = vogel(&["--json", "configs-color", "--table-file", table.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    std::fs::write(&coloring, &c.stdout).unwrap();
    let o = vogel(&["extract-perms", "--table-file", table.to_str().unwrap(), "--coloring", coloring.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("s="));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_json_is_usage_error() {
    let path = std::env::temp_dir().join(format!("vogel-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\"p\": 9, \"columns\": [").unwrap();
    let o = vogel(&["configs-color", "--table-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed JSON"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(vogel(&["eval", "--builtin", "nope", "--point", "1,2,3"]).status.code(), Some(2));
    assert_eq!(vogel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vogel(&["eval", "--builtin", "q33", "--params", "1,2", "--point", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn sketch_writes_svg() {
    let path = std::env::temp_dir().join(format!("vogel-q33-{}.svg", std::process::id()));
    let o = vogel(&["sketch", "--builtin", "q33", "--params", "2,3,1,1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 9);
    std::fs::remove_file(&path).ok();
}

#[test]
fn sketch_of_non_picture_is_negative() {
    assert_eq!(vogel(&["sketch", "--builtin", "adjoint"]).status.code(), Some(1));
}

#[test]
fn classical_search_k3() {
    let o = vogel(&["search", "--k", "3", "--classical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 of 36"));
}

#[test]
fn quantum_search_k3_is_negative() {
    assert_eq!(vogel(&["search", "--k", "3"]).status.code(), Some(1));
}

#[test]
fn vogel_table_lists_e8() {
    let o = vogel(&["vogel-table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim ad = 248"));
}

#[test]
fn search_144_reports() {
    let o = vogel(&["--json", "search-144", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["realization_found"], false);
}

#[test]
fn reproduce_claims() {
    for claim in ["P1-remark", "P3", "P4"] {
        let o = vogel(&["reproduce", claim]);
        assert_eq!(o.status.code(), Some(0), "{claim}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}
