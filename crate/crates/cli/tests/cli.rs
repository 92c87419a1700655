use std::process::{Command, Output};

fn hopfpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfpath"))
        .args(args)
        .env_remove("HOPFPATH_CONDUCTOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_hopf_passes_for_a_deformed_cycle() {
    let o = hopfpath(&[
        "verify", "hopf", "--family", "cycle-deform", "--n", "4", "--q-order", "4", "--lambda", "1", "--degree", "8",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["family"], "cycle-deform");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true && c.get("name").is_some() && c.get("witness").is_some()));
}

#[test]
fn failed_check_exits_one() {
    let o = hopfpath(&[
        "verify", "hopf", "--family", "chain-root", "--q-order", "2", "--lambda", "1", "--chain-commutator", "literal",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL coproduct respects relations"));
}

#[test]
fn invalid_parameters_exit_two() {
    let o = hopfpath(&["verify", "hopf", "--family", "cycle-deform", "--n", "4", "--q-order", "2", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("order(q) must equal n"), "{err}");
    let o = hopfpath(&["verify", "hopf", "--family", "cycle-deform", "--n", "4", "--q-order", "4", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hopfpath(&["verify", "bogus"]).status.code(), Some(2));
    let o = hopfpath(&["catalog", "simple-pointed", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_deformations() {
    let l = r#"{"family":"cycle-deform","n":3,"qOrder":3,"lambda":1}"#;
    let r = r#"{"family":"cycle-deform","n":3,"qOrder":3,"lambda":2}"#;
    let o = hopfpath(&["present", "classify", "--left", l, "--right", r]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "isomorphic: true\n");
    let g = r#"{"family":"cycle-graded","n":3,"qOrder":3}"#;
    let o = hopfpath(&["present", "classify", "--left", l, "--right", g]);
    assert_eq!(stdout(&o), "isomorphic: false\n");
    let o = hopfpath(&["present", "classify", "--left", "{", "--right", g]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_at_two() {
    let o = hopfpath(&["catalog", "simple-pointed", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("type-one-cycle(mu=0, n=2, q=-1, qOrder=2)"));
    assert!(text.contains("type-one-cycle(mu=1, n=2, q=-1, qOrder=2)"));
    assert!(text.contains("chain-q1(lambda=1, q=1, qOrder=1)"));
    assert!(!text.contains("cycle-deform"));
}

#[test]
fn catalog_json_round_trips_through_classify() {
    let o = hopfpath(&["catalog", "simple-pointed", "--max-n", "3", "--json"]);
    let list = json(&o);
    for d in list.as_array().unwrap() {
        let s = d.to_string();
        let o = hopfpath(&["--conductor", "6", "present", "classify", "--left", &s, "--right", &s]);
        assert_eq!(stdout(&o), "isomorphic: true\n", "{s}");
    }
}

#[test]
fn normal_form_output() {
    let o = hopfpath(&["present", "nf", "--family", "cycle-deform", "--n", "3", "--q-order", "3", "--lambda", "1", "--word", "a p a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 * a^2 + 1 * p a^2\n");
    let o = hopfpath(&[
        "present", "nf", "--family", "cycle-deform", "--n", "3", "--q-order", "3", "--lambda", "1", "--word", "a p", "--json",
    ]);
    let rows = json(&o)["normalForm"].clone();
    assert_eq!(rows, serde_json::json!([{"coeff": "1", "k": 0, "j": 1, "i": 0}, {"coeff": "1", "k": 1, "j": 1, "i": 0}]));
    let o = hopfpath(&["present", "nf", "--family", "chain-graded", "--q", "2", "--word", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quiver_commands() {
    let o = hopfpath(&["quiver", "build", "--group", "cyclic:4", "--ram", "g=1", "--json"]);
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 4);
    let o = hopfpath(&["quiver", "connected", "--group", "cyclic:4", "--ram", "g^2=1"]);
    assert_eq!(stdout(&o), "connected: false\n");
    let o = hopfpath(&["quiver", "build", "--group", "infinite-cyclic", "--ram", "g=1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hopfpath(&["quiver", "build", "--group", "infinite-cyclic", "--ram", "g=1", "--radius", "1"]);
    assert!(stdout(&o).starts_with("vertices (3): g^-1 e g\n"));
}

#[test]
fn graded_table_csv() {
    let o = hopfpath(&["graded", "table", "--kind", "cycle", "--n", "2", "--q-order", "2", "--max-len", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("left,right,coeff,result"));
    assert_eq!(lines.count(), 16);
    assert!(text.contains("\"p[0,1]\",\"p[0,1]\",0,0"));
}

#[test]
fn graded_verify_on_the_chain() {
    let o = hopfpath(&["graded", "verify", "--kind", "chain", "--q", "-1/3", "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS coproduct multiplicative"));
}

#[test]
fn present_table_json_rows() {
    let o = hopfpath(&["present", "table", "--family", "cycle-graded", "--n", "2", "--q-order", "2", "--max-weight", "2", "--json"]);
    let rows = json(&o);
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["left"] == "a" && r["right"] == "h")
        .unwrap();
    assert_eq!(row["result"], serde_json::json!([{"coeff": "1", "k": 0, "j": 1, "i": 1}]));
    let row = rows.as_array().unwrap().iter().find(|r| r["left"] == "h" && r["right"] == "a").unwrap();
    assert_eq!(row["result"], serde_json::json!([{"coeff": "-1", "k": 0, "j": 1, "i": 1}]));
}

#[test]
fn conductor_from_environment() {
    let args = ["verify", "antipode", "--family", "cycle-graded", "--n", "4", "--q-order", "4", "--degree", "2", "--json"];
    let default = hopfpath(&args);
    let o = Command::new(env!("CARGO_BIN_EXE_hopfpath"))
        .args(args)
        .env("HOPFPATH_CONDUCTOR", "3")
        .output()
        .unwrap();
    // ζ_4 is not in Q(ζ_3)
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hopfpath"))
        .args(args)
        .env("HOPFPATH_CONDUCTOR", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(default.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "forced-vanishing", "--n", "6", "--chain-d", "3", "--json"];
    let a = hopfpath(&args);
    let b = hopfpath(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("hopfpath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = hopfpath(&[
        "verify", "degeneration", "--family", "cycle-half", "--n", "4", "--q-order", "2", "--mu", "1", "--degree", "4",
        "--json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["family"], "cycle-half");
    std::fs::remove_dir_all(&dir).unwrap();
}
