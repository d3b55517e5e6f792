use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rwedf"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    for name in ["z8_weighted", "z12_bimodal", "heisenberg27_partition"] {
        let o = run(bin().arg("verify").arg(fixture(name)));
        assert_eq!(
            o.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }

    let wrong = scratch("wrong_expectation.json");
    let text = std::fs::read_to_string(fixture("z12_bimodal"))
        .unwrap()
        .replace("\"7\"", "\"6\"");
    std::fs::write(&wrong, text).unwrap();
    assert_eq!(run(bin().arg("verify").arg(&wrong)).status.code(), Some(1));

    let broken = scratch("broken.json");
    std::fs::write(
        &broken,
        "{\"group\": {\"kind\": \"cyclic\", \"n\": 4}, \"sets\": [[0, 1], [1, 2]]}",
    )
    .unwrap();
    assert_eq!(run(bin().arg("verify").arg(&broken)).status.code(), Some(2));
    assert_eq!(
        run(bin().arg("verify").arg(scratch("missing.json")))
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_json_and_profile_csv() {
    let csv = scratch("z10_profile.csv");
    let o = run(bin()
        .args(["--json", "verify"])
        .arg(fixture("z10_non_bimodal"))
        .arg("--profile-csv")
        .arg(&csv));
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["rwedf"], "2");
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let rows = std::fs::read_to_string(csv).unwrap();
    // header plus one row per set
    assert_eq!(rows.lines().count(), 5);
}

#[test]
fn construct_then_verify() {
    let out = scratch("m2_edf_3.json");
    let o = run(bin().args(["construct", "m2-edf", "3", "--out"]).arg(&out));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(bin().args(["--json", "verify"]).arg(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["edf"], 1);

    let o = run(bin().args(["construct", "desarguesian", "2", "1", "3"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sets"].as_array().unwrap().len(), 7);

    let o = run(bin().args([
        "construct",
        "complement-pair",
        "--group",
        r#"{"kind":"cyclic","n":7}"#,
        "--set",
        "0,1,3",
    ]));
    assert!(o.status.success());
    assert_eq!(
        run(bin().args(["construct", "no-such-thing"]))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(bin().args(["construct", "m2-gsedf", "2"]))
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_writes_jsonl() {
    let o = run(bin().args([
        "search",
        "--group",
        r#"{"kind":"cyclic","n":10}"#,
        "--sizes",
        "1,1,2,2",
        "--require",
        "rwedf",
        "--dedup",
        "translation",
    ]));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["sets"].as_array().unwrap().len(), 4);
    }
    let single = run(bin().args([
        "--threads",
        "1",
        "search",
        "--group",
        r#"{"kind":"cyclic","n":8}"#,
        "--sizes",
        "3,3,2",
    ]));
    let many = run(bin().args([
        "--threads",
        "3",
        "search",
        "--group",
        r#"{"kind":"cyclic","n":8}"#,
        "--sizes",
        "3,3,2",
    ]));
    assert_eq!(single.stdout, many.stdout);

    let capped = run(bin().args([
        "search",
        "--group",
        r#"{"kind":"cyclic","n":8}"#,
        "--sizes",
        "3,3,2",
        "--cap",
        "5",
    ]));
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(stdout(&capped).lines().count(), 5);
    assert_eq!(
        run(bin().args([
            "search",
            "--group",
            r#"{"kind":"cyclic","n":4}"#,
            "--sizes",
            "3,3"
        ]))
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn simulate_is_seeded() {
    let args = |seed: &str| {
        let mut c = bin();
        c.args(["--json", "--seed", seed, "simulate", "--family"])
            .arg(fixture("d10_star_partition"))
            .args(["--delta", "3", "--trials", "20000"]);
        c
    };
    let (a, b, c) = (
        run(&mut args("5")),
        run(&mut args("5")),
        run(&mut args("6")),
    );
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v[0]["analytic_rate"], "5/6");

    let all = run(bin()
        .args([
            "--json", "simulate", "--all", "--trials", "5000", "--family",
        ])
        .arg(fixture("z8_weighted")));
    let v: serde_json::Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn report_table_and_json() {
    let o = run(bin()
        .arg("report")
        .arg(fixture("z7_complement_pair"))
        .arg(fixture("z3xz3_edf")));
    let text = stdout(&o);
    assert!(o.status.success());
    assert!(text.contains("7/6"));
    assert_eq!(text.lines().count(), 3);

    let empty = run(bin().args(["--json", "report"]));
    assert!(empty.status.success());
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&stdout(&empty)).unwrap(),
        serde_json::json!([])
    );

    // a bad path becomes an error row rather than a failure
    let o = run(bin().args(["--json", "report"]).arg(scratch("absent.json")));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["error"].is_string());
}
