use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn djkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_djkm"))
        .args(args)
        .env_remove("DJKM_WORKERS")
        .env_remove("DJKM_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn families_csv_example() {
    let o = djkm(&["families", "--which", "-4", "--kmax", "10", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("k,c^0,"));
    let row: Vec<&str> = text.lines().find(|l| l.starts_with("2,")).unwrap().split(',').collect();
    assert_eq!(&row[..3], ["2", "0", "4/5"]);
    assert!(row[3..].iter().all(|x| *x == "0"));
}

#[test]
fn reduce_example() {
    let o = djkm(&["reduce", "t^1 u dt"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!({"w-3": "1/2", "w-1": "c/2"}));
    let o = djkm(&["reduce", "t^1,u", "--exact"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["w-3"], json!([[1, 2]]));
    assert_eq!(v["w0"], json!([]));
}

#[test]
fn bracket_examples() {
    let v: Value = serde_json::from_str(&stdout(&djkm(&["bracket", "h:1", "h:-1"]))).unwrap();
    assert_eq!(v, json!({"w:0": [[-2, 1]]}));
    let v: Value = serde_json::from_str(&stdout(&djkm(&["bracket", "h:0", "h1:0", "--c0", "2"]))).unwrap();
    assert_eq!(v, json!({}));
    let closed = stdout(&djkm(&["bracket", "e1:2", "f1:-3"]));
    let kassel = stdout(&djkm(&["bracket", "e1:2", "f1:-3", "--backend", "kassel"]));
    assert_eq!(closed, kassel);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bracket", "e:1", "q:2"][..],
        &["families", "--which", "3"],
        &["reduce", "t^x"],
        &["reduce", "t", "--c0", "1"],
        &["verify-fock", "--c0", "1/0"],
        &["verify-fock", "--params", "1,2,3"],
        &["no-such-command"],
        &["--workers", "0", "corrections"],
    ] {
        let o = djkm(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn verification_failures_exit_one() {
    let ok = djkm(&[
        "verify-fock",
        "--window",
        "1",
        "--c0",
        "2",
        "--kappa0",
        "1",
        "--params",
        "5,1,2,3",
    ]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    let bad = djkm(&[
        "verify-fock",
        "--window",
        "1",
        "--c0",
        "2",
        "--kappa0",
        "1",
        "--params",
        "5,1,2,3",
        "--signs",
        "printed",
    ]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("FAIL"));
    let bad = djkm(&[
        "verify-relations",
        "--heisenberg-window",
        "2",
        "--oscillator-window",
        "1",
        "--signs",
        "printed",
    ]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn reports_are_deterministic_and_readable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let path = dir.path().join(name);
        let o = djkm(&[
            "--workers",
            workers,
            "verify-fock",
            "--window",
            "1",
            "--c0",
            "3/5",
            "--kappa0",
            "-4",
            "--r",
            "0",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v["wall_time_s"].is_number());
        v.as_object_mut().unwrap().remove("wall_time_s");
        (path, v)
    };
    let (path, a) = run("a.json", "1");
    let (_, b) = run("b.json", "3");
    assert_eq!(a, b);
    assert_eq!(a["schema"], json!(1));
    assert_eq!(a["counts"]["failed"], json!(0));
    assert_eq!(a["counts"]["checked"], json!(2 * 5 * 21 * 9));
    let o = djkm(&["report", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);

    let mut broken = a.clone();
    broken["counts"]["failed"] = json!(3);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, broken.to_string()).unwrap();
    assert_eq!(code(&djkm(&["report", bad.to_str().unwrap()])), 1);
    std::fs::write(&bad, "{}").unwrap();
    assert_eq!(code(&djkm(&["report", bad.to_str().unwrap()])), 2);
}

#[test]
fn states_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let states = dir.path().join("states.json");
    std::fs::write(
        &states,
        r#"[[{"monomial": [["x1", -2, 1], ["y1", -1, 1]], "v": 1, "coeff": [2, 3]}], [{"monomial": [], "v": 0}]]"#,
    )
    .unwrap();
    let cfg = dir.path().join("djkm.conf");
    std::fs::write(
        &cfg,
        "# defaults\nworkers = 2\nwindow = 1\nc0 = -7/3\nkappa0 = 0\nr = 1\n",
    )
    .unwrap();
    let report = dir.path().join("r.json");
    let o = djkm(&[
        "--config",
        cfg.to_str().unwrap(),
        "verify-fock",
        "--states",
        states.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["task"]["c0"], json!(["-7/3"]));
    assert_eq!(v["task"]["r"], json!([1]));
    assert_eq!(v["counts"]["checked"], json!(2 * 2 * 21 * 9));

    // flags win over the config file
    let o = djkm(&[
        "--config",
        cfg.to_str().unwrap(),
        "verify-fock",
        "--window",
        "0",
        "--r",
        "0",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["task"]["window"], json!(0));
    assert_eq!(v["task"]["r"], json!([0]));
}

#[test]
fn worker_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_djkm"))
        .args(["verify-algebra", "--window", "1", "--pair-window", "1"])
        .env("DJKM_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_djkm"))
        .args(["verify-algebra", "--window", "1", "--pair-window", "1"])
        .env("DJKM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

fn copy_dir(from: &Path, to: &Path) {
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

#[test]
fn snapshots_match_and_corruption_is_reported() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let o = djkm(&["snapshot", "--golden-dir", golden.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    copy_dir(&golden, dir.path());
    let target = dir.path().join("family_-3_k20.json");
    let text = std::fs::read_to_string(&target).unwrap().replacen("20", "21", 1);
    std::fs::write(&target, text).unwrap();
    let o = djkm(&["snapshot", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL    family_-3_k20.json: first difference at line"));

    let o = djkm(&["snapshot", "--golden-dir", dir.path().to_str().unwrap(), "--update"]);
    assert_eq!(code(&o), 0);
    let o = djkm(&["snapshot", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn corrections_table() {
    let v: Value = serde_json::from_str(&stdout(&djkm(&["corrections"]))).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(v[0]["corrected"].as_str().unwrap().contains("kappa0"));
}
