use std::process::{Command, Output};

fn dualbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualbraid"))
        .args(args)
        .env_remove("DUALBRAID_CATALOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = dualbraid(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn info_reports_degrees_and_catalan() {
    let g29 = json(&["info", "-g", "G29", "--report", "json"]);
    assert_eq!(g29["degrees"], serde_json::json!([4, 8, 12, 20]));
    assert_eq!(g29["reflection_count"], 40);
    assert_eq!(g29["catalan"], 112);
    assert_eq!(g29["schema_version"], 1);
    let e7 = json(&["info", "-g", "E7", "--report", "json"]);
    assert_eq!(e7["degrees"], serde_json::json!([2, 6, 8, 10, 12, 14, 18]));
    assert_eq!(e7["catalan"], 4160);
    let a2 = json(&["--report", "json", "info", "--group", "A2"]);
    assert_eq!(a2["degrees"], serde_json::json!([2, 3]));
    assert_eq!(a2["catalan"], 5);
    let text = stdout(&dualbraid(&["info", "-g", "H3"]));
    assert!(text.contains("Cat(W): 32\n"));
}

#[test]
fn verify_levels() {
    let h3 = json(&["verify", "-g", "H3", "--level", "full", "--report", "json"]);
    assert_eq!(h3["chains"], 50);
    assert_eq!(h3["lattice_pairs"], 32 * 33 / 2);
    assert_eq!(h3["hurwitz"]["orbit"], 50);
    assert!(h3["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    let g34 = json(&["verify", "-g", "G34", "--report", "json"]);
    assert_eq!(g34["catalan"], 1584);
    assert_eq!(g34["chains"], 100842);
    let b2 = json(&["verify", "-g", "B2", "--level", "full", "--report", "json"]);
    assert_eq!(b2["catalan"], 6);
    assert_eq!(b2["chains"], 4);
    // an orbit above the cap is skipped, not failed
    let capped = json(&[
        "verify", "-g", "H3", "--level", "full", "--cap", "10", "--report", "json",
    ]);
    let hurwitz = capped["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "hurwitz")
        .unwrap();
    assert_eq!(hurwitz["status"], "skipped");
}

#[test]
fn exports() {
    let a2 = stdout(&dualbraid(&[
        "export",
        "-g",
        "A2",
        "--what",
        "presentation",
        "--format",
        "text",
    ]));
    assert!(a2.contains("generators r1 r2 r3\n"));
    assert_eq!(a2.lines().filter(|l| l.contains(" = ")).count(), 3);
    let h3 = json(&["export", "-g", "H3", "--what", "poset"]);
    assert_eq!(h3["nodes"], 32);
    let g24 = json(&["export", "-g", "G24", "--what", "orbit", "--format", "json"]);
    assert_eq!(g24["tuples"].as_array().unwrap().len(), 49);

    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let o = dualbraid(&["export", "-g", "G27", "--what", "poset", "-o", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn hurwitz_command() {
    let g24 = json(&["hurwitz", "--group", "G24", "--report", "json"]);
    assert_eq!(g24["hurwitz"]["orbit"], 49);
    assert_eq!(g24["hurwitz"]["formula"], 49);
    let atom = json(&["hurwitz", "-g", "H3", "--element", "atom:2", "--report", "json"]);
    assert_eq!(atom["hurwitz"]["orbit"], 1);
    let o = dualbraid(&["hurwitz", "-g", "E8"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--huge"));
}

#[test]
fn normal_forms() {
    let delta = json(&["nf", "-g", "A3", "--word", "delta,-delta,delta", "--report", "json"]);
    assert_eq!(delta["delta_power"], 1);
    assert_eq!(delta["factors"], serde_json::json!([]));
    let eq = json(&[
        "nf",
        "-g",
        "A2",
        "--word",
        "r1,r3",
        "--compare",
        "r3,r2",
        "--report",
        "json",
    ]);
    assert_eq!(eq["equal"], true);
    let inv = json(&["nf", "-g", "B3", "--word", "r2,-r2,r1,-r1", "--report", "json"]);
    assert_eq!(inv["delta_power"], 0);
    assert_eq!(inv["factors"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    assert_eq!(dualbraid(&[]).status.code(), Some(1));
    assert_eq!(dualbraid(&["verify"]).status.code(), Some(1));
    assert_eq!(
        dualbraid(&["info", "-g", "H3", "--report", "yaml"]).status.code(),
        Some(1)
    );
    assert_eq!(dualbraid(&["--help"]).status.code(), Some(0));
    assert_eq!(dualbraid(&["info", "-g", "G25"]).status.code(), Some(2));
    assert_eq!(dualbraid(&["nf", "-g", "A2", "--word", "r9"]).status.code(), Some(1));
    assert_eq!(
        dualbraid(&["hurwitz", "-g", "A2", "--element", "atom:0"]).status.code(),
        Some(1)
    );
    let capped = dualbraid(&["export", "-g", "H3", "--what", "orbit", "--cap", "10"]);
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn catalog_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../../../catalog/H3.toml").replacen("order = 120", "order = 121", 1);
    std::fs::write(dir.path().join("H3.toml"), text).unwrap();
    let path = dir.path().to_str().unwrap();
    let o = dualbraid(&["info", "-g", "H3", "--catalog", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
    let o = Command::new(env!("CARGO_BIN_EXE_dualbraid"))
        .args(["info", "-g", "H3"])
        .env("DUALBRAID_CATALOG", path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    // families do not touch the catalog
    assert_eq!(
        dualbraid(&["info", "-g", "B4", "--catalog", path]).status.code(),
        Some(0)
    );
    assert_eq!(
        dualbraid(&["--threads", "1", "verify", "-g", "A3"]).status.code(),
        Some(0)
    );
}
