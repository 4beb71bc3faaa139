use std::path::PathBuf;
use std::process::{Command, Output};

fn sigmaperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmaperm"))
        .args(args)
        .env_remove("SIGMAPERM_CUTOFF")
        .env_remove("SIGMAPERM_JOBS")
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/g1260")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn version_names_the_report_schema() {
    let o = sigmaperm(&["--version"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sigmaperm-report/1"));
}

#[test]
fn analyze_the_example_group() {
    let o = sigmaperm(&[
        "analyze", "--group", "g1260", "--sigma", "2,3,5|7", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 1260);
    assert_eq!(v["sigma_soluble"], true);
    assert_eq!(v["soluble"], false);
    assert_eq!(v["hall_blocks"][0]["order"], 180);
}

#[test]
fn weak_sigma_permutability_of_b() {
    let b = data("B.grp");
    let o = sigmaperm(&[
        "predicate",
        "weakly-sigma-permutable",
        "--group",
        "g1260",
        "--sub",
        &b,
        "--sigma",
        "2,3,5|7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true, witness |T| = 105");
    let o = sigmaperm(&[
        "predicate",
        "weakly-s-permutable",
        "--group",
        "g1260",
        "--sub",
        &b,
    ]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn sigma_core_of_h_is_b() {
    let h = data("H.grp");
    let o = sigmaperm(&[
        "predicate",
        "sigma-core",
        "--group",
        "g1260",
        "--sub",
        &h,
        "--sigma",
        "2,3,5|7",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], false);
    assert_eq!(v["detail"], "σ-core order 12");
    assert_eq!(v["witness"]["verified"], true);
}

#[test]
fn t1_is_sigma_subnormal() {
    let o = sigmaperm(&[
        "predicate",
        "sigma-subnormal",
        "--group",
        "g1260",
        "--sub",
        &data("T1.grp"),
        "--sigma",
        "2,3,5|7",
    ]);
    assert!(stdout(&o).starts_with("true"));
}

#[test]
fn example12_exits_zero() {
    let o = sigmaperm(&["example12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        7
    );
}

#[test]
fn campaign_json_validates_against_the_schema() {
    let dir = std::env::temp_dir().join(format!("sigmaperm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = sigmaperm(&[
        "campaign",
        "--max-order",
        "20",
        "--format",
        "json",
        "--jobs",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let schema: serde_json::Value = serde_json::from_str(sigmaperm_harness::SCHEMA).unwrap();
    assert!(jsonschema::is_valid(&schema, &doc));
    assert_eq!(doc["config"]["max_order"], 20);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cutoff_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sigmaperm"))
        .args(["analyze", "--group", "s5"])
        .env("SIGMAPERM_CUTOFF", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the cutoff 100"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sigmaperm(&[]).status.code(), Some(2));
    assert_eq!(
        sigmaperm(&["analyze", "--group", "s4", "--sigma", "2|4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sigmaperm(&["analyze", "--group", "no_such_group"])
            .status
            .code(),
        Some(2)
    );
    // a subgroup file on the wrong points
    let o = sigmaperm(&[
        "predicate",
        "subnormal",
        "--group",
        "s4",
        "--sub",
        &data("B.grp"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generators_outside_the_group_are_rejected() {
    let dir = std::env::temp_dir().join(format!("sigmaperm-sub-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("odd.grp");
    std::fs::write(&f, "5\n(0 1)\n").unwrap();
    let o = sigmaperm(&[
        "predicate",
        "subnormal",
        "--group",
        "a5",
        "--sub",
        f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the group"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn list_catalog_names_the_example() {
    let o = sigmaperm(&["list-catalog", "--max-order", "24"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("g1260"));
    assert!(s.contains("symmetric(4)"));
}

#[test]
fn shipped_subgroup_files_match_the_catalog() {
    let ex = sigmaperm::catalog::example_1_2();
    for (file, g) in [
        ("A.grp", &ex.a),
        ("A5.grp", &ex.a5),
        ("A5C3.grp", &ex.a5c3),
        ("B.grp", &ex.b),
        ("C3.grp", &ex.c3),
        ("C7.grp", &ex.c7),
        ("F21.grp", &ex.f21),
        ("H.grp", &ex.h),
        ("T1.grp", &ex.t1),
        ("T2.grp", &ex.t2),
    ] {
        let loaded = sigmaperm::format::load_group(data(file)).unwrap();
        assert!(
            loaded.is_subgroup_of(g) && g.is_subgroup_of(&loaded),
            "{file}"
        );
    }
}
