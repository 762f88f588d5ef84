use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

fn permpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn verify(name: &str) -> Output {
    permpoly(&["verify", instance(name).to_str().unwrap()])
}

#[test]
fn dickson_type_example_permutes() {
    let o = verify("example21.toml");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("predicate     permutation"));
    assert!(s.contains("oracle        permutation (image 512 of 512)"));
    assert!(s.contains("AGREEMENT"));
}

#[test]
fn vanishing_h_is_not_a_permutation() {
    let o = verify("thm31_vanishing.toml");
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("predicate     not a permutation"));
    assert!(s.contains("oracle        not a permutation"));
    assert!(s.contains("AGREEMENT"));
}

#[test]
fn every_shipped_instance_agrees() {
    for name in [
        "thm31_quadratic.toml",
        "identity.toml",
        "translator.toml",
        "sum_two_terms.toml",
    ] {
        let o = verify(name);
        assert!(matches!(o.status.code(), Some(0 | 1)), "{name}");
        assert!(stdout(&o).contains("AGREEMENT"), "{name}");
    }
}

#[test]
fn malformed_input_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        "construction = \"thm31\"\nfield = { p = 5, n = 1, m = 2 }\nj = 1\nh = \"2,x,1\"\n",
    )
    .unwrap();
    let o = permpoly(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(permpoly(&["audit", "thm99"]).status.code() == Some(64));
    assert!(
        permpoly(&["audit", "thm31", "--q", "6", "--m", "2", "--j", "1"])
            .status
            .code()
            == Some(64)
    );
}

#[test]
fn hypothesis_violation_exits_65() {
    let o = verify("gcd_violation.toml");
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(2, 24)"));
}

#[test]
fn audits_from_the_examples() {
    let o = permpoly(&[
        "audit",
        "thm31",
        "--q",
        "5",
        "--m",
        "2",
        "--j",
        "1",
        "--max-deg",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("instances checked  125"));
    assert!(stdout(&o).contains("disagreements      0"));

    let o = permpoly(&[
        "audit",
        "thm32",
        "--q",
        "4",
        "--m",
        "2",
        "--j",
        "7",
        "--max-deg",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("disagreements      0"));

    let o = permpoly(&[
        "audit",
        "thm21",
        "--preset",
        "example21",
        "--m",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["instances_checked"], 7);
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn oversized_family_is_sampled_with_recorded_seed() {
    let args = [
        "audit",
        "thm41",
        "--q",
        "4",
        "--m",
        "2",
        "--max-instances",
        "300",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let a = permpoly(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["instances_checked"], 300);
    assert_eq!(a.stdout, permpoly(&args).stdout);
}

#[test]
fn trace_translators() {
    let o = permpoly(&[
        "translators",
        "--f",
        "tr",
        "--q",
        "4",
        "--m",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 15);
    // Tr(y) = 1 for the generator y (code 4)
    assert!(rows.contains(&"4,1"));
}

#[test]
fn export_identity_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = permpoly(&[
        "export",
        instance("identity.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("input_code,output_code"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 16);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(*row, format!("{i},{i}"));
    }
}

#[test]
fn search_finds_quadratic() {
    let o = permpoly(&[
        "search",
        "thm31",
        "--q",
        "5",
        "--m",
        "2",
        "--j",
        "1",
        "--max-deg",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "2,1,1"));
}

#[test]
fn field_info_and_determinism() {
    let f = instance("f512.toml");
    let args = [
        "field-info",
        "--field",
        f.to_str().unwrap(),
        "--format",
        "json",
    ];
    let a = permpoly(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["size"], 512);
    assert_eq!(v["base_poly"], serde_json::json!([1, 1, 0, 1]));

    let e = instance("example21.toml");
    let run = |w: &str| {
        permpoly(&[
            "verify",
            e.to_str().unwrap(),
            "--format",
            "json",
            "--workers",
            w,
        ])
        .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn size_limit_is_enforced() {
    let o = permpoly(&["field-info", "--q", "8", "--m", "3", "--size-limit", "100"]);
    assert_eq!(o.status.code(), Some(64));
}
