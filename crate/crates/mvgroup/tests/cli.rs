use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn mvgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvgroup")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn growth_csv_for_nat() {
    let cfg = example("nat.json");
    let o = mvgroup(&["growth", "-c", cfg.to_str().unwrap(), "--center", "3", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r,ball,sphere\n0,1,1\n1,3,2\n2,5,2\n");
}

#[test]
fn growth_json_has_schema_and_elements() {
    let cfg = example("nat.json");
    let o = mvgroup(&["growth", "-c", cfg.to_str().unwrap(), "--center", "0", "--radius", "3", "--format", "json", "--emit-elements"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"][3]["ball"], 4);
    assert_eq!(v["rows"][3]["elements"], serde_json::json!(["3"]));
}

#[test]
fn bounded_dynamics_with_classification() {
    let cfg = example("z3xF2_example46.json");
    let o = mvgroup(&["dynamics", "-c", cfg.to_str().unwrap(), "--z", "h", "--steps", "20", "--classify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let xi: Vec<usize> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(xi.len(), 21);
    assert!(xi.iter().all(|&v| v <= 2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bounded"));
}

#[test]
fn dynamics_bounds_columns() {
    let cfg = example("free2_swap.json");
    let o = mvgroup(&["dynamics", "-c", cfg.to_str().unwrap(), "--z", "g1", "--steps", "6", "--bounds"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("r,xi,lower_bound,upper_bound,verdict\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));
}

#[test]
fn mutated_nat_fails_axioms() {
    let cfg = example("nat_mutated.json");
    let o = mvgroup(&["axioms", "-c", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL axioms unit"));
    assert!(text.contains("witness="));
}

#[test]
fn golden_configs_pass_axioms() {
    for name in ["nat.json", "z_pm1.json", "s3_conj.json", "s3_doublecoset.json", "heis_swap.json"] {
        let cfg = example(name);
        let o = mvgroup(&["axioms", "-c", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn powers_and_compare() {
    let cfg = example("nat.json");
    let o = mvgroup(&["powers", "-c", cfg.to_str().unwrap(), "--x", "1", "--radius", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("r,bstar,sstar_size\n"));
    let o = mvgroup(&["compare", "-c", cfg.to_str().unwrap(), "--gens2", "1,2", "--center2", "5", "--radius", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("constant l=4"));
}

#[test]
fn verify_suite_prints_pass_lines() {
    let cfg = example("nat.json");
    let o = mvgroup(&["verify", "-c", cfg.to_str().unwrap(), "--suite", "example32", "--radius", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS example32 r=")));
}

#[test]
fn output_is_deterministic() {
    let cfg = example("heis_swap.json");
    let args = ["verify", "-c", cfg.to_str().unwrap(), "--suite", "thm43", "--radius", "4"];
    assert_eq!(mvgroup(&args).stdout, mvgroup(&args).stdout);
}

#[test]
fn bad_config_exits_2() {
    let dir = std::env::temp_dir().join(format!("mvgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"schema": 1, "mv": {"kind": "coset"}, "X_generators": []}"#).unwrap();
    let o = mvgroup(&["growth", "-c", path.to_str().unwrap(), "--center", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = mvgroup(&["growth", "-c", dir.join("missing.json").to_str().unwrap(), "--center", "0"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_element_exits_2() {
    let cfg = example("heis_swap.json");
    let o = mvgroup(&["growth", "-c", cfg.to_str().unwrap(), "--center", "q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let cfg = example("free2_swap.json");
    let o = mvgroup(&["--budget", "10", "growth", "-c", cfg.to_str().unwrap(), "--center", "e", "--radius", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_and_usage() {
    assert_eq!(mvgroup(&["--help"]).status.code(), Some(0));
    assert_eq!(mvgroup(&["frobnicate"]).status.code(), Some(2));
}
