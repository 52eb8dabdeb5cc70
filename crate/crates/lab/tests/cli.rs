use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(bin: &str, args: &[&str]) -> Output {
    Command::new(bin).args(args).env_remove("NFLAB_CAP").output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const NFLAB: &str = env!("CARGO_BIN_EXE_nflab");
const NFL: &str = env!("CARGO_BIN_EXE_nfl");
const DYN: &str = env!("CARGO_BIN_EXE_dyn");
const OPT: &str = env!("CARGO_BIN_EXE_opt");
const BOUNDS: &str = env!("CARGO_BIN_EXE_bounds");
const MARKOV: &str = env!("CARGO_BIN_EXE_markov");

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let ok = run(NFLAB, &["nfl-verify", "-p", "nx=3", "-p", "ny=2", "--out", out, "--quiet"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());
    assert!(Path::new(out).join("manifest.json").exists());

    let usage = run(NFLAB, &["nfl-verify", "-p", "nx=3", "-p", "foo=1", "--out", out]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("foo"));
    assert_eq!(run(NFLAB, &["no-such-experiment"]).status.code(), Some(1));

    let m = dir.path().join("m.json");
    std::fs::write(&m, "[[0.9, 0.1], [0.2, 0.8]]").unwrap();
    let m = m.to_str().unwrap();
    let neg = run(MARKOV, &["geo-check", "--matrix", m, "--zeta", "0.9", "--K", "10"]);
    assert_eq!(neg.status.code(), Some(2));
    assert_eq!(json_out(&neg)["geometric_bound"]["holds"], Value::Bool(false));
    assert_eq!(run(MARKOV, &["geo-check", "--matrix", m, "--zeta", "0.3", "--K", "100"]).status.code(), Some(0));
}

#[test]
fn config_file_and_cap_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"experiment": "nfl-verify", "parameters": {"nx": 3, "ny": 3}, "seed": 5}"#).unwrap();
    let out = dir.path().join("o");
    let o = run(NFLAB, &["nfl-verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["parameters"]["cap"], serde_json::json!(10_000_000u64));
    assert_eq!(manifest["config"]["seed"], serde_json::json!(5));

    let capped = Command::new(NFLAB)
        .args(["nfl-verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .env("NFLAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));

    let mismatch = run(NFLAB, &["dyn-orbit", "--config", cfg.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(1));
    std::fs::write(&cfg, r#"{"experiment": "nfl-verify", "parameters": {"nx": 3"#).unwrap();
    let truncated = run(NFLAB, &["nfl-verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(truncated.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&truncated.stderr).contains("line 1"));
}

#[test]
fn group_tools() {
    let eig = json_out(&run(DYN, &["pso-eig", "--gamma", "4"]));
    assert_eq!(eig["regime"], "bifurcation-boundary");
    assert_eq!(eig["lambda1"]["re"], -1.0);

    let orbit = json_out(&run(DYN, &["orbit", "--map", "firefly-normalized", "--param", "1.5", "--u0", "0.5", "--steps", "10000"]));
    assert_eq!(orbit["classification"]["class"], "fixed-point");

    let scan = run(DYN, &["scan", "--map", "logistic", "--lo", "3.0", "--hi", "4.0", "--samples", "5", "--keep", "4"]);
    let text = String::from_utf8(scan.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("param,iterate_index,value"));
    assert_eq!(text.lines().count(), 21);

    let density = String::from_utf8(run(DYN, &["density", "--lambda", "4", "--n", "5000", "--bins", "5"]).stdout).unwrap();
    assert_eq!(density.lines().count(), 6);

    let opt = run(OPT, &["run", "--algo", "sa", "--objective", "sphere-2", "--seed", "3", "--iters", "40", "--param", "a=0.5"]);
    assert_eq!(opt.status.code(), Some(0), "{}", String::from_utf8_lossy(&opt.stderr));
    assert_eq!(String::from_utf8(opt.stdout).unwrap().lines().count(), 41);

    let t = json_out(&run(BOUNDS, &["ga-t", "--zeta", "0.75", "--mu", "0.5", "--L", "1", "--n", "1"]));
    assert_eq!(t["t"], 2);
    let z = json_out(&run(BOUNDS, &["zeta", "--n", "1", "--n1", "1", "--L", "1", "--mu1", "0.5", "--mu2", "0.5"]));
    assert_eq!(z["result"]["degenerate"], true);
    let temp = json_out(&run(BOUNDS, &["sa-temp", "--A", "1", "--k", "1"]));
    assert!((temp["temperature"].as_f64().unwrap() - 1.0 / std::f64::consts::LN_2).abs() < 1e-15);

    let dir = tempfile::tempdir().unwrap();
    let subset = dir.path().join("s.json");
    std::fs::write(&subset, "[[1, 0, 0, 0]]").unwrap();
    let fl = json_out(&run(NFL, &["freelunch", "--nx", "4", "--ny", "2", "--k", "1", "--subset", subset.to_str().unwrap()]));
    assert_eq!(fl["mean_best_so_far_a"][0], 1.0);
    assert_eq!(fl["mean_best_so_far_b"][0], 0.0);
    assert_eq!(fl["subset_is_cup"], false);
    let v = run(NFL, &["verify", "--nx", "3", "--ny", "3", "--policies", "ascending,greedy,shuffle:4", "--all-k"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json_out(&v)["equal"], true);
    let r = json_out(&run(NFL, &["revisit"]));
    assert_eq!(r["sweep_total"][2], 7);
    assert_eq!(r["stuck_total"][2], 4);

    let m = dir.path().join("m.json");
    std::fs::write(&m, "[[0.9, 0.1], [0.2, 0.8]]").unwrap();
    let st = json_out(&run(MARKOV, &["stationary", "--matrix", m.to_str().unwrap()]));
    assert!((st["stationary"]["pi"][0].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-10);
}
