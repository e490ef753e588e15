use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gausslat"));
    c.env_remove("GAUSSLAT_CACHE");
    c
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("gausslat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn verify_lattices_to_file() {
    let d = scratch("lat");
    let path = d.join("r.json");
    let out = bin().args(["verify-lattices", "--out"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["bw16_kissing"], 4320);
}

#[test]
fn corrupted_cache_is_recomputed() {
    let d = scratch("cache");
    let first = bin().arg("verify-lattices").env("GAUSSLAT_CACHE", &d).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(report(&first)["report"]["cache"], "miss");
    let hit = bin().arg("verify-lattices").arg("--cache-dir").arg(&d).output().unwrap();
    assert_eq!(report(&hit)["report"]["cache"], "hit");
    for e in std::fs::read_dir(&d).unwrap() {
        let p = e.unwrap().path();
        let mut text = std::fs::read_to_string(&p).unwrap();
        text = text.replacen("[[", "[[[7,7],", 1);
        std::fs::write(&p, text).unwrap();
    }
    let out = bin().arg("verify-lattices").arg("--cache-dir").arg(&d).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["report"]["cache"], "corrupt");
    assert!(v["report"]["warning"].is_string());
    assert_eq!(v["report"]["bw16_kissing"], 4320);
}

#[test]
fn diagram_with_dot() {
    let d = scratch("dot");
    let dot = d.join("d.dot");
    let out = bin().args(["diagram", "--dot"]).arg(&dot).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["report"]["Q_order"], 43008);
    assert_eq!(v["report"]["relation_pairs"], 496);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph D"));
}

#[test]
fn near_tau_is_thread_independent() {
    let one = bin().args(["near-tau", "--threads", "1"]).output().unwrap();
    let two = bin().args(["near-tau", "--threads", "2"]).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    let (a, b) = (report(&one), report(&two));
    assert_eq!(a["report"]["mirrors_found"], 32);
    assert_eq!(a["report"]["tau_on_mirror"], false);
    assert_eq!(a, b);
}

#[test]
fn generate_then_replay() {
    let d = scratch("gen");
    let paths = d.join("bwpath.ndjson");
    let out = bin().args(["generate", "--emit-paths"]).arg(&paths).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let g = report(&out);
    assert_eq!(g["report"]["roots_total"], 123426);
    assert_eq!(g["report"]["stuck_all_in_S2"], true);
    let out = bin().args(["generate", "--verify-paths"]).arg(&paths).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["report"]["sha256"], g["inputs"]["path_sha256"]);
    assert_eq!(v["report"]["failures"].as_array().unwrap().len(), 0);

    // a tampered word fails verification with exit code 1
    let text = std::fs::read_to_string(&paths).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let k = lines.iter().position(|l| l.contains("\"word\":[") && !l.contains("\"word\":[]")).unwrap();
    lines[k] = lines[k].replacen("\"word\":[", "\"word\":[1,", 1);
    std::fs::write(&paths, lines.join("\n") + "\n").unwrap();
    let out = bin().args(["generate", "--verify-paths"]).arg(&paths).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin().arg("no-such-command").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["generate", "--verify-paths", "/nonexistent/paths.ndjson"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn small_property_run() {
    let out = bin().args(["properties", "--pairs", "10", "--triples", "20", "--points", "50", "--seed", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["seed"], 9);
}

#[test]
fn env_cache_overrides_flag() {
    let (a, b) = (scratch("env-a"), scratch("env-b"));
    let out = bin().arg("verify-lattices").arg("--cache-dir").arg(&b).env("GAUSSLAT_CACHE", &a).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_dir(&a).unwrap().next().is_some());
    assert!(std::fs::read_dir(&b).unwrap().next().is_none());
}
