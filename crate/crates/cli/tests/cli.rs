use std::path::PathBuf;
use std::process::Command;

use labprim::io::{graph_to_json, parse_graph};
use labprim_core::fixtures;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn labprim(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_labprim")).args(args).output().unwrap();
    Run {
        status: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn graph_json_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let g = fixtures::random_graph(&mut rng, 5, 3);
        let text = graph_to_json(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(graph_to_json(&back), text);
    }
    let g2 = labprim::io::read_graph(&fixture("g2.json")).unwrap();
    assert_eq!(g2, fixtures::g2());
}

#[test]
fn unknown_keys_are_rejected() {
    let bad = r#"{"vertices": ["v"], "edges": [{"src": "v", "dst": "v", "label": "a", "weight": 1}]}"#;
    assert!(parse_graph(bad).is_err());
    let bad = r#"{"vertices": ["v"], "edges": [], "name": "x"}"#;
    assert!(parse_graph(bad).is_err());
}

#[test]
fn missing_input_is_status_2() {
    let run = labprim(&["family", "missing.json"]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("cannot read input"), "{}", run.stderr);
    assert!(run.stdout.is_empty());
}

#[test]
fn unknown_vertex_is_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    std::fs::write(&file, r#"{"vertices": ["v"], "edges": [{"src": "v", "dst": "x", "label": "a"}]}"#).unwrap();
    let run = labprim(&["validate", file.to_str().unwrap()]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("unknown vertex \"x\""), "{}", run.stderr);
}

#[test]
fn validate_reports_the_g1_counterexample() {
    let run = labprim(&["validate", &path("g1.json")]);
    assert_eq!(run.status, 1);
    let v = json(&run);
    assert_eq!(v["space"]["is_weakly_left_resolving"], false);
    let c = &v["space"]["weakly_left_resolving_counterexample"];
    assert_eq!(c["a"], serde_json::json!(["1"]));
    assert_eq!(c["b"], serde_json::json!(["2"]));
    assert_eq!(c["letter"], "b");
    assert_eq!(v["graph"]["is_left_resolving"], false);
    assert_eq!(v["graph"]["left_resolving_violations"][0]["vertex"], "2");
}

#[test]
fn unverified_space_blocks_other_commands() {
    let run = labprim(&["family", &path("g1.json")]);
    assert_eq!(run.status, 1);
    assert!(run.stderr.contains("assumption violated"), "{}", run.stderr);

    let run = labprim(&["family", &path("g1.json"), "--allow-unverified"]);
    assert_eq!(run.status, 0);
    let run = labprim(&["ideals", &path("g1.json"), "--allow-unverified"]);
    assert_eq!(run.status, 1);
    assert!(run.stderr.contains("space unverified"));
}

#[test]
fn family_lists_the_power_set_of_g2() {
    let run = labprim(&["family", &path("g2.json")]);
    assert_eq!(run.status, 0);
    let sets: Vec<Vec<String>> = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(sets.len(), 8);
    assert_eq!(sets[0], Vec::<String>::new());
    assert_eq!(sets[3], ["u", "v", "w"]);
}

#[test]
fn prim_on_g2() {
    let run = labprim(&["prim", &path("g2.json")]);
    assert_eq!(run.status, 0);
    let v = json(&run);
    assert_eq!(v["tails"].as_array().unwrap().len(), 2);
    assert_eq!(v["closed_sets"], serde_json::json!([[], [1], [0, 1]]));
    assert_eq!(v["specialization_edges"], serde_json::json!([[0, 1]]));
    assert_eq!(v["homeomorphism_verified"], true);
    assert_eq!(v["is_t0"], true);
    // Tail 1 is the family of sets containing u.
    assert_eq!(v["tails"][1]["sets"].as_array().unwrap().len(), 4);
}

fn count(text: &str, pat: &str) -> usize {
    text.matches(pat).count()
}

#[test]
fn dot_exports() {
    let run = labprim(&["ideals", &path("g2.json"), "--dot"]);
    assert!(run.stdout.starts_with("digraph lattice {"));
    assert_eq!(count(&run.stdout, "[label="), 3);
    assert_eq!(count(&run.stdout, "->"), 2);

    let run = labprim(&["prim", &path("g2.json"), "--dot"]);
    assert!(run.stdout.starts_with("digraph prim_order {"));
    assert_eq!(count(&run.stdout, "[label="), 2);
    assert_eq!(count(&run.stdout, "->"), 1);

    let run = labprim(&["prim", &path("g3.json"), "--dot"]);
    assert_eq!(count(&run.stdout, "[label="), 1);
    assert_eq!(count(&run.stdout, "->"), 0);
}

#[test]
fn quotient_of_g2_by_the_middle_ideal() {
    let run = labprim(&["quotient", &path("g2.json"), "--ideal", "1"]);
    assert_eq!(run.status, 0);
    let v = json(&run);
    assert_eq!(v["union"], serde_json::json!(["v", "w"]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["is_congruence"], true);

    let run = labprim(&["quotient", &path("g2.json"), "--ideal", "9"]);
    assert_eq!(run.status, 2);
}

#[test]
fn tail_from_word_reports_unrealizable_words() {
    let run = labprim(&["tail-from-word", &path("g2.json"), "--set", "v", "--prefix", "c", "--cycle", "d"]);
    assert_eq!(run.status, 0);
    let v = json(&run);
    assert_eq!(v["verified"], true);
    assert_eq!(v["tail"].as_array().unwrap().len(), 7);
    assert_eq!(v["complement_id"], 0);

    let run = labprim(&["tail-from-word", &path("g2.json"), "--set", "w", "--cycle", "a"]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("not realizable"));

    let run = labprim(&["tail-from-word", &path("g2.json"), "--set", "v", "--cycle", "z"]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("unknown label"));
}

#[test]
fn user_supplied_family() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"[[], ["v"]]"#).unwrap();
    let run = labprim(&["ideals", &path("g3.json"), "--family", good.to_str().unwrap()]);
    assert_eq!(run.status, 0, "{}", run.stderr);
    assert_eq!(json(&run)["ideals"].as_array().unwrap().len(), 2);

    // {u} and {v} without their union.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[[], ["u"], ["v"], ["w"], ["u", "v"], ["v", "w"], ["u", "w"]]"#).unwrap();
    let run = labprim(&["validate", &path("g2.json"), "--family", bad.to_str().unwrap()]);
    assert_eq!(run.status, 1);
    let v = json(&run);
    assert_eq!(v["space"]["is_accommodating"], false);
    assert!(v["space"]["accommodating_violation"]["rule"].is_string());
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tails.json");
    let run = labprim(&["tails", &path("g2.json"), "--output", out.to_str().unwrap()]);
    assert_eq!(run.status, 0);
    assert!(run.stdout.is_empty());
    let direct = labprim(&["tails", &path("g2.json")]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), direct.stdout);
}

#[test]
fn check_oracle_prints_its_seed() {
    let run = labprim(&["check-oracle", "--seed", "5", "--instances", "25"]);
    assert_eq!(run.status, 0, "{}", run.stdout);
    let v = json(&run);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["instances"], 25);
    assert_eq!(v["passed"], true);
    assert!(v["first_divergence"].is_null());
}

#[test]
fn check_oracle_rejects_a_family_flag() {
    let run = labprim(&["check-oracle", "--family", "x.json"]);
    assert_eq!(run.status, 2);
}
