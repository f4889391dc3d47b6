use std::process::Command;

use domclose_cli::run_command;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> domclose_cli::Output {
    run_command(std::iter::once("domclose").chain(args.iter().copied()))
}

fn quiet(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["-q"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    (out.code, serde_json::from_str(&out.stdout).expect("one JSON document"))
}

#[test]
fn check_reports_marks_and_fails() {
    let dstar = data("dstar.json");
    let out = run(&["check", &dstar, "--props", "expansive,monotone,idempotent"]);
    assert_eq!(out.code, 1);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[0].starts_with("expansive") && lines[0].ends_with('✓'));
    assert!(lines[1].starts_with("monotone") && lines[1].ends_with('✓'));
    assert!(lines[2].starts_with("idempotent") && lines[2].contains("✗  witness {a}"));

    let ok = run(&["check", &dstar, "--props", "expansive,monotone,dominating"]);
    assert_eq!(ok.code, 0);

    let (code, v) = quiet(&["check", &dstar, "--props", "matroid"]);
    assert_eq!(code, 1);
    assert_eq!(v["properties"][0]["holds"], false);
    assert!(v["properties"][0]["precondition"].as_str().unwrap().starts_with("closure"));
}

#[test]
fn default_check_skips_closure_only_properties_for_non_closures() {
    let out = run(&["check", &data("dstar.json")]);
    assert!(!out.stdout.contains("matroid"));
    let star = run(&["check", &data("star.json")]);
    assert!(star.stdout.contains("antimatroid"));
}

#[test]
fn closure_modes() {
    let nc = data("noncommuting.json");
    assert_eq!(run(&["closure", &nc, "--set", "a"]).stdout, "{a}\n");
    assert_eq!(run(&["closure", &nc, "--set", "a", "--mode", "eq1"]).stdout, "{a}\n");
    let both = run(&["closure", &nc, "--set", "a,b", "--mode", "both"]);
    assert_eq!(both.code, 0);
    assert_eq!(both.stdout, "eq1 {a,b,c}\neq2 {a,b,c}\n");
}

#[test]
fn generator_commands() {
    let dstar = data("dstar.json");
    let (_, v) = quiet(&["gamma", &dstar, "--set", "a,b"]);
    assert_eq!(v["image"], "{a,b,c,d}");
    assert_eq!(v["minimal_generators"], serde_json::json!(["{a,b}"]));
    let (_, v) = quiet(&["eta", &dstar, "--set", "d"]);
    assert_eq!(v["eta"], "{}");
    let (_, v) = quiet(&["generators", &dstar, "--target", "c", "--closure"]);
    assert_eq!(v["generators"], serde_json::json!([]));
    let (_, v) = quiet(&["generators", &dstar, "--target", "c,d", "--closure"]);
    assert_eq!(v["generators"], serde_json::json!(["{c}", "{c,d}"]));
    assert_eq!(v["minimal"], serde_json::json!(["{c}"]));
}

#[test]
fn pullback_and_galois_exit_codes() {
    assert_eq!(run(&["pullback", &data("star.json")]).code, 0);
    assert_eq!(run(&["pullback", &data("dstar.json")]).code, 1);
    assert_eq!(run(&["galois", &data("galois-inclusion.json")]).code, 0);
    let bad = run(&["galois", &data("star-not-galois.json")]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("contractive"));
    assert_eq!(run(&["galois", &data("dstar.json")]).code, 2);
}

#[test]
fn continuity_report() {
    let (code, v) = quiet(&["continuity", &data("dstar-continuity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["continuous"], true);
}

#[test]
fn enumerate_counts_and_lists_loadable_documents() {
    let expected = [(0, 1), (1, 2), (2, 7), (3, 61), (4, 2480)];
    for (n, count) in expected {
        let (_, v) = quiet(&["enumerate", "--n", &n.to_string(), "--class", "closure"]);
        assert_eq!(v["count"], count);
    }
    let (_, v) = quiet(&["enumerate", "--n", "2", "--class", "dominating", "--list"]);
    let ops = v["operators"].as_array().unwrap();
    assert_eq!(ops.len(), v["count"].as_u64().unwrap() as usize);
    let dir = std::env::temp_dir().join(format!("domclose-enum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, op) in ops.iter().enumerate() {
        let path = dir.join(format!("{i}.json"));
        let doc = serde_json::json!({ "ground": ["a", "b"], "operator": op });
        std::fs::write(&path, doc.to_string()).unwrap();
        let out = run(&["check", path.to_str().unwrap(), "--props", "dominating"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
    }
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(run(&["enumerate", "--n", "9", "--class", "closure"]).code, 2);
}

#[test]
fn search_exit_codes_and_replay() {
    let (code, v) = quiet(&["search", "--claim", "p.CLO.REG", "--seed", "7", "--budget", "1000", "--n", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "counterexample");
    let dir = std::env::temp_dir().join(format!("domclose-cx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cx.json");
    std::fs::write(&path, v["counterexample"]["instance"].to_string()).unwrap();
    let replay = run(&["check", path.to_str().unwrap(), "--props", "dominating"]);
    assert_eq!(replay.code, 0);
    std::fs::remove_dir_all(&dir).ok();

    let (code, v) = quiet(&["search", "--claim", "p.CLO.REG/extended", "--budget", "300", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "no-counterexample-found");

    assert_eq!(run(&["search", "--claim", "nope"]).code, 2);
    assert_eq!(run(&["search", "--claim", "p.RC", "--n", "9"]).code, 2);
}

#[test]
fn claims_are_listed() {
    let (_, v) = quiet(&["claims"]);
    let ids: Vec<&str> = v["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in ["p.RC", "p.CLO.REG", "p.ANTIMATROID", "p.UGGC", "matroid-pushout"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn verify_paper_lists_every_claim() {
    let (_, v) = quiet(&["verify-paper", "--budget", "50"]);
    let entries = v["entries"].as_array().unwrap();
    for claim in domclose::search::CLAIMS {
        assert!(entries.iter().any(|e| e["name"].as_str().unwrap().starts_with(claim.id)), "{}", claim.id);
    }
}

#[test]
fn validation_errors() {
    let dir = std::env::temp_dir().join(format!("domclose-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"ground":["a","b"],"operator":{"kind":"family","closed":[["a"]]}}"#).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(!out.stderr.is_empty());
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(run(&["closure", "/nonexistent.json", "--set", "a"]).code, 2);
    assert_eq!(run(&["closure", &data("dstar.json"), "--set", "a", "--mode", "eq3"]).code, 2);
}

#[test]
fn binary_prints_and_exits() {
    let out = Command::new(env!("CARGO_BIN_EXE_domclose"))
        .args(["closed-sets", &data("dstar.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{}\n{a}\n{b}\n{d}\n{c,d}\n{a,c,d}\n{b,c,d}\n{a,b,c,d}\n"
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_domclose")).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
