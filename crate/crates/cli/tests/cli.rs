use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_immcalc")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {stdout}"));
    (out.status.code().expect("exit code"), json)
}

#[test]
fn eval_reports_invariants() {
    let (code, v) = run(&["eval", "P(A,4;2) + SxS"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let r = &v["result"];
    assert_eq!((r["chi"].as_i64(), r["sigma"].as_i64(), r["det"].as_i64()), (Some(7), Some(4), Some(-5)));
    assert_eq!(r["parity"], "even");
    assert_eq!(r["boundary"]["type"], "L(5,1)");

    let (_, v) = run(&["eval", "E(-1)"]);
    assert_eq!((v["result"]["chi"].as_i64(), v["result"]["sigma"].as_i64()), (Some(2), Some(-1)));
    assert_eq!(v["result"]["det"], -1);

    let (_, v) = run(&["eval", "CP2 + CP2 + CP2bar"]);
    assert_eq!((v["result"]["sigma"].as_i64(), v["result"]["det"].as_i64()), (Some(1), Some(-1)));
    assert_eq!(v["result"]["parity"], "odd");
}

#[test]
fn eval_parse_error_exits_2() {
    let (code, v) = run(&["eval", "P(A,4;2) +"]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn family_examples() {
    let (code, v) = run(&["family", "f", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["omega"], serde_json::json!([35, 0]));
    assert_eq!(v["result"]["generator"], true);

    let (_, v) = run(&["family", "g", "--n", "2", "--trace"]);
    assert_eq!(v["result"]["omega"], serde_json::json!([39, 0]));
    assert_eq!((v["result"]["bordism"].as_u64(), v["result"]["generator"].as_bool()), (Some(15), Some(false)));
    let trace = v["result"]["trace"].as_array().unwrap();
    assert!(trace.iter().all(|t| t["anchor"].as_str().is_some_and(|a| !a.is_empty())));

    let (_, v) = run(&["family", "f", "--n", "1"]);
    assert_eq!(v["result"]["omega"], serde_json::json!([0, 0]));

    assert_eq!(run(&["family", "f", "--n", "0"]).0, 2);
}

#[test]
fn verify_ranges() {
    let (code, v) = run(&["verify", "A-blowdown", "2..6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"]["certified"], 5);

    let (code, v) = run(&["verify", "A-stable", "1..3"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["literal_holds"], false);
    let inst = &v["result"]["instances"][0];
    assert_eq!(inst["status"], "literal-fails-twisted-certified");
    assert_eq!(inst["variants"][0]["mismatch"]["invariant"], "parity");
    assert_eq!(inst["variants"][1]["certificate"]["verified"], true);

    assert_eq!(run(&["verify", "B-stable", "1"]).0, 2);
    assert_eq!(run(&["verify", "A-stable", "0..2"]).0, 2);
}

#[test]
fn kirby_corpus() {
    for name in [
        "cp2_trade.ks",
        "framing_once_plus.ks",
        "framing_once_minus.ks",
        "framing_two_components.ks",
        "framing_twice.ks",
    ] {
        let (code, v) = run(&["kirby", "run", corpus(name).to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {v}");
        assert_eq!(v["result"]["status"], "pass");
    }
    let (code, v) = run(&["kirby", "run", corpus("linked_blowdown.ks").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["failure"]["line"], 3);
    assert!(v["result"]["failure"]["reason"].as_str().unwrap().contains("nonzero linking"));

    assert_eq!(run(&["kirby", "run", "/nonexistent/script.ks"]).0, 2);
}

#[test]
fn kirby_script_parse_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "start CP2\nslide 1").unwrap();
    let (code, v) = run(&["kirby", "run", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn group_and_lemma() {
    let (code, v) = run(&["group", "dic", "--n", "5", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 20);
    assert_eq!(v["result"]["abelianization"], "Z4");
    assert_eq!(v["result"]["extension_ok"], true);

    let (code, v) = run(&["lemma46", "--grid", "256", "--c", "1/20", "--margin", "1e-6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ok"], true);
    assert_eq!(v["result"]["sigma2"], 0);
    assert!(v["result"]["cells_checked"].as_u64().unwrap() > 0);

    let (code, v) = run(&["lemma46", "--grid", "64", "--margin", "100"]);
    assert_eq!(code, 1);
    assert!(v["result"]["profiles"][0]["offending_cell"].is_array());
    assert_eq!(run(&["lemma46", "--c", "1/2"]).0, 2);
}

#[test]
fn congruent_command() {
    let (code, v) = run(&["congruent", "[[1,0,0],[0,1,0],[0,0,-1]]", "SxS + CP2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["verified"], true);
    let (code, v) = run(&["congruent", "SxS", "SxtS"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["witness"]["invariant"], "parity");
}

#[test]
fn output_is_deterministic() {
    let a = Command::new(env!("CARGO_BIN_EXE_immcalc")).args(["verify", "D-blowdown", "1..3"]).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_immcalc")).args(["verify", "D-blowdown", "1..3"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
