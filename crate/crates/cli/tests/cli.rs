use std::path::Path;
use std::process::{Command, Output};

use orecode_cli::error::CliError;
use orecode_cli::{load_code, CodeFile, CodewordFile};
use serde_json::Value;

fn orecode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orecode")).args(args).output().expect("binary runs")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn params_for_the_worked_example() {
    for d in 0..=3u64 {
        let spec = format!("simplex:{d}");
        let out = orecode(&["params", "--p", "5", "--r", "4", "--e", "3,2", "--spec", &spec, "--basis", "4,0;2,1"]);
        assert_eq!(code_of(&out), 0);
        assert_eq!(json(&out)["params"]["k"], 2 * d * d + 3 * d + 1);
    }
}

#[test]
fn params_degree_zero_and_ac() {
    let out = orecode(&["params", "--q", "4", "--r", "3", "--e", "1,2", "--spec", "total:0"]);
    let v = json(&out);
    assert_eq!(v["params"]["k"], 1);
    assert_eq!(v["params"]["designed"], v["params"]["n"]);
    // k = (d+1)(rd+2)/2 for m = 2
    for (r, d) in [(2u64, 1u64), (3, 2), (2, 3)] {
        let spec = format!("simplex:{d}");
        let rs = r.to_string();
        let basis = format!("1,0;0,{r}");
        let out = orecode(&["params", "--q", "5", "--r", &rs, "--e", "0,1", "--spec", &spec, "--basis", &basis]);
        assert_eq!(json(&out)["params"]["k"], (d + 1) * (r * d + 2) / 2);
    }
}

#[test]
fn csv_columns_are_fixed() {
    let out = orecode(&["params", "--q", "3", "--r", "2", "--e", "0,1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,r,m,e,spec,n,k,designed_d,measured_d,suite,pass,runtime_ms"));
    assert_eq!(lines.next(), Some("3,2,2,\"0,1\",total:1,8,3,4,,params,true,0"));
}

#[test]
fn verify_suites_pass() {
    let out = orecode(&["verify", "--suite", "nrd", "--q", "3", "--r", "2", "--m", "2", "--e", "0,1", "--seed", "7"]);
    assert_eq!(code_of(&out), 0);
    let v = json(&out);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["suites"][0]["status"], "pass");

    let out = orecode(&["verify", "--suite", "distance", "--exhaustive", "--q", "3", "--r", "2", "--e", "0,1", "--spec", "total:1", "--seed", "1"]);
    assert_eq!(code_of(&out), 0);
    assert!(json(&out)["suites"][0]["measured_d"].as_u64().unwrap() >= 4);

    let all = "ring,cocycle,dimker,zerosum,embedding";
    let out = orecode(&["verify", "--suite", all, "--q", "3", "--r", "2", "--e", "1,1", "--spec", "simplex:1", "--seed", "2", "--samples", "20"]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn empty_suite_list_is_a_no_op() {
    let out = orecode(&["verify", "--q", "3", "--r", "2", "--e", "0,1"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(json(&out)["suites"].as_array().unwrap().len(), 0);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "--suite", "cocycle,dimker", "--q", "4", "--r", "2", "--e", "1,1", "--seed", "11", "--samples", "50"];
    let (a, b) = (orecode(&args), orecode(&args));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // usage: bad spec, missing seed, non prime power
    assert_eq!(code_of(&orecode(&["params", "--q", "3", "--r", "2", "--e", "0,1", "--spec", "cube:1"])), 2);
    assert_eq!(code_of(&orecode(&["verify", "--suite", "ring", "--q", "3", "--r", "2", "--e", "0,1"])), 2);
    assert_eq!(code_of(&orecode(&["params", "--q", "6", "--r", "2", "--e", "0,1"])), 2);
    assert_eq!(code_of(&orecode(&["params", "--q", "3", "--r", "2", "--e", "0,1", "--spec", "total:2"])), 2);
    assert_eq!(code_of(&orecode(&["params", "--q", "3"])), 2);
    // budget refusal
    let out = orecode(&["verify", "--suite", "distance", "--exhaustive", "--q", "5", "--r", "2", "--e", "0,1", "--spec", "total:2", "--seed", "1"]);
    assert_eq!(code_of(&out), 3);
    assert_eq!(json(&out)["suites"][0]["status"], "budget");
    // mathematical failures map to 1
    assert_eq!(CliError::from(orecode::Error::BoundViolation("x".into())).exit_code(), 1);
    assert_eq!(CliError::from(orecode::Error::Invariant("x".into())).exit_code(), 1);
    assert_eq!(CliError::from(orecode::Error::BudgetExceeded { required: 2, budget: 1 }).exit_code(), 3);
}

#[test]
fn build_reload_and_encode() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    let build = ["build", "--q", "4", "--r", "2", "--e", "1,1", "--spec", "total:1", "--seed", "9", "--out"];
    assert_eq!(code_of(&orecode(&[&build[..], &[&a]].concat())), 0);
    assert_eq!(code_of(&orecode(&[&build[..], &[&b]].concat())), 0);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());

    let file: CodeFile = serde_json::from_slice(&bytes).unwrap();
    let code = load_code(&file).unwrap();
    assert_eq!(code.export_generator(), file.generator);
    assert_eq!(file.descriptor.seed, Some(9));

    let zero = path(dir.path(), "zero.json");
    std::fs::write(&zero, serde_json::to_string(&vec![vec![0u32; 4]; file.k]).unwrap()).unwrap();
    let word = path(dir.path(), "word.json");
    assert_eq!(code_of(&orecode(&["encode", "--code", &a, "--message", &zero, "--out", &word])), 0);
    let w: CodewordFile = serde_json::from_slice(&std::fs::read(&word).unwrap()).unwrap();
    assert_eq!(w.codeword.len(), file.n);
    assert!(w.codeword.iter().flatten().all(|&c| c == 0));
    assert_eq!(w.weight, 0);

    let short = path(dir.path(), "short.json");
    std::fs::write(&short, "[[1,0]]").unwrap();
    assert_eq!(code_of(&orecode(&["encode", "--code", &a, "--message", &short])), 2);
    assert_eq!(code_of(&orecode(&["encode", "--code", &path(dir.path(), "missing.json"), "--message", &short])), 2);
}

#[test]
fn embed_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "embed.json");
    let args = ["embed-check", "--q", "3", "--r", "2", "--m", "2", "--e", "0,1", "--spec", "simplex:1", "--basis", "1,0;0,2", "--n", "3", "--seed", "4", "--out", &out];
    assert_eq!(code_of(&orecode(&args)), 0);
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["samples"], 50);
    assert_eq!(v["bound"], 6);
    assert_eq!(v["seed"], 4);
    assert!(v["weights"].as_array().unwrap().iter().all(|w| w["lrm_weight"] == w["lag_weight"]));
}
