use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symdiff")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf8"))
}

fn json(text: &str) -> Value {
    serde_json::from_str(text.trim()).expect("json on stdout")
}

#[test]
fn classify_special_family() {
    let (code, out) = run(&["classify", "--field", "GF(2)(s)", "--p", "t^2+t+1", "--q", "t^2+t+s"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["family"], "IRR_DISTINCT_SPECIAL");
}

#[test]
fn decide_exit_codes() {
    let base = ["decide", "--field", "GF(3)", "--p", "t^2+1", "--q", "t^2+1", "--v"];
    let (code, out) = run(&[&base[..], &["zero:1"]].concat());
    assert_eq!((code, json(&out)["verdict"].clone()), (2, "no".into()));
    let (code, out) = run(&[&base[..], &["zero:1;zero:1"]].concat());
    assert_eq!((code, json(&out)["verdict"].clone()), (0, "yes".into()));
    let (code, out) = run(&[&base[..], &["jordan:2,2;companion:t^2+2"]].concat());
    assert!(code == 0 || code == 2);
    assert_eq!(json(&out)["dim"], 4);
}

#[test]
fn witness_round_trip_through_verify_and_decide() {
    let dir = std::env::temp_dir().join(format!("symdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ctx = ["--field", "Q", "--p", "t^2+1", "--q", "t^2+1"];
    let (code, out) = run(&[&["witness"][..], &ctx, &["--v", "companion:t^2+2"]].concat());
    assert_eq!(code, 0);
    let path = dir.join("w.json");
    std::fs::write(&path, &out).unwrap();
    let arg = format!("@{}", path.display());
    let (code, out) = run(&[&["verify"][..], &ctx, &["--pair", &arg]].concat());
    assert_eq!((code, json(&out)["all_pass"].clone()), (0, true.into()));
    let (code, out) = run(&[&["decide"][..], &ctx, &["--pair", &arg]].concat());
    assert_eq!((code, json(&out)["verdict"].clone()), (0, "yes".into()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witness_on_no_instance_is_an_error() {
    let (code, out) = run(&["witness", "--field", "GF(3)", "--p", "t^2+1", "--q", "t^2+1", "--v", "zero:1"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["kind"], "DecisionWasNo");
}

#[test]
fn oracle_sweep_has_no_disagreements() {
    let args = ["oracle", "--field", "GF(2)", "--dim", "4", "--p", "t^2", "--q", "t^2", "--jobs", "2"];
    let (code, out) = run(&args);
    assert_eq!(code, 0);
    let report = json(&out);
    assert_eq!(report["disagreements"], 0);
    assert_eq!(report["instances"], 16);
    let (_, again) = run(&args);
    assert_eq!(out, again);
}

#[test]
fn enumerate_emits_json_lines() {
    let (code, out) = run(&["enumerate", "--field", "Q", "--p", "t^2+1", "--q", "t^2+2", "--dim", "8", "--irreducible", "t+1"]);
    assert_eq!(code, 0);
    let tables: Vec<u64> = out.lines().map(|l| json(l)["table"].as_u64().unwrap()).collect();
    assert_eq!(tables, vec![1, 1, 1, 1, 8, 8]);
}

#[test]
fn errors_are_structured() {
    let (code, out) = run(&["decide", "--field", "GF(6)", "--p", "t^2", "--q", "t^2", "--v", "zero:1"]);
    assert_eq!((code, json(&out)["error"]["kind"].clone()), (1, "NonPrimeCharacteristic".into()));
    let (code, out) = run(&["decide", "--field", "Q", "--p", "t^2", "--q", "t^2", "--pair", "{not json"]);
    assert_eq!((code, json(&out)["error"]["kind"].clone()), (1, "Json".into()));
    let (code, out) = run(&["enumerate", "--field", "Q", "--p", "t^2+1", "--q", "t^2+4"]);
    assert_eq!((code, json(&out)["error"]["kind"].clone()), (1, "NeedsIrreducibleInventory".into()));
    let (code, out) = run(&["decide", "--field", "Q"]);
    assert_eq!((code, json(&out)["error"]["kind"].clone()), (1, "Usage".into()));
}
