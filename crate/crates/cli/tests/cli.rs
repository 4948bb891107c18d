use std::process::{Command, Output};

use serde_json::Value;

fn odlcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odlcalc")).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

const RULING_SPACE: &str = r#"{"terms":[
    {"factors":[[1,2],[1,2,3,4,5,6,7,8,9],[1,2,3,4,5,6,7,8,9]]},
    {"factors":[[1,2,3,4,5],[1,2,3,4,5],[1,2,3,4,5,6,7,8,9]]}]}"#;

#[test]
fn bott_single_group() {
    let v = json_of(&odlcalc(&["bott", "--k", "3", "--n", "9", "--u", "0,0,0", "--q", "3,0,0,0,0,0", "--twist", "-1"]));
    assert_eq!(v, serde_json::json!({ "h": 3, "dim": 1 }));
}

#[test]
fn dim_of_ruling_space() {
    let dir = std::env::temp_dir().join(format!("odlcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    std::fs::write(&path, RULING_SPACE).unwrap();
    let v = json_of(&odlcalc(&["dim", "--expr", path.to_str().unwrap()]));
    assert_eq!(v["dim"], 62);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn integrate_named_scene() {
    let v = json_of(&odlcalc(&["integrate", "--scene", "ruling-planes", "--seed", "5"]));
    assert_eq!(v["value"], "18");
    assert_eq!(v["seed"], 5);
}

#[test]
fn emitted_scene_round_trips() {
    let o = odlcalc(&["integrate", "--scene", "plane-cubic", "--emit"]);
    let dir = std::env::temp_dir().join(format!("odlcalc-scene-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scene.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = json_of(&odlcalc(&["integrate", "--file", path.to_str().unwrap()]));
    assert_eq!(v["value"], "3");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(odlcalc(&["dim", "--expr", "{\"terms\":"]).status.code(), Some(2));
    let infeasible = r#"{"flag_a":[2,5],"flag_b":[1,6],"required":[{"a":0,"b":0,"dim":0},{"a":1,"b":0,"dim":1},{"a":0,"b":1,"dim":2},{"a":1,"b":1,"dim":2}]}"#;
    assert_eq!(odlcalc(&["stratum", "--pattern", infeasible]).status.code(), Some(3));
    let dir = std::env::temp_dir().join(format!("odlcalc-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"p8","tower":{"fixed":{},"steps":[{"name":"L","dim":1,"lower":"0","upper":"V"}]},
            "integrand":[{"c1_pow":[{"dual":{"sub":"L"}},7]}]}"#,
    )
    .unwrap();
    assert_eq!(odlcalc(&["integrate", "--file", path.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(odlcalc(&["integrate", "--scene", "nope"]).status.code(), Some(5));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_subset_is_deterministic() {
    let args = ["verify-paper", "--only", "1,7,hilbert", "--json", "--seed", "11"];
    let (a, b) = (odlcalc(&args), odlcalc(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
}

#[test]
fn verify_fails_on_corrupted_resolution() {
    let mut raw: Value = serde_json::from_str(odlcalc::resolution::RESOLUTION_JSON).unwrap();
    raw["terms"][2]["summands"][1]["t"] = serde_json::json!(1);
    let dir = std::env::temp_dir().join(format!("odlcalc-res-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("res.json");
    std::fs::write(&path, raw.to_string()).unwrap();
    let o = odlcalc(&["verify-paper", "--only", "9", "--resolution", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL  9.self-duality"));
    std::fs::remove_dir_all(dir).unwrap();
}
