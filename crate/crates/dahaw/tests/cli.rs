use dahaw::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dahaw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = call(&a);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn build_odd_d0() {
    let (code, v) = json(&["build", "--family", "O", "--d", "0", "--q", "2", "--k", "2,3,5,auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["t0t1t2t3"], serde_json::json!([["1/2"]]));
    assert_eq!(v["module"]["params"]["k"][3], "1/60");
}

#[test]
fn irreducible_boundary_point() {
    let (code, v) = json(&[
        "irreducible", "--family", "E", "--d", "1", "--q", "4", "--k0", "1/4", "--k", "1,1,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["criterion"], false);
    assert_eq!(v["result"]["burnside"], false);
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 1);
}

#[test]
fn factors_of_twisted_even_module() {
    let (code, v) = json(&[
        "factors", "--family", "E", "--d", "3", "--q", "2", "--twist", "1", "--kseed", "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimensions"], serde_json::json!([2, 2]));
}

#[test]
fn leonard_on_vd() {
    let (code, out, _) = call(&["leonard", "--family", "Vd", "--d", "2", "--q", "2", "--a", "3", "--b", "3", "--c", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("triple ABC: Leonard"));
}

#[test]
fn verify_symbolic() {
    let (code, v) = json(&["verify", "--family", "O", "--d", "2", "--q", "q", "--k", "q,2,-1/3,auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["build", "--family", "X", "--d", "1", "--q", "2"]).0, 2);
    assert_eq!(call(&["build", "--family", "E", "--d", "2", "--q", "2", "--k", "1,2,3,auto"]).0, 2);
    assert_eq!(call(&["build", "--family", "E", "--d", "1", "--q", "1", "--kseed", "1"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn suite_and_replay_through_files() {
    let dir = std::env::temp_dir().join(format!("dahaw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sweep.json");
    std::fs::write(
        &config,
        r#"{"suites":["determinants"],"families":["E","O"],"d_values":[1,2],
            "q_values":["3"],"sampler":{"kind":"random","seed":3,"count":2},"twists":[0,3]}"#,
    )
    .unwrap();
    let out_file = dir.join("result.json");
    let (code, _, _) = call(&[
        "suite",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(saved["summary"]["points"], 8);
    let id = saved["points"][5]["id"].as_str().unwrap().to_string();
    let (code, v) = json(&["replay", &id, "--config", config.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"], saved["points"][5]["checks"]);
    let (code, _, err) = call(&["replay", "bogus", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown point"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_check_exits_1() {
    let dir = std::env::temp_dir().join(format!("dahaw-cli-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sweep.json");
    std::fs::write(
        &config,
        r#"{"suites":["predicate_lemmas"],"families":["E"],"d_values":[3],"q_values":["2"],
            "sampler":{"kind":"explicit","points":[["auto","3","-1","2"]]}}"#,
    )
    .unwrap();
    let (code, out, _) = call(&["suite", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("e_factors_eps2_C"));
    std::fs::remove_dir_all(&dir).unwrap();
}
