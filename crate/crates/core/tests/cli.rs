use std::collections::HashMap;
use std::io::Write;

use monoext::cli::{dispatch_with_env, Outcome, EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Outcome {
    let env: HashMap<String, String> = env.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let argv = std::iter::once("monoext").chain(args.iter().copied());
    dispatch_with_env(argv, &env)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

const GRID2: &str = r#"{"grid":{"n":2,"order":"product"}}"#;
const INTS4: &str = r#"{"values":["1","2","3","4"]}"#;

#[test]
fn solve_grid_fixture() {
    let out = run(&["solve", "--poset", GRID2, "--scale", INTS4, "--query", r#"{"query":["(1,2)"]}"#]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["objective"], "2/1");
    assert_eq!(v["witness_perm"], serde_json::json!(["(1,2)"]));
    assert!(v.get("witness_fn").is_none());

    let both = json(&run(&[
        "solve", "--poset", GRID2, "--scale", INTS4, "--query", r#"{"query":["(1,2)"]}"#, "--mode", "both", "--witness",
    ]));
    assert_eq!(both["max"]["objective"], "3/1");
    assert_eq!(both["max"]["witness_fn"]["(1,2)"], "3/1");
}

#[test]
fn solve_from_m_scale_is_exact_for_identity() {
    let scale = r#"{"from_m":{"m":{"kind":"identity"},"n":2}}"#;
    let v = json(&run(&["solve", "--poset", GRID2, "--scale", scale, "--query", r#"{"query":["(1,2)","(2,2)"]}"#]));
    assert_eq!(v["objective"], "3/2");
    let scale = r#"{"from_m":{"m":{"kind":"power","p":2.0},"n":2}}"#;
    let v = json(&run(&["solve", "--poset", GRID2, "--scale", scale, "--query", r#"{"query":["(1,1)"]}"#]));
    assert_eq!(v["objective"], 0.5);
}

#[test]
fn oracle_reports_count() {
    let chain = r#"{"labels":["a","b","c","d"],"covers":[["a","b"],["b","c"],["c","d"]]}"#;
    let v = json(&run(&["oracle", "--poset", chain, "--scale", INTS4, "--query", r#"{"query":["b","d"]}"#]));
    assert_eq!(v["count"], 1);
    assert_eq!(v["min"]["objective"], "6/1");
    assert_eq!(v["max"]["objective"], "6/1");
}

#[test]
fn files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("poset.json");
    let s = dir.path().join("scale.json");
    let q = dir.path().join("query.json");
    std::fs::write(&p, r#"{"labels":["a","b","c"],"covers":[]}"#).unwrap();
    std::fs::write(&s, r#"{"values":[1,2,3]}"#).unwrap();
    std::fs::write(&q, r#"{"query":["a"]}"#).unwrap();
    let out = run(&[
        "solve",
        "--poset",
        p.to_str().unwrap(),
        "--scale",
        s.to_str().unwrap(),
        "--query",
        q.to_str().unwrap(),
        "--mode",
        "max",
    ]);
    assert_eq!(json(&out)["objective"], "3/1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cont-bound", "--m", "id", "--t", "const:0.5", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);

    let out = run(&["solve", "--poset", GRID2, "--scale", r#"{"values":[1,1,2,3]}"#, "--query", r#"{"query":["(1,1)"]}"#]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert_eq!(json(&out)["error"]["kind"], "scale");

    let cyclic = r#"{"labels":["a","b"],"covers":[["a","b"],["b","a"]]}"#;
    let out = run(&["solve", "--poset", cyclic, "--scale", r#"{"values":[1,2]}"#, "--query", r#"{"query":["a"]}"#]);
    assert_eq!(out.code, EXIT_VALIDATION);

    let out = run(&["solve", "--poset", GRID2, "--scale", INTS4, "--query", r#"{"query":["(9,9)"]}"#]);
    assert_eq!(out.code, EXIT_VALIDATION);

    let antichain = r#"{"labels":["a","b","c","d","e"],"covers":[]}"#;
    let scale = r#"{"values":[1,2,3,4,5]}"#;
    let out = run(&["oracle", "--poset", antichain, "--scale", scale, "--query", r#"{"query":["a"]}"#, "--cap", "100"]);
    assert_eq!(out.code, EXIT_CAP);
    assert_eq!(json(&out)["error"]["kind"], "cap_exceeded");

    assert_eq!(run(&["grid-exp", "--alpha", "0.5", "--n", "10", "--k", "3"]).code, EXIT_VALIDATION);
    assert_eq!(run(&["cont-bound", "--m", "const:0.5", "--t", "id"]).code, EXIT_VALIDATION);
    assert_eq!(run(&["cont-bound", "--m", "id", "--t", "id", "--tol", "0"]).code, EXIT_VALIDATION);
}

#[test]
fn continuous_commands() {
    let v = json(&run(&["cont-bound", "--m", "id", "--t", "const:0.5"]));
    assert_eq!(v, serde_json::json!({ "bound": 0.25 }));
    let v = json(&run(&["cont-bound", "--m", r#"{"kind":"power","p":2.0}"#, "--t", r#"{"kind":"const","value":0.25}"#]));
    assert!((v["bound"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    let v = json(&run(&["cont-bound", "--m", "pwl:0,0;0.5,0.25;1,1", "--t", "id"]));
    assert!(v["bound"].as_f64().unwrap() > 0.0);

    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("surface.csv");
    let out = run(&["cont-extremal", "--m", "id", "--t", "const:0.5", "--grid", "20", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["membership"]["passed"], true);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,value"));
    assert_eq!(text.lines().count(), 1 + 400);

    let v = json(&run(&["grid-exp", "--alpha", "0.5", "--n", "2", "--k", "1"]));
    assert_eq!(v["discrete_bound"], "3/4");
    let out = run(&["grid-exp", "--alpha", "0.5", "--n", "4", "--k", "2", "--format", "csv"]);
    assert!(out.stdout.starts_with("alpha,n,k,column"));
}

fn samples_file(dir: &tempfile::TempDir, values: &[f64]) -> String {
    let path = dir.path().join("tau.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "tau").unwrap();
    for v in values {
        writeln!(f, "{v}").unwrap();
    }
    path.to_str().unwrap().to_owned()
}

#[test]
fn process_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tau = samples_file(&dir, &[0.2, 0.8]);
    let v = json(&run(&["proc-bound", "--m", "id", "--tau", &tau, "--simplified"]));
    assert!((v["bound"].as_f64().unwrap() - 0.175).abs() < 1e-12);
    assert!((v["simplified"].as_f64().unwrap() - 0.175).abs() < 1e-12);
    assert_eq!(run(&["proc-bound", "--m", "pow:2", "--tau", &tau, "--simplified"]).code, EXIT_VALIDATION);

    let out = run(&["proc-sim", "--m", "id", "--tau", &tau, "--trials", "1000", "--verify", "50,50"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["membership_report"]["passed"], true);
    assert_eq!(v["trials"], 1000);

    let bad = samples_file(&dir, &[0.2, 1.5]);
    assert_eq!(run(&["proc-bound", "--m", "id", "--tau", &bad]).code, EXIT_VALIDATION);
    assert_eq!(run(&["proc-bound", "--m", "id", "--tau", "/nonexistent.csv"]).code, EXIT_VALIDATION);
}

#[test]
fn seed_precedence_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let tau = samples_file(&dir, &[0.1, 0.4, 0.45, 0.9]);
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"seed": 11, "tol": 1e-10}"#).unwrap();
    let args = ["proc-sim", "--m", "id", "--tau", &tau, "--trials", "500"];
    let seed_of = |out: &Outcome| json(out)["seed"].as_u64().unwrap();

    let base = run(&args);
    assert_eq!(base, run(&args), "identical runs must be byte-identical");

    let mut with_config = args.to_vec();
    with_config.extend(["--config", config.to_str().unwrap()]);
    assert_eq!(seed_of(&run(&with_config)), 11);
    assert_eq!(seed_of(&run_env(&with_config, &[("MONOEXT_SEED", "12")])), 12);
    let mut with_flag = with_config.clone();
    with_flag.extend(["--seed", "13"]);
    assert_eq!(seed_of(&run_env(&with_flag, &[("MONOEXT_SEED", "12")])), 13);

    let a = run_env(&args, &[("MONOEXT_SEED", "12")]);
    let b = run_env(&args, &[("MONOEXT_SEED", "12")]);
    assert_eq!(a, b);
    assert_eq!(run_env(&args, &[("MONOEXT_SEED", "twelve")]).code, EXIT_VALIDATION);

    std::fs::write(&config, r#"{"seed": 11, "bogus": 1}"#).unwrap();
    assert_eq!(run(&with_config).code, EXIT_VALIDATION);
}
