use std::path::PathBuf;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn sfree(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sfree").chain(args.iter().copied());
    let code = sfree_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn strs(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

#[test]
fn maximalize_example() {
    let ex1 = data("ex1.json");
    let bpsi = data("bpsi.json");
    let r = sfree(&["maximalize", "--instance", &ex1, "--body", &bpsi, "--trace"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(strs(&j["body"]["rows"]), vec![vec!["4", "4"], vec!["4", "-4"]]);
    assert_eq!(j["verdict"], "maximal-case-i");
    let trace = j["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 2);
    assert_eq!(trace[0]["lambda_star"], "1/2");
    assert_eq!(trace[0]["lambda_bar"], "3/4");
    assert_eq!(trace[1]["lambda_star"], "1/3");
    assert_eq!(trace[1]["lambda_bar"], "2/3");
    assert_eq!(j["box"]["lower"], serde_json::json!([-5, -5]));
}

#[test]
fn maximalize_writes_body_file() {
    let dir = std::env::temp_dir().join(format!("sfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("b.json");
    let r = sfree(&[
        "maximalize",
        "--instance",
        &data("ex1.json"),
        "--body",
        &data("bpsi.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert!(r.json().get("trace").is_none());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, std::fs::read_to_string(data("b.json")).unwrap());
}

#[test]
fn check_verdicts() {
    let ex1 = data("ex1.json");
    let r = sfree(&["check", "--body", &data("b.json"), "--instance", &ex1]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["verdict"], "maximal-case-i");
    assert_eq!(j["s_free"], true);
    let certs = j["facet_certificates"].as_array().unwrap();
    assert_eq!(certs[0]["point"], serde_json::json!([0, 1]));
    assert_eq!(certs[1]["point"], serde_json::json!([0, 0]));

    let r = sfree(&["check", "--body", &data("bpsi.json"), "--instance", &ex1]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["verdict"], "not-maximal");

    let r = sfree(&["check", "--body", &data("halfspace.json"), "--instance", &ex1]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["verdict"], "maximal-case-ii");

    let r = sfree(&["check", "--body", &data("shifted_split.json"), "--instance", &ex1]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["s_free"], false);
    assert_eq!(j["witness"], serde_json::json!([1, 0]));
}

#[test]
fn verify_example() {
    let r = sfree(&["verify", "--instance", &data("ex1.json"), "--body", &data("b.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["minimum_value"], "1");
    assert_eq!(j["valid"], true);
    assert_eq!(j["coefficients"], serde_json::json!(["1", "1"]));
    assert_eq!(j["reachable_points"], 2);
}

#[test]
fn cut_from_split_and_from_body() {
    let ex1 = data("ex1.json");
    let r = sfree(&["cut", "--instance", &ex1]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["coefficients"], serde_json::json!(["1", "1"]));
    let r = sfree(&["cut", "--instance", &ex1, "--body", &data("bpsi.json"), "--trace"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["coefficients"], serde_json::json!(["1", "1"]));
    assert_eq!(j["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn polar_and_tighten() {
    let r = sfree(&["polar", "--body", &data("b.json")]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(strs(&j["generators"]), vec![vec!["0", "0"], vec!["4", "4"], vec!["4", "-4"]]);
    assert_eq!(j["inequalities"]["b"].as_array().unwrap().len(), 3);

    let r = sfree(&["tighten", "--instance", &data("ex1.json"), "--body", &data("b.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    let a = strs(&j["companion"]["A"]);
    assert_eq!(a.last().unwrap(), &vec!["-1".to_string(), "0".to_string()]);
    assert_eq!(j["companion"]["b"].as_array().unwrap().last().unwrap(), "1");

    let r = sfree(&["tighten", "--instance", &data("ex1.json"), "--body", &data("shifted_split.json")]);
    assert_eq!(r.code, 1);
}

#[test]
fn plot_is_deterministic() {
    let args = [
        "plot",
        "--instance",
        &data("ex1.json"),
        "--body",
        &data("bpsi.json"),
        "--body",
        &data("b.json"),
        "--box",
        "-2 2 -2 3",
    ];
    let a = sfree(&args);
    let b = sfree(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert!(a.stdout.starts_with("<svg"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.matches("<polygon").count(), 3);
}

#[test]
fn box_flag_overrides_instance_box() {
    let r = sfree(&[
        "check",
        "--instance",
        &data("ex1.json"),
        "--body",
        &data("b.json"),
        "--box",
        "-3 3 -1 2",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["box"], serde_json::json!({"lower": [-3, -1], "upper": [3, 2]}));
}

#[test]
fn input_errors_exit_two_with_positions() {
    let r = sfree(&["check", "--instance", &data("broken.json"), "--body", &data("b.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("S.b[0]"), "{}", r.stderr);

    let r = sfree(&["check", "--instance", &data("truncated.json"), "--body", &data("b.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 4"), "{}", r.stderr);

    let r = sfree(&["check", "--instance", &data("ex1.json"), "--body", &data("b.json"), "--box", "0 1 x 2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("entry 2"), "{}", r.stderr);

    let r = sfree(&["check", "--instance", &data("ex1.json"), "--body", &data("b.json"), "--box", "0 1"]);
    assert_eq!(r.code, 2);

    let r = sfree(&["check", "--body", &data("b.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--instance"));

    let r = sfree(&["frobnicate"]);
    assert_eq!(r.code, 2);

    let r = sfree(&["maximalize", "--instance", &data("ex1.json"), "--body", &data("missing.json")]);
    assert_eq!(r.code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sfree");
    let st = std::process::Command::new(bin)
        .args(["check", "--instance", &data("ex1.json"), "--body", &data("bpsi.json")])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = std::process::Command::new(bin)
        .args(["verify", "--instance", &data("ex1.json"), "--body", &data("b.json")])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("\"valid\": true"));
}
