use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const PHI: &str = "poly:1,-1,-1@1,2";
const TRIB: &str = "poly:1,-1,-1,-1@1,2";

fn betadyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betadyn")).args(args).env_remove("BETADYN_PRECISION").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = betadyn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn code(args: &[&str]) -> (i32, String) {
    let out = betadyn(args);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn formula_prints_value() {
    assert_eq!(stdout(&["formula", "--family", "Eab", "--a", "0.2", "--b", "0.5"]), "0.333333333333\n");
    assert_eq!(stdout(&["formula", "--family", "Eab", "--a", "0.6", "--b", "0.5"]), "empty\n");
    let v = json(&["formula", "--family", "U", "--vhat", "0.3333333333333333", "--v", "1"]);
    assert!((v["value"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn golden_word_is_not_admissible() {
    assert_eq!(stdout(&["admissible", "--beta", PHI, "--word", "1,1"]), "false\n");
    let v = json(&["admissible", "--beta", PHI, "--word", "1,0,1"]);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["full"], false);
    assert!(v["made_full"].as_str().unwrap().starts_with("1,0,1,0"));
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let (c, err) = code(&["expand", "--bogus"]);
    assert_eq!(c, 2);
    assert!(err.contains("--bogus"));
    let (c, err) = code(&["admissible", "--beta", "rat:1/2", "--word", "1"]);
    assert_eq!(c, 2);
    assert!(err.contains("--beta"));
    let (c, err) = code(&["formula", "--family", "Eab", "--a", "0.2"]);
    assert_eq!(c, 2);
    assert!(err.contains("--b"));
    let (c, _) = code(&["construct", "--beta", TRIB, "--a", "x", "--b", "0.5", "--K", "3"]);
    assert_eq!(c, 2);
}

#[test]
fn module_errors_have_distinct_codes() {
    let (empty, _) = code(&["construct", "--beta", TRIB, "--a", "0.6", "--b", "0.5", "--K", "3"]);
    let (not_self, _) = code(&["param-cylinder", "--word", "0,1"]);
    let (not_adm, _) = code(&["cylinder", "--beta", PHI, "--word", "1,1"]);
    let (parry, _) = code(&["param-construct", "--beta1", "17/10", "--beta2", TRIB, "--a", "0.2", "--b", "0.5", "--K", "2"]);
    let codes = [empty, not_self, not_adm, parry];
    assert_eq!(codes, [21, 17, 15, 26]);
}

#[test]
fn enumerate_counts_fibonacci() {
    assert_eq!(json(&["enumerate", "--beta", PHI, "--n", "10", "--count-only"])["count"], "144");
    let v = json(&["enumerate", "--beta", PHI, "--n", "3", "--gamma"]);
    assert_eq!(v["words"].as_array().unwrap().len(), 5);
    assert_eq!(v["words"][4], "1,0,1");
}

#[test]
fn cylinder_json_fields() {
    let v = json(&["cylinder", "--beta", PHI, "--word", "1,0"]);
    assert_eq!(v["full"], true);
    assert!(v["left"].as_str().unwrap().starts_with("0.6180339887"));
    assert!(v["length"].as_str().unwrap().starts_with("0.3819660112"));
    let located = json(&["cylinder", "--beta", PHI, "--x", "0.7", "--n", "2"]);
    assert_eq!(located["word"], "1,0");
}

#[test]
fn param_cylinder_json_shape() {
    let v = json(&["param-cylinder", "--word", "1,0,1", "--precision", "64"]);
    for key in ["word", "tau", "t", "non_recurrent", "beta_lower", "beta_upper", "length", "bounds"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["tau"], 2);
    assert!(v["bounds"]["lower_if_nonrecurrent"].is_null());
    let nr = json(&["param-cylinder", "--word", "1,0,0"]);
    assert_eq!(nr["non_recurrent"], true);
    assert_eq!(nr["bounds"]["lower_if_nonrecurrent"]["holds"], true);
    let golden = json(&["param-cylinder", "--word", "1,1"]);
    assert!(golden["beta_lower"].as_str().unwrap().starts_with("1.61803398874989484"));
}

#[test]
fn runlength_profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let p = path.to_str().unwrap();
    let v = json(&["runlength", "--beta", "2", "--x", "1/1024", "--n", "20", "--profile-out", p]);
    assert_eq!(v["r_n"], 10);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,r_n,r_n/n,r_n/log_beta_n");
    assert_eq!(lines.count(), 20);
    assert!(text.contains("\n10,9,0.9,"));
}

#[test]
fn exponents_methods_agree_on_rational_point() {
    let runs = json(&["exponents", "--beta", "2", "--x", "1/3", "--depth", "200", "--method", "runs"]);
    let orbit = json(&["exponents", "--beta", "2", "--x", "1/3", "--depth", "200", "--method", "orbit"]);
    assert_eq!(runs["method"], "runlength");
    assert_eq!(orbit["method"], "orbit");
    assert!(runs["v"].as_f64().unwrap() < 0.1);
    assert!(orbit["v"].as_f64().unwrap() < 0.1);
}

#[test]
fn expand_writes_stream() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("digits.txt");
    let line = stdout(&["expand", "--beta", PHI, "--x", "1/2", "--n", "30", "--out", path.to_str().unwrap()]);
    let file: betadyn::Word = betadyn::Word::parse_text(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(format!("{file}\n"), line);
    let one = json(&["expand", "--beta", TRIB, "--one", "--n", "6"]);
    assert_eq!(one["status"], "simple-parry");
    assert_eq!(one["eps_star"], "1,1,0,1,1,0");
}

#[test]
fn construct_report_is_byte_identical_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let digits = dir.path().join("point.txt");
    let base = ["construct", "--beta", TRIB, "--a", "0.2", "--b", "0.5", "--K", "5", "--seed", "7", "--seeds", "3"];
    let mut one: Vec<&str> = base.to_vec();
    one.extend(["--report", "json", "--jobs", "1", "--digits-out", digits.to_str().unwrap()]);
    let mut four: Vec<&str> = base.to_vec();
    four.extend(["--report", "json", "--jobs", "4"]);
    let a = stdout(&one);
    assert_eq!(a, stdout(&four));
    assert_eq!(a, stdout(&one));
    let v: Value = serde_json::from_str(&a).unwrap();
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 5);
    assert_eq!(levels[0]["mu_mass"], format!("1/{}", levels[0]["q"].as_str().unwrap()));
    assert_eq!(v["seeds"].as_array().unwrap().len(), 3);
    assert!(fs::metadata(&digits).unwrap().len() > 0);
}

#[test]
fn montecarlo_is_reproducible() {
    let args = ["montecarlo", "--beta", "2", "--samples", "50", "--n", "1024", "--seed", "3", "--json"];
    let a = stdout(&args);
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    assert_eq!(a, stdout(&more));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(v["mean"].as_f64().unwrap() > 0.5);
}

#[test]
fn boxcount_reads_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    let mut text = String::from("x\n");
    for i in 0..400u32 {
        text.push_str(&format!("{}/400\n", (i * 173) % 400));
    }
    fs::write(&path, text).unwrap();
    let v = json(&["boxcount", "--beta", "2", "--points", path.to_str().unwrap(), "--nmin", "1", "--nmax", "8"]);
    assert_eq!(v["points"], 400);
    assert!((v["slope"].as_f64().unwrap() - 1.0).abs() < 0.1);
    let (c, _) = code(&["boxcount", "--beta", "2", "--points", path.to_str().unwrap(), "--nmin", "5", "--nmax", "2"]);
    assert_eq!(c, 2);
}

#[test]
fn witnesses_meet_radius() {
    let w = json(&["witness", "--beta", "2", "--target", "0.3", "--radius", "0.0001"]);
    assert_eq!(w["level"], 14);
    let p = json(&["param-witness", "--target", "1.8", "--radius", "0.001"]);
    assert!(p["prefix"].as_str().unwrap().starts_with("1,1,0,1"));
}

#[test]
fn param_admissible_and_construct() {
    assert_eq!(stdout(&["param-admissible", "--word", "1,0,1,1"]), "false\n");
    let v = json(&["param-admissible", "--word", "1,1,1"]);
    assert!(v["beta"].as_str().unwrap().starts_with("1.839286755214161"));
    let c = json(&["param-construct", "--beta1", "17/10", "--beta2", "19/10", "--a", "0.2", "--b", "0.5", "--K", "4", "--seed", "3"]);
    assert_eq!(c["N"], 3);
    assert_eq!(c["in_range"], true);
    assert_eq!(c["chain_holds"], true);
}

#[test]
fn precision_env_sets_digits() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_betadyn"));
        cmd.args(["cylinder", "--beta", PHI, "--word", "1", "--json"]).env_remove("BETADYN_PRECISION");
        if let Some(p) = env {
            cmd.env("BETADYN_PRECISION", p);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["length"].as_str().unwrap().len()
    };
    assert!(run(Some("256")) > run(None));
    assert!(run(Some("32")) < run(None));
}
