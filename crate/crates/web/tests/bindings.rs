use serde_json::Value;
use skv_web::{catalog, compute_theta, fitting, run_check, PRESENTATIONS};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn catalog_lists_every_embedded_fixture() {
    let v = parse(catalog());
    assert_eq!(v["ok"], true);
    assert_eq!(v["fixtures"].as_array().unwrap().len(), 8);
    assert_eq!(v["presentations"].as_array().unwrap().len(), 3);
}

#[test]
fn theta_matches_the_cli() {
    let v = parse(compute_theta("q_zeta3", "3,inf", "", 0));
    assert_eq!(v["ok"], true);
    assert_eq!(v["theta"]["element"]["groupRing"]["1"], "1/6");
    assert_eq!(v["integral"], false);

    let v = parse(compute_theta("q_zeta3", "", "7", 0));
    assert_eq!(v["hyp"]["holds"], true);
    assert_eq!(v["integral"], true);

    let v = parse(compute_theta("q", "17", "", 0));
    assert_eq!(v["ok"], false);
}

#[test]
fn checks_and_fitting_run() {
    let v = parse(run_check("q_i", "all"));
    assert_eq!(v["exitCode"], 0);
    assert!(v["text"].as_str().unwrap().contains("verified"));

    let (_, text) = PRESENTATIONS[0];
    let v = parse(fitting("q_i", text));
    assert_eq!(v["annihilated"], true);
    let v = parse(fitting("s3_229", text));
    assert_eq!(v["ok"], false);
}
