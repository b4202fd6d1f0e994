//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes JSON or plain strings and returns a JSON string of the shape
//! `{"ok": true, ...}` or `{"ok": false, "error": "..."}`; the shipped fixtures are embedded.

use serde_json::{json, Value};
use skv_core::arithdata::{check_hyp, Fixture};
use skv_core::engine::{theta, Theta};
use skv_core::rednorm::{fitting_report, PresentationFile};
use skv_core::verify::{default_s, run_checks, Check, CheckOptions, Report};
use wasm_bindgen::prelude::*;

pub const FIXTURES: [(&str, &str); 8] = [
    ("q", include_str!("../../../fixtures/q.json")),
    ("q_i", include_str!("../../../fixtures/q_i.json")),
    ("q_zeta3", include_str!("../../../fixtures/q_zeta3.json")),
    ("q_sqrt5", include_str!("../../../fixtures/q_sqrt5.json")),
    (
        "q_sqrt_m5",
        include_str!("../../../fixtures/q_sqrt_m5.json"),
    ),
    ("q_zeta7", include_str!("../../../fixtures/q_zeta7.json")),
    ("q_zeta23", include_str!("../../../fixtures/q_zeta23.json")),
    ("s3_229", include_str!("../../../fixtures/s3_229.json")),
];

pub const PRESENTATIONS: [(&str, &str); 3] = [
    (
        "c2_z4",
        include_str!("../../../fixtures/presentations/c2_z4.json"),
    ),
    (
        "s3_sign_z5",
        include_str!("../../../fixtures/presentations/s3_sign_z5.json"),
    ),
    (
        "s3_quadratic",
        include_str!("../../../fixtures/presentations/s3_quadratic.json"),
    ),
];

fn fixture(name: &str) -> Result<Fixture, String> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| format!("unknown fixture {name:?}"))?;
    Fixture::from_json_str(text).map_err(|e| e.to_string())
}

fn places(fix: &Fixture, list: &str, default: Vec<usize>) -> Result<Vec<usize>, String> {
    if list.trim().is_empty() {
        Ok(default)
    } else {
        fix.parse_place_list(list).map_err(|e| e.to_string())
    }
}

fn reply(result: Result<Value, String>) -> String {
    let v = match result {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v
        }
        Err(e) => json!({"ok": false, "error": e}),
    };
    serde_json::to_string(&v).expect("json")
}

/// Embedded fixtures with their places and group, and the sample presentations.
pub fn catalog_json() -> Result<Value, String> {
    let mut fixtures = Vec::new();
    for (name, _) in FIXTURES {
        let fix = fixture(name)?;
        fixtures.push(json!({
            "name": name,
            "group": fix.group.name(),
            "order": fix.group.order(),
            "places": fix.places.iter().map(|p| p.label.clone()).collect::<Vec<_>>(),
            "defaultS": fix.place_labels(&default_s(&fix)),
            "tPool": fix.place_labels(&fix.t_pool),
        }));
    }
    let presentations: Vec<Value> = PRESENTATIONS
        .iter()
        .map(|(n, text)| json!({"name": n, "text": text}))
        .collect();
    Ok(
        json!({"fixtures": fixtures, "presentations": presentations, "checks": Check::ALL.iter().map(|c| c.id()).collect::<Vec<_>>()}),
    )
}

pub fn theta_json(name: &str, s: &str, t: &str, r: i64) -> Result<Value, String> {
    let fix = fixture(name)?;
    let s = places(&fix, s, default_s(&fix))?;
    let t = places(&fix, t, Vec::new())?;
    let hyp = check_hyp(&fix, &s, &t).map_err(|e| e.to_string())?;
    let mut out = json!({"hyp": {"holds": hyp.holds, "failed": hyp.failed()}});
    match theta(&fix, &s, &t, r).map_err(|e| e.to_string())? {
        Theta::Assembled(th) => {
            out["integral"] = json!(th.element.to_group_ring().is_integral());
            out["theta"] = th.to_json(&fix);
        }
        Theta::Incomplete(missing) => {
            out["missingSources"] = json!(missing.iter().map(|m| m.describe()).collect::<Vec<_>>());
        }
    }
    Ok(out)
}

pub fn check_json(name: &str, suite: &str) -> Result<Value, String> {
    let fix = fixture(name)?;
    let checks = if suite == "all" {
        Check::ALL.to_vec()
    } else {
        vec![Check::parse(suite).ok_or_else(|| format!("unknown suite {suite:?}"))?]
    };
    let verdicts =
        run_checks(&fix, &checks, &CheckOptions::default()).map_err(|e| e.to_string())?;
    let report = Report::new(&fix, 0, verdicts);
    Ok(
        json!({"exitCode": report.exit_code(), "text": report.to_text(), "report": report.to_json()}),
    )
}

pub fn fitting_json(name: &str, presentation: &str) -> Result<Value, String> {
    let fix = fixture(name)?;
    let file =
        PresentationFile::from_json_str(&fix.group, presentation).map_err(|e| e.to_string())?;
    let report = fitting_report(&fix.real, &file).map_err(|e| e.to_string())?;
    Ok(json!({"annihilated": report.annihilated, "fitting": report.json}))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    reply(catalog_json())
}

/// θ_S^T(r); empty `s` means the infinite and ramified places.
#[wasm_bindgen]
pub fn compute_theta(fixture: &str, s: &str, t: &str, r: i32) -> String {
    reply(theta_json(fixture, s, t, r as i64))
}

#[wasm_bindgen]
pub fn run_check(fixture: &str, suite: &str) -> String {
    reply(check_json(fixture, suite))
}

#[wasm_bindgen]
pub fn fitting(fixture: &str, presentation: &str) -> String {
    reply(fitting_json(fixture, presentation))
}
