use std::fmt::Write as _;

use skv_core::arithdata::Fixture;
use skv_core::center::CentralElement;
use skv_core::engine::{SkuSet, ThetaElement};
use skv_core::rednorm::FittingReport;

fn central(out: &mut String, indent: &str, x: &CentralElement) {
    let table = x.table();
    for (chi, c) in x.components().iter().enumerate() {
        let _ = writeln!(out, "{indent}{}: {c}", table.char(chi).label);
    }
    let _ = writeln!(out, "{indent}group ring: {}", x.to_group_ring());
}

pub fn theta(fix: &Fixture, th: &ThetaElement, hyp_failed: &[&str]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "theta_S^T({}) over {} with S = {{{}}}, T = {{{}}}",
        th.r,
        fix.name,
        fix.place_labels(&th.s).join(", "),
        fix.place_labels(&th.t).join(", ")
    );
    let _ = writeln!(
        out,
        "route: {}{}",
        th.route.tag(),
        if th.cross_checked {
            " (partial-zeta cross-check agreed)"
        } else {
            ""
        }
    );
    if hyp_failed.is_empty() {
        let _ = writeln!(out, "Hyp(S, T) holds");
    } else {
        let _ = writeln!(out, "Hyp(S, T) fails: {}", hyp_failed.join(", "));
    }
    central(&mut out, "  ", &th.element);
    for s in &th.sources {
        if s.fixture_supplied {
            let _ = writeln!(
                out,
                "  source {} {{{}}}: {} (fixture-supplied)",
                s.kind,
                s.subgroup.join(", "),
                s.provenance
            );
        }
    }
    out
}

pub fn sku(fix: &Fixture, set: &SkuSet) -> String {
    let mut out = String::new();
    for t in &set.truncation {
        let _ = writeln!(out, "truncation: {t}");
    }
    for w in &set.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for m in &set.missing {
        let _ = writeln!(out, "missing source: {}", m.describe());
    }
    for (i, g) in set.generators.iter().enumerate() {
        let u: Vec<String> =
            g.u.iter()
                .map(|(p, c)| format!("{}:{c}", fix.places[*p].label))
                .collect();
        let _ = writeln!(
            out,
            "generator {i}: T = {{{}}}, u = [{}]",
            fix.place_labels(&g.t).join(", "),
            u.join(", ")
        );
        central(&mut out, "  ", &g.element);
    }
    out
}

pub fn fitting(report: &FittingReport) -> String {
    let mut out = String::new();
    let j = &report.json;
    let _ = writeln!(
        out,
        "presentation {}x{} ({})",
        j["rows"],
        j["cols"],
        if j["quadratic"] == true {
            "quadratic"
        } else {
            "rectangular"
        }
    );
    for (i, f) in report.fitting.generators.iter().enumerate() {
        let rows = report
            .fitting
            .row_sets
            .get(i)
            .map(|r| format!("{r:?}"))
            .unwrap_or_else(|| "zero class".into());
        let _ = writeln!(out, "generator {i} rows {rows}:");
        central(&mut out, "  ", f);
    }
    if j.get("starAdjoint").is_some() {
        let _ = writeln!(out, "star adjoint: {}", j["starAdjoint"]["adjoint"]);
    }
    if let Some(a) = j.get("annihilation") {
        let _ = writeln!(out, "annihilation: {}", a["status"].as_str().unwrap_or(""));
        for v in a["violations"].as_array().into_iter().flatten() {
            let _ = writeln!(
                out,
                "  h {} generator {} basis vector {} image {}",
                v["h"], v["generator"], v["basisVector"], v["image"]
            );
        }
    }
    out
}
