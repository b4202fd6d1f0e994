use std::path::PathBuf;

use skv_core::arithdata::*;
use skv_core::verify::*;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> Fixture {
    Fixture::load(&fixture_dir().join(format!("{name}.json"))).unwrap()
}

fn raw(name: &str) -> serde_json::Value {
    serde_json::from_str(
        &std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap(),
    )
    .unwrap()
}

const ABELIAN: [&str; 7] = [
    "q",
    "q_i",
    "q_zeta3",
    "q_sqrt_m5",
    "q_zeta7",
    "q_sqrt5",
    "q_zeta23",
];

fn run(fix: &Fixture, c: Check) -> Verdict {
    c.run(fix, &CheckOptions::default()).unwrap()
}

fn faulted(fix: &Fixture, c: Check) -> Verdict {
    let opts = CheckOptions {
        fault: Some(Fault::for_fixture(fix, None)),
        ..Default::default()
    };
    c.run(fix, &opts).unwrap()
}

fn with_sets(fix: &Fixture, s: &str, t: &str, r: i64) -> CheckOptions {
    let sets = SetChoice {
        s: fix.parse_place_list(s).unwrap(),
        t: fix.parse_place_list(t).unwrap(),
        r,
    };
    CheckOptions {
        sets: Some(sets),
        ..Default::default()
    }
}

fn assert_shape(v: &Verdict) {
    match v.status {
        Status::Falsified => assert!(v.failures().next().is_some(), "{v:?}"),
        Status::Inconclusive => assert!(v.reason.as_ref().is_some_and(|r| !r.is_empty()), "{v:?}"),
        Status::Verified => assert!(
            v.failures().next().is_none() && !v.witnesses.is_empty(),
            "{v:?}"
        ),
    }
}

#[test]
fn every_check_is_verified_on_abelian_fixtures() {
    for name in ABELIAN {
        let fix = load(name);
        for c in Check::ALL {
            let v = run(&fix, c);
            assert_shape(&v);
            assert_eq!(v.status, Status::Verified, "{name} {}: {v:?}", c.id());
        }
    }
}

#[test]
fn every_check_flips_under_a_fault() {
    for name in ABELIAN.into_iter().chain(["s3_229"]) {
        let fix = load(name);
        let d = Fault::for_fixture(&fix, None).denominator;
        for c in Check::ALL {
            let v = faulted(&fix, c);
            assert_shape(&v);
            assert_eq!(v.status, Status::Falsified, "{name} {}", c.id());
            assert!(
                v.failures().any(|w| w.value.contains(&format!("/{d}"))),
                "{name} {}: {v:?}",
                c.id()
            );
        }
    }
}

#[test]
fn fault_denominator_avoids_group_order_and_roots_of_unity() {
    assert_eq!(Fault::for_fixture(&load("q_zeta7"), None).denominator, 11);
    assert_eq!(Fault::for_fixture(&load("q_zeta23"), None).denominator, 7);
    assert_eq!(
        Fault::for_fixture(&load("q_zeta23"), Some(3)).denominator,
        3
    );
}

#[test]
fn s3_theorem_checks_with_declared_sources() {
    let fix = load("s3_229");
    for c in [Check::StickelbergerInt, Check::SkuMaxord, Check::NegativeR] {
        let v = run(&fix, c);
        assert_eq!(v.status, Status::Verified, "{}: {v:?}", c.id());
        assert!(
            v.notes.iter().any(|n| n.contains("fixture-supplied")),
            "{}",
            c.id()
        );
    }
    // no class group is declared for the sextic field
    let v = run(&fix, Check::Brumer);
    assert_eq!(v.status, Status::Inconclusive);
    assert!(v.reason.unwrap().contains("classGroups"));
}

#[test]
fn tampered_source_value_is_caught_with_its_character() {
    let mut v = raw("s3_229");
    for e in v["sources"][1]["values"].as_array_mut().unwrap() {
        if e["r"] == -1 {
            // 7 divides δ_T at 5 (|1 − 25ζ_3|² = 3·7·31), so the tamper uses 11
            e["value"] = serde_json::json!("89/11");
        }
    }
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    let verdict = run(&fix, Check::StickelbergerInt);
    assert_eq!(verdict.status, Status::Falsified);
    let w = verdict.failures().next().unwrap();
    let rho = (0..fix.table.len())
        .find(|&c| fix.table.degree(c) == 2)
        .unwrap();
    assert_eq!(
        w.character.as_deref(),
        Some(fix.table.char(rho).label.as_str())
    );
    assert!(w.value.contains("/11"));
}

#[test]
fn missing_sources_make_checks_inconclusive() {
    let mut v = raw("s3_229");
    v["sources"].as_array_mut().unwrap().truncate(1);
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    for c in [Check::StickelbergerInt, Check::SkuMaxord, Check::NegativeR] {
        let verdict = run(&fix, c);
        assert_eq!(verdict.status, Status::Inconclusive, "{}", c.id());
        let reason = verdict.reason.unwrap();
        assert!(
            reason.contains("missing sources")
                && reason.contains("chi_2 (induced from {1, s, s2})"),
            "{reason}"
        );
    }
}

#[test]
fn empty_place_pool_is_inconclusive() {
    let mut v = raw("q_zeta3");
    v["tPool"] = serde_json::json!(["2"]);
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    let verdict = run(&fix, Check::SkuMaxord);
    assert_eq!(verdict.status, Status::Inconclusive);
    assert!(verdict.reason.unwrap().contains("--bound"));
}

#[test]
fn zeta23_class_group_is_killed() {
    let fix = load("q_zeta23");
    for c in [Check::Brumer, Check::BrumerStark] {
        let v = run(&fix, c);
        assert_eq!(v.status, Status::Verified);
        assert!(
            v.witnesses.iter().any(|w| w.value == "annihilated"),
            "{}",
            c.id()
        );
    }
}

#[test]
fn integral_fault_leaves_a_class_witness() {
    // ω_L(θ + 1) = ω_L θ + 46 passes integrality but 46 does not kill Z/3
    let fix = load("q_zeta23");
    let opts = CheckOptions {
        fault: Some(Fault {
            numerator: 1,
            denominator: 1,
        }),
        ..Default::default()
    };
    let verdict = check_brumer_stark_necessary(&fix, &opts).unwrap();
    assert_eq!(verdict.status, Status::Falsified);
    assert!(
        verdict
            .failures()
            .all(|w| w.context.contains("class basis vector 0")),
        "{verdict:?}"
    );
}

#[test]
fn sqrt_m5_class_number_two() {
    // S = {∞, 2, 5}: L(0, χ_{-20}) = 2 at the sign character kills Z/2
    let fix = load("q_sqrt_m5");
    let v = run(&fix, Check::Brumer);
    assert_eq!(v.status, Status::Verified);
}

#[test]
fn negative_r_for_q_and_q_i() {
    let q = load("q");
    let v = check_negative_r(&q, &with_sets(&q, "inf", "", -1)).unwrap();
    assert_eq!(v.status, Status::Verified);
    assert!(v.witnesses[0].value.contains("w_2 = 24"));
    let qi = load("q_i");
    let v = check_negative_r(&qi, &with_sets(&qi, "inf,2", "", -1)).unwrap();
    assert_eq!(v.status, Status::Verified);
    // r = −2 on a real field: θ vanishes
    let v = check_negative_r(
        &load("q_sqrt5"),
        &with_sets(&load("q_sqrt5"), "inf,5", "", -2),
    )
    .unwrap();
    assert_eq!(v.status, Status::Verified);
    assert!(v.witnesses[0].value.contains("theta vanishes"));
}

#[test]
fn p_local_check_ignores_other_denominators() {
    let fix = load("q_i");
    let mut opts = with_sets(&fix, "inf,2", "3", 0);
    opts.fault = Some(Fault {
        numerator: 1,
        denominator: 5,
    });
    assert_eq!(
        check_theorem_stickelberger_int(&fix, &opts).unwrap().status,
        Status::Falsified
    );
    opts.p = Some(3);
    assert_eq!(
        check_theorem_stickelberger_int(&fix, &opts).unwrap().status,
        Status::Verified
    );
    opts.p = Some(5);
    assert_eq!(
        check_theorem_stickelberger_int(&fix, &opts).unwrap().status,
        Status::Falsified
    );
}

#[test]
fn hyp_only_set_is_skipped_at_negative_r() {
    let fix = load("q");
    let v = check_theorem_stickelberger_int(&fix, &with_sets(&fix, "inf,2", "3", -1)).unwrap();
    assert_eq!(v.status, Status::Inconclusive);
    assert!(v.notes.iter().any(|n| n.contains("twisted roots of unity")));
}

#[test]
fn reports_are_deterministic() {
    for name in ["q_zeta23", "s3_229"] {
        let fix = load(name);
        let opts = CheckOptions {
            seed: 5,
            ..Default::default()
        };
        let a = Report::new(&fix, 5, run_checks(&fix, &Check::ALL, &opts).unwrap());
        let b = Report::new(&fix, 5, run_checks(&fix, &Check::ALL, &opts).unwrap());
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json()["version"], "skvreport/1");
        assert!(a.to_json()["timings"].is_null());
    }
}

#[test]
fn exit_codes() {
    let fix = load("q_zeta23");
    assert_eq!(
        Report::new(
            &fix,
            0,
            run_checks(&fix, &Check::ALL, &CheckOptions::default()).unwrap()
        )
        .exit_code(),
        0
    );
    let s3 = load("s3_229");
    assert_eq!(
        Report::new(
            &s3,
            0,
            run_checks(&s3, &Check::ALL, &CheckOptions::default()).unwrap()
        )
        .exit_code(),
        2
    );
    let opts = CheckOptions {
        fault: Some(Fault::default()),
        ..Default::default()
    };
    assert_eq!(
        exit_code(&run_checks(&fix, &[Check::StickelbergerInt], &opts).unwrap()),
        1
    );
}

#[test]
fn exceptional_prime_screening() {
    let e = exceptional_primes(&load("q_zeta3"));
    let flagged: Vec<u64> = e.iter().filter(|x| x.exceptional).map(|x| x.p).collect();
    assert_eq!(flagged, vec![2, 3]);
    assert!(e.iter().find(|x| x.p == 3).unwrap().zeta_p_declared);
    // Q(i): 2 is wild and its decomposition group contains j
    let e = exceptional_primes(&load("q_i"));
    assert!(e.iter().all(|x| x.not_almost_tame.is_empty()));
    let e = exceptional_primes(&load("q_sqrt_m5"));
    assert_eq!(
        e.iter()
            .filter(|x| x.exceptional)
            .map(|x| x.p)
            .collect::<Vec<_>>(),
        vec![2]
    );
}
