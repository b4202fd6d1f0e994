//! One PASS/FAIL line per acceptance criterion. Run with `cargo test -p skv-cli --test acceptance -- --nocapture`.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;
#[path = "../../core/tests/support/props.rs"]
mod props;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use oracle::Numeric;
use skv_core::arith::{qf, Cyc};
use skv_core::arithdata::{check_hyp, mu_tate_annihilators, Fixture};
use skv_core::center::CentralElement;
use skv_core::engine::{h_of_r, h_r_failures, theta};
use skv_core::groups::{members, FiniteGroup};
use skv_core::lvalues::{generalized_bernoulli, l_at_nonpositive, DirichletCharacter};
use skv_core::verify::{
    check_brumer, check_theorem_sku_maxord, check_theorem_stickelberger_int, default_s,
    CheckOptions, Fault, Status,
};

type Outcome = Result<String, String>;

const ABELIAN: [&str; 7] = [
    "q",
    "q_i",
    "q_zeta3",
    "q_sqrt_m5",
    "q_zeta7",
    "q_sqrt5",
    "q_zeta23",
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture_path(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.json"))
}

fn load(name: &str) -> Fixture {
    Fixture::load(&fixture_path(name)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_l_values() -> Outcome {
    let nontrivial = |f| {
        DirichletCharacter::all(f)
            .into_iter()
            .find(|c| !c.is_trivial())
            .unwrap()
    };
    let named = [
        ("L(0, chi_-3)", nontrivial(3), 0, qf(1, 3)),
        ("L(0, chi_-4)", nontrivial(4), 0, qf(1, 2)),
        ("zeta(0)", DirichletCharacter::trivial(1), 0, qf(-1, 2)),
        ("zeta(-1)", DirichletCharacter::trivial(1), -1, qf(-1, 12)),
    ];
    let start = Instant::now();
    let mut exact = Vec::new();
    for (label, chi, r, expected) in &named {
        let v = l_at_nonpositive(*r, chi).map_err(|e| e.to_string())?;
        ensure(v == Cyc::from_rational(expected.clone()), || {
            format!("{label} = {v}")
        })?;
        exact.push(v);
    }
    let mut even = Vec::new();
    for f in 3..=100u64 {
        for chi in DirichletCharacter::all(f) {
            if chi.conductor() == f && chi.is_even() && !chi.is_trivial() {
                let b = generalized_bernoulli(1, &chi).map_err(|e| e.to_string())?;
                ensure(b.is_zero(), || {
                    format!("B_1 of an even character mod {f} is {b}")
                })?;
                even.push(chi);
            }
        }
    }
    let exact_time = start.elapsed();
    ensure(exact_time < Duration::from_secs(5), || {
        format!("exact values took {exact_time:?}")
    })?;

    let start = Instant::now();
    let mut n = Numeric::new(192);
    let tol = n.parse("1e-30");
    for ((label, chi, r, _), v) in named.iter().zip(&exact) {
        let s = n.int(*r);
        let (re, im) = n.dirichlet_l(&s, chi.modulus(), chi.value_order(), |a| {
            chi.exponent_at(a as i64)
        });
        let (er, ei) = n.cyclotomic(v.order(), v.coeffs());
        ensure(n.close(&re, &er, &tol) && n.close(&im, &ei, &tol), || {
            format!("numeric {label} disagrees")
        })?;
    }
    let zero = n.int(0);
    let s = n.int(0);
    let mut f_done = 0;
    let mut zetas = Vec::new();
    for chi in &even {
        let f = chi.modulus();
        if f != f_done {
            zetas = (1..=f)
                .map(|a| {
                    Some(n.hurwitz(
                        &s,
                        &n.int(a as i64).div(
                            &n.int(f as i64),
                            n.p,
                            astro_float::RoundingMode::ToEven,
                        ),
                    ))
                })
                .collect();
            f_done = f;
        }
        let (re, im) = n.character_sum(&s, f, chi.value_order(), &zetas, |a| {
            chi.exponent_at(a as i64)
        });
        ensure(
            n.close(&re, &zero, &tol) && n.close(&im, &zero, &tol),
            || format!("numeric L(0) of an even character mod {f}"),
        )?;
    }
    Ok(format!(
        "4 named values and {} even characters exact in {:.2}s; 50-digit Hurwitz oracle agrees to 1e-30 ({:.1}s)",
        even.len(),
        exact_time.as_secs_f64(),
        start.elapsed().as_secs_f64()
    ))
}

fn stickelberger_shadow() -> Outcome {
    let fix = load("q_zeta23");
    let s = default_s(&fix);
    let mut sets = 0;
    for &t in &fix.t_pool {
        if !check_hyp(&fix, &s, &[t]).map_err(|e| e.to_string())?.holds {
            continue;
        }
        let th = theta(&fix, &s, &[t], 0)
            .map_err(|e| e.to_string())?
            .into_element()
            .map_err(|e| e.to_string())?;
        let x = th.element.to_group_ring();
        ensure(x.is_integral(), || {
            format!(
                "theta with T = {{{}}} has coefficient {:?}",
                fix.places[t].label,
                x.non_integral_witness()
            )
        })?;
        sets += 1;
    }
    ensure(sets > 0, || "no Hyp(S, T) set in the place pool".into())?;
    let verdict = check_brumer(&fix, &CheckOptions::default()).map_err(|e| e.to_string())?;
    ensure(verdict.status == Status::Verified, || {
        format!("brumer: {verdict:?}")
    })?;
    ensure(
        verdict.witnesses.iter().any(|w| w.value == "annihilated"),
        || "no annihilation witness".into(),
    )?;
    let class_order: u64 = fix
        .class_groups
        .iter()
        .find(|c| c.t.is_empty())
        .map(|c| c.module.factors().iter().product())
        .unwrap_or(0);
    let mut n = Numeric::new(192);
    let (re, im) = n.relative_class_number(23);
    let (tol, three, zero) = (n.parse("1e-30"), n.int(3), n.int(0));
    ensure(
        n.close(&re, &three, &tol) && n.close(&im, &zero, &tol),
        || "relative class number oracle is not 3".into(),
    )?;
    ensure(class_order == 3, || {
        format!("fixture class group has order {class_order}")
    })?;
    Ok(format!(
        "{sets} Hyp sets give integral theta; Z/3 annihilated; oracle h- = 3"
    ))
}

fn theorem_stickelberger_int() -> Outcome {
    let mut worst = Duration::ZERO;
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        let start = Instant::now();
        let v = check_theorem_stickelberger_int(&fix, &CheckOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(v.status == Status::Verified, || {
            format!("{name}: {:?} {:?}", v.status, v.reason)
        })?;
        let fault = Fault::for_fixture(&fix, None);
        let opts = CheckOptions {
            fault: Some(fault),
            ..CheckOptions::default()
        };
        let v = check_theorem_stickelberger_int(&fix, &opts).map_err(|e| e.to_string())?;
        ensure(v.status == Status::Falsified, || {
            format!("{name}: fault not detected")
        })?;
        let w = v.failures().next().unwrap();
        ensure(
            w.character.is_some() && w.value.contains(&format!("/{}", fault.denominator)),
            || format!("{name}: witness {w:?}"),
        )?;
        worst = worst.max(start.elapsed());
    }
    ensure(worst < Duration::from_secs(30), || {
        format!("slowest fixture took {worst:?}")
    })?;
    Ok(format!(
        "8 fixtures verified, every fault falsified with a witness; slowest {:.2}s",
        worst.as_secs_f64()
    ))
}

fn theorem_sku_maxord() -> Outcome {
    let start = Instant::now();
    let mut witnesses = 0;
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        let v =
            check_theorem_sku_maxord(&fix, &CheckOptions::default()).map_err(|e| e.to_string())?;
        ensure(v.status == Status::Verified, || {
            format!("{name}: {:?} {:?}", v.status, v.reason)
        })?;
        witnesses += v.witnesses.len();
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "SKu' and inertia-norm checks verified on 8 fixtures ({witnesses} confirmations) in {:.2}s",
        t.as_secs_f64()
    ))
}

fn algebra_properties() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for g in [
        FiniteGroup::symmetric3(),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::cyclic(6),
    ] {
        total += props::run_all(g)?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "{total} instances over S3, D4, Q8, C6 (100 per law and group) in {:.2}s",
        t.as_secs_f64()
    ))
}

fn h_r_reduction() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for name in ["q_i", "q_zeta3", "q_sqrt_m5", "q_zeta7", "q_zeta23"] {
        let fix = load(name);
        let s = default_s(&fix);
        for r in [0, -1] {
            let th = theta(&fix, &s, &[], r)
                .map_err(|e| e.to_string())?
                .into_element()
                .map_err(|e| e.to_string())?;
            let h = h_of_r(&fix, r).map_err(|e| e.to_string())?;
            let eps = CentralElement::eps_h(&fix.table, h).map_err(|e| e.to_string())?;
            ensure(
                eps.mul(&th.element).map_err(|e| e.to_string())? == th.element,
                || format!("{name} r = {r}: eps theta != theta"),
            )?;
            ensure(
                h_r_failures(&fix, &th)
                    .map_err(|e| e.to_string())?
                    .is_empty(),
                || format!("{name} r = {r}"),
            )?;
            for chi in 0..fix.table.len() {
                let kernel_contains_h = members(h).iter().all(|&g| {
                    fix.table.value(chi, g) == &Cyc::from_int(fix.table.degree(chi) as i64)
                });
                ensure(
                    kernel_contains_h || th.element.component(chi).is_zero(),
                    || format!("{name} r = {r}: component off the kernel"),
                )?;
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!(
        "{checked} (fixture, r) pairs on CM fields in {:.2}s",
        t.as_secs_f64()
    ))
}

fn negative_r() -> Outcome {
    let start = Instant::now();
    let mut products = 0;
    for (name, sets) in [
        ("q", vec!["inf", "inf,2", "inf,3"]),
        ("q_i", vec!["inf,2", "inf,2,3"]),
    ] {
        let fix = load(name);
        let ann = mu_tate_annihilators(&fix, -1).map_err(|e| e.to_string())?;
        for s in sets {
            let s = fix.parse_place_list(s).map_err(|e| e.to_string())?;
            let th = theta(&fix, &s, &[], -1)
                .map_err(|e| e.to_string())?
                .into_element()
                .map_err(|e| e.to_string())?;
            for x in &ann.generators {
                let nr = fix
                    .real
                    .reduced_norm_element(x)
                    .map_err(|e| e.to_string())?;
                let y = nr
                    .mul(&th.element)
                    .map_err(|e| e.to_string())?
                    .to_group_ring();
                ensure(y.is_integral(), || {
                    format!("{name}: nr({x}) theta_S(-1) = {y}")
                })?;
                products += 1;
            }
        }
    }
    // w_2(Q): the largest m with a^2 = 1 mod m for every unit a
    let w2 = (1..=10_000u64)
        .filter(|&m| (1..m).filter(|a| gcd(*a, m) == 1).all(|a| a * a % m == 1))
        .max()
        .unwrap();
    ensure(w2 == 24, || format!("direct search gives w_2(Q) = {w2}"))?;
    let declared = load("q")
        .twists
        .iter()
        .find(|t| t.n == 2)
        .map(|t| t.action.w);
    ensure(declared == Some(24), || {
        format!("fixture declares w_2 = {declared:?}")
    })?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!(
        "{products} products nr(x) theta_S(-1) integral; w_2(Q) = 24 by direct search ({:.2}s)",
        t.as_secs_f64()
    ))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let mut names: Vec<PathBuf> = std::fs::read_dir(root().join("fixtures"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    for path in &names {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_skv"))
                .args(["check", "all", "--seed", "0", "--fixture"])
                .arg(path)
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        ensure(a.status.code().is_some_and(|c| c <= 2), || {
            format!("{}: exit {:?}", path.display(), a.status.code())
        })?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{}: reports differ", path.display())
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!(
        "{} shipped fixtures byte-identical across two runs; full suite {:.1}s",
        names.len(),
        t.as_secs_f64()
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exact L-values", exact_l_values),
        ("Stickelberger shadow on Q(zeta_23)", stickelberger_shadow),
        (
            "integrality of theta on admissible sets",
            theorem_stickelberger_int,
        ),
        (
            "SKu' in the centre of the maximal order",
            theorem_sku_maxord,
        ),
        ("group-ring algebra laws", algebra_properties),
        ("H(r) reduction on CM fixtures", h_r_reduction),
        ("negative r", negative_r),
        ("deterministic reports", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(e) => {
                println!("FAIL criterion {} ({name}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
