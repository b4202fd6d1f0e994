use std::path::PathBuf;

use skv_core::arith::{qf, Cyc, Rational};
use skv_core::arithdata::*;
use skv_core::center::{CentralElement, GroupRingElement};
use skv_core::engine::*;
use skv_core::groups::size;

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
const CM: [&str; 5] = ["q_i", "q_zeta3", "q_sqrt_m5", "q_zeta7", "q_zeta23"];

fn places(fix: &Fixture, text: &str) -> Vec<usize> {
    fix.parse_place_list(text).unwrap()
}

fn assembled(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> ThetaElement {
    theta(fix, s, t, r).unwrap().into_element().unwrap()
}

/// Hyp(S, T) at r = 0, the twisted condition on top of it for r < 0.
fn integral_sets(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> bool {
    if r == 0 {
        check_hyp(fix, s, t).unwrap().holds
    } else {
        check_admissible(fix, s, t, 2, r).unwrap().holds
    }
}

fn c(x: Rational) -> Cyc {
    Cyc::from_rational(x)
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut acc = 1i64;
    let (mut b, mut e) = (a.rem_euclid(p), (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if acc == p - 1 {
        -1
    } else {
        acc
    }
}

#[test]
fn trivial_group_is_riemann_zeta() {
    let fix = load("q");
    let s = places(&fix, "inf");
    let th = assembled(&fix, &s, &[], 0);
    assert_eq!(th.element.component(0), &c(qf(-1, 2)));
    assert!(th.cross_checked);
    let th = assembled(&fix, &s, &[], -1);
    assert_eq!(th.element.component(0), &c(qf(-1, 12)));
}

#[test]
fn zeta3_group_ring_coefficients() {
    // Σ_a (1/2 − a/3) σ_a⁻¹ over a ∈ {1, 2}
    let fix = load("q_zeta3");
    let th = assembled(&fix, &places(&fix, "inf,3"), &[], 0);
    assert!(th.cross_checked);
    let x = th.element.to_group_ring();
    let g = &fix.group;
    for a in [1i64, 2] {
        let sigma = g.index_of(&format!("s{a}")).unwrap_or(0);
        let expected = qf(1, 2) - qf(a, 3);
        assert_eq!(x.coeff(g.inv(sigma)), c(expected), "a = {a}");
    }
}

#[test]
fn real_field_has_vanishing_nontrivial_components() {
    let fix = load("q_sqrt5");
    for (s, t) in [("inf,5", "3"), ("inf,5,11", "2")] {
        let th = assembled(&fix, &places(&fix, s), &places(&fix, t), 0);
        for chi in 0..fix.table.len() {
            if !fix.table.char(chi).cert.psi.is_trivial() {
                assert!(th.element.component(chi).is_zero());
            }
        }
    }
}

#[test]
fn abelian_routes_agree_on_all_sets() {
    for name in ABELIAN {
        let fix = load(name);
        for sets in &fix.sets {
            let a = theta_abelian(&fix, &sets.s, &sets.t, sets.r).unwrap();
            let b = match theta_monomial(&fix, &sets.s, &sets.t, sets.r).unwrap() {
                Theta::Assembled(x) => x,
                Theta::Incomplete(m) => panic!("{name}: {m:?}"),
            };
            assert_eq!(a.element, b.element, "{name} {:?}", sets);
            assert!(a.element.to_group_ring().has_rational_coeffs());
        }
    }
}

#[test]
fn partial_zeta_route_needs_primes_of_the_conductor() {
    let fix = load("q_zeta7");
    assert!(partial_zeta_theta(&fix, &places(&fix, "inf"), &[], 0)
        .unwrap()
        .is_none());
    assert!(partial_zeta_theta(&fix, &places(&fix, "inf,7,2"), &[], -1)
        .unwrap()
        .is_some());
}

#[test]
fn s3_components_at_minus_one() {
    let fix = load("s3_229");
    let th = assembled(&fix, &places(&fix, "inf,229"), &places(&fix, "3"), -1);
    assert_eq!(th.route, Route::Monomial);
    assert!(th.fixture_supplied());
    // L(−1, χ_229) = −B_{2,χ}/2 with B_{2,χ} = (1/229) Σ χ(a) a² for even χ
    let sum: i64 = (1..229).map(|a| legendre(a, 229) * a * a).sum();
    let l_sign = qf(-sum, 2 * 229);
    for chi in 0..fix.table.len() {
        let ch = fix.table.char(chi);
        let expected = if ch.degree == 2 {
            c(qf(8 * -228 * 91, 1))
        } else if ch.cert.psi.is_trivial() {
            c(qf(-152, 1))
        } else {
            // χ(3) = 1 since Frob_3 is a 3-cycle; 229 ramifies in the sign character
            c(l_sign.clone() * qf(-8, 1))
        };
        assert_eq!(th.element.component(chi), &expected, "{}", ch.label);
    }
    assert!(th.element.to_group_ring().has_rational_coeffs());
}

#[test]
fn s3_table_values_match_sources() {
    let fix = load("s3_229");
    let th = assembled(&fix, &places(&fix, "inf,229"), &[], -1);
    let rho = (0..fix.table.len())
        .find(|&chi| fix.table.degree(chi) == 2)
        .unwrap();
    // the induction identity: component = source value × Euler factor at the place above 229
    assert_eq!(th.element.component(rho), &Cyc::from_int(8 * -228));
}

#[test]
fn sharp_contract_on_all_fixtures() {
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        for sets in &fix.sets {
            let th = assembled(&fix, &sets.s, &sets.t, sets.r);
            assert_eq!(sharp_contract(&fix, &th).unwrap(), None, "{name} {sets:?}");
        }
    }
}

#[test]
fn h_r_idempotent_fixes_theta_on_cm_fixtures() {
    for name in CM {
        let fix = load(name);
        let s: Vec<usize> = fix
            .ramified_places()
            .into_iter()
            .chain(fix.infinite_places())
            .collect();
        let mut s = s;
        s.sort();
        for r in [0, -1] {
            let th = assembled(&fix, &s, &[], r);
            assert!(
                h_r_failures(&fix, &th).unwrap().is_empty(),
                "{name} r = {r}"
            );
            let h = h_of_r(&fix, r).unwrap();
            assert_eq!(size(h), if r == 0 { 1 } else { 2 }, "{name}");
        }
        // at r = −1 the odd components vanish
        let th = assembled(&fix, &s, &[], -1);
        let j = fix.j.unwrap();
        for chi in 0..fix.table.len() {
            if fix.table.value(chi, j) != &Cyc::from_int(fix.table.degree(chi) as i64) {
                assert!(th.element.component(chi).is_zero());
            }
        }
    }
}

#[test]
fn enlarging_s_multiplies_by_euler_factors() {
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        for sets in &fix.sets {
            for extra in fix
                .t_pool
                .iter()
                .copied()
                .filter(|i| !sets.s.contains(i) && !sets.t.contains(i))
            {
                let mut s2 = sets.s.clone();
                s2.push(extra);
                s2.sort();
                let small = assembled(&fix, &sets.s, &sets.t, sets.r);
                let big = assembled(&fix, &s2, &sets.t, sets.r);
                let factor =
                    local_factor_element(&fix, &fix.places[extra], sets.r, FactorKind::Euler)
                        .unwrap();
                assert_eq!(
                    big.element,
                    factor.mul(&small.element).unwrap(),
                    "{name} +{}",
                    fix.places[extra].label
                );
            }
        }
    }
}

#[test]
fn missing_sources_are_listed() {
    let mut v = raw("s3_229");
    v["sources"]
        .as_array_mut()
        .unwrap()
        .retain(|s| s["kind"] == "cyclotomic");
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    match theta(&fix, &places(&fix, "inf,229"), &places(&fix, "3"), -1).unwrap() {
        Theta::Incomplete(m) => {
            assert_eq!(m.len(), 1);
            assert_eq!(m[0].subgroup, vec!["1", "s", "s2"]);
        }
        Theta::Assembled(_) => panic!("expected missing sources"),
    }
    // a value at an r the table lacks
    let fix = load("s3_229");
    assert!(matches!(
        theta(&fix, &places(&fix, "inf,229"), &[], -3).unwrap(),
        Theta::Incomplete(_)
    ));
}

#[test]
fn inconsistent_source_data_is_rejected() {
    let mut v = raw("s3_229");
    v["sources"][1]["values"][2]["S"] = serde_json::json!(["inf#0", "inf#7"]);
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    assert!(theta(&fix, &places(&fix, "inf,229"), &[], -1).is_err());
    // r = 0 must vanish at the two real places of the quadratic field
    let mut v = raw("s3_229");
    for e in v["sources"][1]["values"].as_array_mut().unwrap() {
        if e["r"] == 0 {
            e["value"] = serde_json::json!("1");
        }
    }
    let fix = Fixture::from_json_str(&v.to_string()).unwrap();
    // with 229 in S the Euler factor at the ramified prime hides the value
    assert!(theta(&fix, &places(&fix, "inf"), &places(&fix, "3"), 0).is_err());
    // a cyclotomic source whose Artin map contradicts the Frobenius data
    let mut v = raw("s3_229");
    v["sources"][0]["artin"] = serde_json::json!({"2": "t"});
    if let Ok(fix) = Fixture::from_json_str(&v.to_string()) {
        assert!(theta(&fix, &places(&fix, "inf,229"), &places(&fix, "3"), -1).is_err());
    }
}

#[test]
fn u_prime_examples() {
    // C2 with I = G at 2: nr(N_I) = N_I = (2, 0)
    let fix = load("q_i");
    let u = u_prime_generators(&fix, &places(&fix, "inf,2")).unwrap();
    assert_eq!(u.generators.len(), 2);
    let triv = (0..2)
        .find(|&chi| fix.table.char(chi).cert.psi.is_trivial())
        .unwrap();
    let n_i = &u.generators[0].element;
    assert_eq!(n_i.component(triv), &Cyc::from_int(2));
    assert!(n_i.component(1 - triv).is_zero());
    // a split place contributes nr(1) = 1 and nr(1 − 1) = 0
    let fix = load("q_zeta3");
    let u = u_prime_generators(&fix, &places(&fix, "inf,3,7")).unwrap();
    assert_eq!(u.generators.len(), 4);
    let seven = fix.place("7").unwrap();
    for gen in &u.generators {
        let (_, choice) = gen.choices.iter().find(|(p, _)| *p == seven).unwrap();
        if choice == UChoice::Frobenius.tag() {
            assert!(gen.element.is_zero());
        }
    }
    assert!(u_prime_generators(&fix, &places(&fix, "inf")).is_err());
}

#[test]
fn frobenius_norm_is_the_euler_factor_at_zero() {
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        let base: Vec<usize> = fix
            .ramified_places()
            .into_iter()
            .chain(fix.infinite_places())
            .collect();
        for i in (0..fix.places.len()).filter(|&i| !fix.places[i].infinite) {
            let mut s = base.clone();
            if !s.contains(&i) {
                s.push(i);
            }
            s.sort();
            let u = u_prime_generators(&fix, &s).unwrap();
            let only_frob = u
                .generators
                .iter()
                .find(|g| {
                    g.choices
                        .iter()
                        .all(|(p, c)| (c == UChoice::Frobenius.tag()) == (*p == i))
                })
                .unwrap();
            let mut expected =
                local_factor_element(&fix, &fix.places[i], 0, FactorKind::Euler).unwrap();
            for &p in s.iter().filter(|&&p| p != i && !fix.places[p].infinite) {
                let n = GroupRingElement::norm_element(&fix.group, fix.places[p].inertia);
                expected = expected
                    .mul(&fix.real.reduced_norm_element(&n).unwrap())
                    .unwrap();
            }
            assert_eq!(
                only_frob.element, expected,
                "{name} at {}",
                fix.places[i].label
            );
        }
    }
}

#[test]
fn inertia_norm_formula() {
    // nr(N_I) at χ is |I|^{χ(1)} when I ⊆ ker χ, else 0
    for name in ABELIAN.iter().chain(&["s3_229"]) {
        let fix = load(name);
        for pl in fix.places.iter().filter(|p| !p.infinite) {
            let n = fix
                .real
                .reduced_norm_element(&GroupRingElement::norm_element(&fix.group, pl.inertia))
                .unwrap();
            for chi in 0..fix.table.len() {
                let expected = if fix.table.kernel(chi) & pl.inertia == pl.inertia {
                    Cyc::from_int((size(pl.inertia) as i64).pow(fix.table.degree(chi) as u32))
                } else {
                    Cyc::from_int(0)
                };
                assert_eq!(n.component(chi), &expected, "{name} {}", pl.label);
            }
        }
    }
}

#[test]
fn sku_prime_generators_on_cm_fixtures() {
    for name in CM {
        let fix = load(name);
        let mut s: Vec<usize> = fix
            .ramified_places()
            .into_iter()
            .chain(fix.infinite_places())
            .collect();
        s.sort();
        let sku = sku_prime_generators(&fix, &s, DEFAULT_BOUND).unwrap();
        assert!(!sku.generators.is_empty(), "{name}");
        let j = fix.j.unwrap();
        for g in &sku.generators {
            for chi in 0..fix.table.len() {
                // L(0, χ) for even χ ≠ 1 vanishes at the real place of K
                let even = fix.table.value(chi, j) == &Cyc::from_int(fix.table.degree(chi) as i64);
                if even && !fix.table.char(chi).cert.psi.is_trivial() {
                    assert!(g.element.component(chi).is_zero(), "{name}");
                }
            }
            // abelian: SKu′ ⊆ ℤG
            assert!(g.element.to_group_ring().is_integral(), "{name}");
        }
    }
}

#[test]
fn sku_prime_generators_lie_in_truncated_sku() {
    for name in ["q_i", "q_zeta3", "q_sqrt_m5"] {
        let fix = load(name);
        let mut s: Vec<usize> = fix
            .ramified_places()
            .into_iter()
            .chain(fix.infinite_places())
            .collect();
        s.sort();
        let primed = sku_prime_generators(&fix, &s, 1).unwrap();
        let full = sku_generators_truncated(&fix, &s, 1, 100_000).unwrap();
        for g in &primed.generators {
            assert!(
                full.generators.iter().any(|h| h.element == g.element),
                "{name}"
            );
        }
        for h in &full.generators {
            assert!(h.element.to_group_ring().is_integral(), "{name}");
        }
    }
}

#[test]
fn s3_sku_prime_vanishes_at_zero() {
    // totally real: L(0, χ) = 0 for χ ≠ 1, while the trivial component is ζ(0) = −1/2
    let fix = load("s3_229");
    let sku = sku_prime_generators(&fix, &places(&fix, "inf,229"), DEFAULT_BOUND).unwrap();
    assert!(sku.missing.is_empty());
    let l0 = sku.l0_sharp.as_ref().unwrap();
    for chi in 0..fix.table.len() {
        let trivial = fix.table.char(chi).cert.psi.is_trivial() && fix.table.degree(chi) == 1;
        assert_eq!(l0.component(chi).is_zero(), !trivial);
        for g in &sku.generators {
            if !trivial {
                assert!(g.element.component(chi).is_zero());
            }
        }
    }
}

#[test]
fn inertia_norm_multiples() {
    // J = ∅ gives θ itself
    let fix = load("q_i");
    let s = places(&fix, "inf,2");
    let t = places(&fix, "3");
    let plain = assembled(&fix, &s, &t, 0);
    let x = theta_with_inertia_norms(&fix, &[], &s, &t, 0)
        .unwrap()
        .unwrap();
    assert_eq!(x.element, plain.element);
    // J = {2}: H_J = G, z = 1 and N_G·ζ_{∞}^{3}(0) = N_G·(−1/2)(1 − 3) = 1 + σ
    let j = places(&fix, "2");
    let x = theta_with_inertia_norms(&fix, &j, &s, &t, 0)
        .unwrap()
        .unwrap();
    assert_eq!(x.h_j, fix.group.full());
    assert_eq!(x.z(&fix), qf(1, 1));
    let gr = x.element.to_group_ring();
    assert_eq!(gr.coeff(0), Cyc::from_int(1));
    assert_eq!(gr.coeff(1), Cyc::from_int(1));
    // Corollary shape z·N_{H_J}·θ_{S_J} and integrality on every abelian fixture
    for name in ABELIAN {
        let fix = load(name);
        for sets in &fix.sets {
            let ram: Vec<usize> = fix
                .ramified_places()
                .into_iter()
                .filter(|i| sets.s.contains(i))
                .collect();
            for mask in 0..(1u32 << ram.len()) {
                let j: Vec<usize> = (0..ram.len())
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| ram[b])
                    .collect();
                let x = theta_with_inertia_norms(&fix, &j, &sets.s, &sets.t, sets.r)
                    .unwrap()
                    .unwrap();
                let n_h = CentralElement::from_group_ring(
                    &GroupRingElement::norm_element(&fix.group, x.h_j),
                    &fix.table,
                )
                .unwrap();
                let z = x.z(&fix);
                assert!(z.is_integer());
                let expected = n_h
                    .mul(&x.theta.element)
                    .unwrap()
                    .scale(&Cyc::from_rational(z));
                assert_eq!(x.element, expected, "{name}");
                if integral_sets(&fix, &sets.s, &sets.t, sets.r) {
                    assert!(
                        x.element.to_group_ring().is_integral(),
                        "{name} {sets:?} J = {j:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn declared_inertia_quotient_must_match() {
    let mut v = raw("q_i");
    v["inertiaQuotients"] = serde_json::json!([{"J": ["2"], "subgroup": ["1"]}]);
    assert!(Fixture::from_json_str(&v.to_string()).is_err());
    // J must consist of ramified places
    let fix = load("q_i");
    let s = places(&fix, "inf,2");
    assert!(theta_with_inertia_norms(&fix, &places(&fix, "3"), &s, &[], -1).is_err());
}

#[test]
fn omega_is_the_scalar_w() {
    let fix = load("q_zeta23");
    let w = omega_l(&fix);
    assert!(w.components().iter().all(|x| x == &Cyc::from_int(46)));
}

#[test]
fn hyp_alone_does_not_make_negative_values_integral() {
    // ℚ, S = {∞, 2}, T = {3}, r = −1: Hyp holds, θ = ζ(−1)(1 − 2)(1 − 9) = −2/3
    let fix = load("q");
    let (s, t) = (places(&fix, "inf,2"), places(&fix, "3"));
    assert!(check_hyp(&fix, &s, &t).unwrap().holds);
    let th = assembled(&fix, &s, &t, -1);
    assert_eq!(th.element.component(0), &c(qf(-2, 3)));
    let v = check_admissible(&fix, &s, &t, 3, -1).unwrap();
    assert_eq!(
        v.failed(),
        vec!["delta_T(r) kills the twisted roots of unity"]
    );
    // T = {5}: 1 − 25 = −24 absorbs w_2(ℚ) = 24
    let t = places(&fix, "5");
    assert!(check_admissible(&fix, &s, &t, 3, -1).unwrap().holds);
    assert_eq!(
        assembled(&fix, &s, &t, -1).element.component(0),
        &c(qf(-2, 1))
    );
}
