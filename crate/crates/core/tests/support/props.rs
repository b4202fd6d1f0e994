//! Algebra laws over group rings, shared by the property tests and the acceptance harness.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use skv_core::arith::matrix::CycMatrix;
use skv_core::arith::Cyc;
use skv_core::center::{CentralElement, GroupRingElement};
use skv_core::groups::{CharacterTable, FiniteGroup};
use skv_core::rednorm::{GroupRingMatrix, MatrixGroupRing, Realization};

pub fn config() -> Config {
    Config {
        cases: 100,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub struct Setup {
    pub group: Arc<FiniteGroup>,
    pub table: Arc<CharacterTable>,
    pub real: Realization,
}

pub fn setup(g: FiniteGroup) -> Setup {
    let group = Arc::new(g);
    let table = Arc::new(CharacterTable::monomial(group.clone()).unwrap());
    let real = Realization::new(&table);
    Setup { group, table, real }
}

pub fn element(group: &Arc<FiniteGroup>, coeffs: &[i64]) -> GroupRingElement {
    GroupRingElement::from_terms(
        group,
        coeffs
            .iter()
            .enumerate()
            .map(|(g, &c)| (g, Cyc::from_int(c))),
    )
}

pub fn matrix(group: &Arc<FiniteGroup>, b: usize, coeffs: &[i64]) -> GroupRingMatrix {
    let n = group.order();
    let rows = (0..b)
        .map(|i| {
            (0..b)
                .map(|j| element(group, &coeffs[(i * b + j) * n..(i * b + j + 1) * n]))
                .collect()
        })
        .collect();
    GroupRingMatrix::from_rows(group, rows).unwrap()
}

/// Sparse small coefficients for a b×b matrix over a group of order at most 8.
pub fn coeffs() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (
        1usize..=2,
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], 4 * 8),
    )
}

pub fn matrix_ring_element(group: &Arc<FiniteGroup>, coeffs: &[i64]) -> MatrixGroupRing {
    let terms = (0..group.order()).map(|c| {
        let m = CycMatrix::from_rows(vec![
            vec![
                Cyc::from_int(coeffs[4 * c]),
                Cyc::from_int(coeffs[4 * c + 1]),
            ],
            vec![
                Cyc::from_int(coeffs[4 * c + 2]),
                Cyc::from_int(coeffs[4 * c + 3]),
            ],
        ])
        .unwrap();
        (c, m)
    });
    MatrixGroupRing::new(group, 2, terms).unwrap()
}

type Law = std::result::Result<(), TestCaseError>;

pub fn reduced_norm_is_multiplicative(s: &Setup, b: usize, x: &[i64], y: &[i64]) -> Law {
    let h = matrix(&s.group, b, x);
    let k = matrix(&s.group, b, y);
    let lhs = s.real.reduced_norm(&h.mul(&k).unwrap()).unwrap();
    let rhs = s
        .real
        .reduced_norm(&h)
        .unwrap()
        .mul(&s.real.reduced_norm(&k).unwrap())
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn star_adjoint_gives_the_norm(s: &Setup, b: usize, x: &[i64]) -> Law {
    let h = matrix(&s.group, b, x);
    let star = s.real.star_adjoint(&h).unwrap();
    let nr = GroupRingMatrix::scalar_diag(&star.norm.to_group_ring(), b);
    prop_assert_eq!(&star.adjoint.mul(&h).unwrap(), &nr);
    prop_assert_eq!(&h.mul(&star.adjoint).unwrap(), &nr);
    prop_assert!(star.adjoint.has_rational_coeffs());
    Ok(())
}

pub fn star_adjoint_reverses_products(s: &Setup, b: usize, x: &[i64], y: &[i64]) -> Law {
    let h = matrix(&s.group, b, x);
    let k = matrix(&s.group, b, y);
    let lhs = s.real.star_adjoint(&h.mul(&k).unwrap()).unwrap().adjoint;
    let rhs = s
        .real
        .star_adjoint(&k)
        .unwrap()
        .adjoint
        .mul(&s.real.star_adjoint(&h).unwrap().adjoint)
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn sigma_is_a_ring_isomorphism(s: &Setup, x: &[i64], y: &[i64]) -> Law {
    let m = matrix_ring_element(&s.group, x);
    let k = matrix_ring_element(&s.group, y);
    prop_assert_eq!(
        m.mul(&k).unwrap().sigma(),
        m.sigma().mul(&k.sigma()).unwrap()
    );
    prop_assert_eq!(
        m.add(&k).unwrap().sigma(),
        m.sigma().add(&k.sigma()).unwrap()
    );
    prop_assert_eq!(MatrixGroupRing::from_sigma(&m.sigma()).unwrap(), m);
    Ok(())
}

pub fn group_order_clears_reduced_norm_denominators(s: &Setup, b: usize, x: &[i64]) -> Law {
    let h = matrix(&s.group, b, x);
    let nr = s.real.reduced_norm(&h).unwrap().to_group_ring();
    prop_assert!(nr.has_rational_coeffs());
    prop_assert!(nr
        .scale(&Cyc::from_int(s.group.order() as i64))
        .is_integral());
    Ok(())
}

pub fn idempotents_are_orthogonal_and_complete(s: &Setup, x: &[i64]) -> Law {
    let n = s.group.order() as i64;
    let x = element(&s.group, &x[..s.group.order()]);
    let e: Vec<GroupRingElement> = (0..s.table.len())
        .map(|c| s.real.idempotent_element(c, n))
        .collect();
    let mut total = GroupRingElement::zero(&s.group);
    let mut split = GroupRingElement::zero(&s.group);
    for (a, ea) in e.iter().enumerate() {
        for (b, eb) in e.iter().enumerate() {
            let p = ea.mul(eb).unwrap();
            prop_assert_eq!(
                p,
                if a == b {
                    ea.clone()
                } else {
                    GroupRingElement::zero(&s.group)
                }
            );
        }
        prop_assert_eq!(ea.mul(&x).unwrap(), x.mul(ea).unwrap());
        prop_assert!(ea.is_central());
        total = total.add(ea).unwrap();
        split = split.add(&x.mul(ea).unwrap()).unwrap();
    }
    prop_assert_eq!(total, GroupRingElement::one(&s.group));
    prop_assert_eq!(split, x);
    prop_assert_eq!(s.table.sum_of_squared_degrees(), s.group.order() as u64);
    prop_assert_eq!(
        CentralElement::idempotent(&s.table, 0).to_group_ring(),
        e[0].clone()
    );
    Ok(())
}

pub fn dense() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 4 * 8)
}

/// Runs every law `config().cases` times on one group; returns the number of instances.
pub fn run_all(g: FiniteGroup) -> std::result::Result<usize, String> {
    let s = setup(g);
    let cases = config().cases as usize;
    let name = s.group.name().to_string();
    let fail = |law: &str, e: &dyn std::fmt::Display| format!("{name} {law}: {e}");
    TestRunner::new(config())
        .run(&(coeffs(), dense()), |((b, x), y)| {
            reduced_norm_is_multiplicative(&s, b, &x, &y)
        })
        .map_err(|e| fail("nr multiplicativity", &e))?;
    TestRunner::new(config())
        .run(&coeffs(), |(b, x)| star_adjoint_gives_the_norm(&s, b, &x))
        .map_err(|e| fail("star adjoint", &e))?;
    TestRunner::new(config())
        .run(&(coeffs(), dense()), |((b, x), y)| {
            star_adjoint_reverses_products(&s, b, &x, &y)
        })
        .map_err(|e| fail("star of products", &e))?;
    TestRunner::new(config())
        .run(&(dense(), dense()), |(x, y)| {
            sigma_is_a_ring_isomorphism(&s, &x, &y)
        })
        .map_err(|e| fail("sigma", &e))?;
    TestRunner::new(config())
        .run(&coeffs(), |(b, x)| {
            group_order_clears_reduced_norm_denominators(&s, b, &x)
        })
        .map_err(|e| fail("|G| nr integrality", &e))?;
    TestRunner::new(config())
        .run(&dense(), |x| {
            idempotents_are_orthogonal_and_complete(&s, &x)
        })
        .map_err(|e| fail("idempotents", &e))?;
    Ok(6 * cases)
}
