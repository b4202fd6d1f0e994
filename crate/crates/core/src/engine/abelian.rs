//! θ_S^T(r) for abelian extensions inside ℚ(ζ_f).

use std::collections::BTreeSet;

use num_integer::Integer;

use super::{check_sets, check_vanishing, Route, SourceNote, ThetaElement};
use crate::arith::{Cyc, Rational};
use crate::arithdata::{factor_scalar, ArtinMap, FactorKind, Fixture};
use crate::center::{CentralElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::groups::{bit, members};
use crate::lvalues::{l_st, partial_zeta, prime_factors, DirichletCharacter};

/// χ_D(a) = ψ(σ_a) for ψ given by exponents of ζ_modulus on the image of the Artin map.
pub fn dirichlet_of(
    art: &ArtinMap,
    exps: &[Option<u32>],
    modulus: u64,
) -> Result<DirichletCharacter> {
    let f = art.conductor;
    let table = (0..f)
        .map(|a| {
            if a.gcd(&f) != 1 {
                return Ok(None);
            }
            let x = art.image[a as usize].expect("Artin map is total on units");
            exps[x]
                .map(Some)
                .ok_or_else(|| Error::invalid("character undefined on the Artin image"))
        })
        .collect::<Result<Vec<_>>>()?;
    DirichletCharacter::from_exponent_table(f, modulus, table)
}

fn artin(fix: &Fixture) -> Result<&ArtinMap> {
    let art = fix
        .cyclotomic
        .as_ref()
        .ok_or_else(|| Error::invalid("fixture has no cyclotomic embedding"))?;
    if !fix.group.is_abelian() || art.subgroup != fix.group.full() || art.commutator != bit(0) {
        return Err(Error::invalid(
            "the Artin map does not identify G with a quotient of (Z/f)^x",
        ));
    }
    Ok(art)
}

fn primes_of(fix: &Fixture, idx: &[usize]) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for &i in idx.iter().filter(|&&i| !fix.places[i].infinite) {
        if !out.insert(fix.places[i].q) {
            return Err(Error::invalid(format!(
                "two places above {} in one set",
                fix.places[i].q
            )));
        }
    }
    Ok(out)
}

/// L_S^T(r, χ̌) when `conj`, else L_S^T(r, χ), via the Dirichlet character χ∘Art.
pub(super) fn l_value(
    fix: &Fixture,
    chi: usize,
    conj: bool,
    s: &[usize],
    t: &[usize],
    r: i64,
) -> Result<Cyc> {
    let art = artin(fix)?;
    let psi = &fix.table.char(chi).cert.psi;
    let d = dirichlet_of(art, &psi.exps, psi.modulus)?;
    let d = if conj { d.conj() } else { d };
    l_st(r, &d, &primes_of(fix, s)?, &primes_of(fix, t)?)
}

/// Σ_{a ∈ (ℤ/m)^×} ζ_m(r, a) σ_a⁻¹ · ∏_{𝔭∈T} (1 − N𝔭^{1−r} ε_𝔭 φ⁻¹) in ℚG, with m = lcm(f, ∏ S).
/// `None` when some prime of f is missing from S, as the sum then truncates the wrong Euler factors.
pub fn partial_zeta_theta(
    fix: &Fixture,
    s: &[usize],
    t: &[usize],
    r: i64,
) -> Result<Option<GroupRingElement>> {
    let art = artin(fix)?;
    let g = &fix.group;
    let sp = primes_of(fix, s)?;
    let f = art.conductor;
    if prime_factors(f).iter().any(|(p, _)| !sp.contains(p)) {
        return Ok(None);
    }
    let m = sp.iter().fold(f, |acc, p| acc.lcm(p));
    let mut coeffs = vec![Rational::from_integer(0.into()); g.order()];
    for a in (1..=m).filter(|a| a.gcd(&m) == 1) {
        let x = g.inv(art.at(a as i64).expect("unit"));
        coeffs[x] += partial_zeta(r, m, a)?;
    }
    let mut acc = GroupRingElement::from_rational_coeffs(g, &coeffs);
    for &i in t {
        let pl = &fix.places[i];
        let c = factor_scalar(pl.norm, r, FactorKind::Delta);
        let inertia = members(pl.inertia);
        let w = c / Rational::from_integer((inertia.len() as i64).into());
        let phi_inv = g.inv(pl.frobenius);
        let mut terms = vec![(0usize, Cyc::from_int(1))];
        terms.extend(
            inertia
                .iter()
                .map(|&x| (g.mul(phi_inv, x), Cyc::from_rational(-w.clone()))),
        );
        acc = acc.mul(&GroupRingElement::from_terms(g, terms))?;
    }
    Ok(Some(acc))
}

/// Components L_S^T(r, χ̌) from Dirichlet L-values, compared with the partial-zeta sum whenever S ⊇ primes of f.
pub fn theta_abelian(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> Result<ThetaElement> {
    check_sets(fix, s, t, r)?;
    let art = artin(fix)?;
    let comps = (0..fix.table.len())
        .map(|chi| l_value(fix, chi, true, s, t, r))
        .collect::<Result<Vec<_>>>()?;
    check_vanishing(fix, s, r, &comps)?;
    let element = CentralElement::from_components(&fix.table, comps)?;
    if let Some((k, chi)) = element.galois_violation() {
        return Err(Error::Internal(format!(
            "components not Galois-equivariant under {k} at {}",
            fix.table.char(chi).label
        )));
    }
    if !element.to_group_ring().has_rational_coeffs() {
        return Err(Error::Internal(
            "group-ring coefficients are not rational".into(),
        ));
    }
    let mut cross_checked = false;
    if let Some(x) = partial_zeta_theta(fix, s, t, r)? {
        let other = CentralElement::from_group_ring(&x, &fix.table)?;
        if let Some(chi) =
            (0..fix.table.len()).find(|&c| other.component(c) != element.component(c))
        {
            return Err(Error::Internal(format!(
                "partial-zeta route gives {} at {}, the L-value route {}",
                other.component(chi),
                fix.table.char(chi).label,
                element.component(chi)
            )));
        }
        cross_checked = true;
    }
    Ok(ThetaElement {
        element,
        s: s.to_vec(),
        t: t.to_vec(),
        r,
        route: Route::Cyclotomic,
        cross_checked,
        sources: vec![SourceNote {
            subgroup: fix.group.subset_labels(fix.group.full()),
            kind: "cyclotomic".into(),
            provenance: format!(
                "Dirichlet L-values through the Artin map modulo {}",
                art.conductor
            ),
            fixture_supplied: false,
        }],
    })
}
