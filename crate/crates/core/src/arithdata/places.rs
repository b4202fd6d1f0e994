//! Hyp(S,T), admissibility, local Euler and δ factors, and places of intermediate fields.

use std::sync::Arc;

use serde::Serialize;

use super::fixture::{Fixture, Place};
use crate::arith::matrix::CycMatrix;
use crate::arith::{Cyc, Rational};
use crate::center::GroupRingElement;
use crate::error::{Error, Result};
use crate::groups::{bit, members, FiniteGroup, Subset};
use crate::lvalues::prime_factors;
use crate::rednorm::MonomialRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum FactorKind {
    /// det(1 − N^{1−r} φ⁻¹ | V^I).
    Delta,
    /// det(1 − N^{−r} φ⁻¹ | V^I).
    Euler,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetVerdict {
    pub holds: bool,
    pub conditions: Vec<Condition>,
}

impl SetVerdict {
    fn new(conditions: Vec<Condition>) -> Self {
        SetVerdict {
            holds: conditions.iter().all(|c| c.holds),
            conditions,
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }
}

fn cond(name: &str, holds: bool, detail: String) -> Condition {
    Condition {
        name: name.into(),
        holds,
        detail,
    }
}

fn labels(fix: &Fixture, idx: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<&str> = idx
        .into_iter()
        .map(|i| fix.places[i].label.as_str())
        .collect();
    format!("{{{}}}", v.join(", "))
}

/// E_S^T is torsion-free exactly when no prime ℓ | w has every place of T lying above ℓ.
///
/// A root of unity ζ ≠ 1 with ζ ≡ 1 modulo a prime of residue characteristic q has q-power order,
/// and ζ_ℓ ≡ 1 modulo every prime above ℓ.
pub fn torsion_free(fix: &Fixture, t: &[usize]) -> (bool, String) {
    below_all_of_t(fix, t, fix.mu.w, "w")
}

fn below_all_of_t(fix: &Fixture, t: &[usize], w: u64, name: &str) -> (bool, String) {
    if w == 1 {
        return (true, format!("{name} = 1"));
    }
    for (l, _) in prime_factors(w) {
        if t.iter().all(|&i| fix.places[i].q == l) {
            let why = if t.is_empty() {
                format!("T is empty and {name} = {w}")
            } else {
                format!("every place of T lies above {l}, which divides {name} = {w}")
            };
            return (false, why);
        }
    }
    (
        true,
        format!("no prime dividing {name} = {w} lies below all of T"),
    )
}

/// δ_T(r) = ∏ (1 − N𝔭^{1−r} φ𝔭⁻¹) annihilates μ_{1−r}(L) exactly when no prime ℓ | w_{1−r}
/// has every place of T above it (T unramified).
pub fn twisted_torsion_killed(fix: &Fixture, t: &[usize], r: i64) -> (bool, String) {
    let n = (1 - r) as u32;
    match fix.twists.iter().find(|d| d.n == n) {
        Some(d) => below_all_of_t(fix, t, d.action.w, &format!("w_{n}")),
        None => (false, format!("the fixture does not describe mu_{n}(L)")),
    }
}

fn check_labels(fix: &Fixture, s: &[usize], t: &[usize]) -> Result<()> {
    if let Some(&i) = s.iter().chain(t).find(|&&i| i >= fix.places.len()) {
        return Err(Error::invalid(format!("place index {i} out of range")));
    }
    if let Some(&i) = t.iter().find(|&&i| fix.places[i].infinite) {
        return Err(Error::invalid(format!(
            "T contains the infinite place {}",
            fix.places[i].label
        )));
    }
    Ok(())
}

pub fn check_hyp(fix: &Fixture, s: &[usize], t: &[usize]) -> Result<SetVerdict> {
    check_labels(fix, s, t)?;
    let missing: Vec<usize> = fix
        .ramified_places()
        .into_iter()
        .chain(fix.infinite_places())
        .filter(|i| !s.contains(i))
        .collect();
    let overlap: Vec<usize> = s.iter().copied().filter(|i| t.contains(i)).collect();
    let (tf, why) = torsion_free(fix, t);
    Ok(SetVerdict::new(vec![
        cond(
            "S contains ramified and infinite places",
            missing.is_empty(),
            format!("missing {}", labels(fix, missing)),
        ),
        cond(
            "S and T disjoint",
            overlap.is_empty(),
            format!("common {}", labels(fix, overlap)),
        ),
        cond("E_S^T torsion-free", tf, why),
    ]))
}

pub fn check_admissible(
    fix: &Fixture,
    s: &[usize],
    t: &[usize],
    p: u64,
    r: i64,
) -> Result<SetVerdict> {
    if r > 0 {
        return Err(Error::invalid("r must be non-positive"));
    }
    if r < 0 {
        let mut v = check_hyp(fix, s, t)?;
        let (ok, why) = twisted_torsion_killed(fix, t, r);
        v.conditions
            .push(cond("delta_T(r) kills the twisted roots of unity", ok, why));
        v.holds = v.conditions.iter().all(|c| c.holds);
        return Ok(v);
    }
    check_labels(fix, s, t)?;
    let inf_missing: Vec<usize> = fix
        .infinite_places()
        .into_iter()
        .filter(|i| !s.contains(i))
        .collect();
    let ram_missing: Vec<usize> = fix
        .ramified_places()
        .into_iter()
        .filter(|&i| fix.places[i].q != p && !s.contains(&i) && !t.contains(&i))
        .collect();
    let wild_missing: Vec<usize> = (0..fix.places.len())
        .filter(|&i| {
            let pl = &fix.places[i];
            !pl.infinite && pl.q == p && pl.wild && !s.contains(&i)
        })
        .collect();
    let overlap: Vec<usize> = s.iter().copied().filter(|i| t.contains(i)).collect();
    let t_nr: Vec<usize> = t
        .iter()
        .copied()
        .filter(|&i| !fix.places[i].ramified)
        .collect();
    let (tf, why) = torsion_free(fix, &t_nr);
    Ok(SetVerdict::new(vec![
        cond(
            "S contains infinite places",
            inf_missing.is_empty(),
            format!("missing {}", labels(fix, inf_missing)),
        ),
        cond(
            "S and T cover non-p-adic ramified places",
            ram_missing.is_empty(),
            format!("missing {}", labels(fix, ram_missing)),
        ),
        cond(
            "S contains wild p-adic places",
            wild_missing.is_empty(),
            format!("missing {}", labels(fix, wild_missing)),
        ),
        cond(
            "S and T disjoint",
            overlap.is_empty(),
            format!("common {}", labels(fix, overlap)),
        ),
        cond(
            "E_S^{T_nr} torsion-free",
            tf,
            format!("T_nr = {}: {why}", labels(fix, t_nr)),
        ),
    ]))
}

fn rational_pow(n: u64, e: i64) -> Rational {
    let base = Rational::from_integer(n.into());
    if e >= 0 {
        num_traits::Pow::pow(base, e as u32)
    } else {
        num_traits::Pow::pow(base.recip(), (-e) as u32)
    }
}

/// The scalar c in 1 − c φ⁻¹.
pub fn factor_scalar(norm: u64, r: i64, kind: FactorKind) -> Rational {
    match kind {
        FactorKind::Delta => rational_pow(norm, 1 - r),
        FactorKind::Euler => rational_pow(norm, -r),
    }
}

/// det(1 − c ρ_χ(φ⁻¹) | V_χ^I), via the projector (1/|I|) Σ ρ(i).
pub fn local_factor(
    fix: &Fixture,
    place: &Place,
    chi: usize,
    r: i64,
    kind: FactorKind,
) -> Result<Cyc> {
    local_factor_rep(&fix.group, fix.real.rep(chi), place, r, kind)
}

/// The same determinant for any monomial representation of G.
pub fn local_factor_rep(
    g: &Arc<FiniteGroup>,
    rep: &MonomialRep,
    place: &Place,
    r: i64,
    kind: FactorKind,
) -> Result<Cyc> {
    if place.infinite {
        return Err(Error::invalid(format!(
            "no local factor at the infinite place {}",
            place.label
        )));
    }
    let inertia = members(place.inertia);
    let phi_inv = g.inv(place.frobenius);
    let w = Rational::new(1.into(), (inertia.len() as i64).into());
    let x = GroupRingElement::from_terms(
        g,
        inertia
            .iter()
            .map(|&i| (g.mul(phi_inv, i), Cyc::from_rational(w.clone()))),
    );
    let m = rep.apply(&x);
    let c = factor_scalar(place.norm, r, kind);
    let scaled = m.scale(&Cyc::from_rational(-c))?;
    CycMatrix::identity(m.rows(), 1)
        .add(&scaled)?
        .det()
        .map(|v| v.simplify())
}

/// Central element with components local_factor at every character.
pub fn local_factor_element(
    fix: &Fixture,
    place: &Place,
    r: i64,
    kind: FactorKind,
) -> Result<crate::center::CentralElement> {
    let comps = (0..fix.table.len())
        .map(|chi| local_factor(fix, place, chi, r, kind))
        .collect::<Result<Vec<_>>>()?;
    crate::center::CentralElement::from_components(&fix.table, comps)
}

/// The places of L^V below the G-conjugates of `place`, one per double coset V t D,
/// with decomposition and inertia groups inside V and Frobenius of norm N^f.
pub fn translate_place(g: &FiniteGroup, place: &Place, v: Subset) -> Vec<Place> {
    let d = place.decomposition;
    let mut covered: Subset = 0;
    let mut out = Vec::new();
    for t in 0..g.order() {
        if covered & bit(t) != 0 {
            continue;
        }
        for a in members(v) {
            for b in members(d) {
                covered |= bit(g.mul(g.mul(a, t), b));
            }
        }
        let dt_full = g.conjugate_subset(t, d);
        let it_full = g.conjugate_subset(t, place.inertia);
        let dt = v & dt_full;
        let it = v & it_full;
        let phi = g.conj(t, place.frobenius);
        // smallest f with φ^f ∈ D_t · tIt⁻¹, and a representative u ∈ D_t of that coset
        let (mut f, mut x) = (1u32, phi);
        let frob = loop {
            let hit = members(dt)
                .into_iter()
                .find(|&u| it_full & bit(g.mul(g.inv(u), x)) != 0);
            if let Some(u) = hit {
                break u;
            }
            x = g.mul(x, phi);
            f += 1;
        };
        let infinite = place.infinite;
        out.push(Place {
            label: format!("{}#{}", place.label, out.len()),
            infinite,
            q: place.q,
            norm: if infinite { 1 } else { place.norm.pow(f) },
            decomposition: dt,
            inertia: it,
            frobenius: frob,
            ramified: it != bit(0),
            wild: !infinite && place.q > 0 && (it.count_ones() as u64).is_multiple_of(place.q),
            complex: infinite && dt != bit(0),
        });
    }
    out
}

/// 1 − c ψ(φ⁻¹) if ψ is trivial on inertia, else 1; ψ given by exponents of ζ_order.
pub fn linear_local_factor(
    g: &FiniteGroup,
    place: &Place,
    psi: &[Option<u32>],
    order: u64,
    r: i64,
    kind: FactorKind,
) -> Cyc {
    let trivial_on_inertia = members(place.inertia)
        .into_iter()
        .all(|i| psi[i] == Some(0));
    if !trivial_on_inertia {
        return Cyc::from_int(1);
    }
    let k = psi[g.inv(place.frobenius)].expect("Frobenius in the subgroup");
    let c = factor_scalar(place.norm, r, kind);
    (Cyc::from_int(1) - Cyc::zeta_pow(order, k as i64).scale(&c)).simplify()
}
