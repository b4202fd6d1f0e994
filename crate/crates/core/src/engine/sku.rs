//! U′, truncated U, SKu′(L/K,S) generators and ∏_{𝔭∈J} nr(N_I)·θ_{S_J}^T(r).

use std::collections::BTreeSet;

use serde_json::json;

use super::{scalar, theta, MissingSource, SourceNote, Theta, ThetaElement};
use crate::arith::{Cyc, Rational};
use crate::arithdata::{generate_a_s, Fixture, Place};
use crate::center::{CentralElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::groups::{members, size, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UChoice {
    /// nr(N_I).
    InertiaNorm,
    /// nr(1 − ε φ⁻¹).
    Frobenius,
}

impl UChoice {
    pub fn tag(self) -> &'static str {
        match self {
            UChoice::InertiaNorm => "nr(N_I)",
            UChoice::Frobenius => "nr(1 - eps phi^-1)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct UGenerator {
    /// One entry per finite place of S, as (place, description).
    pub choices: Vec<(usize, String)>,
    pub element: CentralElement,
}

#[derive(Clone, Debug)]
pub struct USet {
    pub generators: Vec<UGenerator>,
    /// Present when the set is a truncation of a larger generating set.
    pub truncation: Option<String>,
}

fn inertia_norm(fix: &Fixture, pl: &Place) -> GroupRingElement {
    GroupRingElement::norm_element(&fix.group, pl.inertia)
}

/// 1 − ε_𝔭 φ⁻¹ with ε_𝔭 = |I|⁻¹ N_I.
fn frobenius_element(fix: &Fixture, pl: &Place) -> GroupRingElement {
    let g = &fix.group;
    let inertia = members(pl.inertia);
    let w = Rational::new((-1).into(), (inertia.len() as i64).into());
    let phi_inv = g.inv(pl.frobenius);
    let mut terms = vec![(0usize, Cyc::from_int(1))];
    terms.extend(
        inertia
            .iter()
            .map(|&x| (g.mul(phi_inv, x), Cyc::from_rational(w.clone()))),
    );
    GroupRingElement::from_terms(g, terms)
}

fn finite_places_checked(fix: &Fixture, s: &[usize]) -> Result<Vec<usize>> {
    if let Some(i) = fix.ramified_places().into_iter().find(|i| !s.contains(i)) {
        return Err(Error::invalid(format!(
            "S must contain the ramified place {}",
            fix.places[i].label
        )));
    }
    Ok(s.iter()
        .copied()
        .filter(|&i| !fix.places[i].infinite)
        .collect())
}

/// Every product over the finite places of S, one factor chosen per place.
fn products(
    fix: &Fixture,
    per_place: Vec<(usize, Vec<(String, CentralElement)>)>,
) -> Result<Vec<UGenerator>> {
    let mut acc = vec![UGenerator {
        choices: Vec::new(),
        element: CentralElement::one(&fix.table),
    }];
    for (place, options) in per_place {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for u in &acc {
            for (tag, x) in &options {
                let mut choices = u.choices.clone();
                choices.push((place, tag.clone()));
                next.push(UGenerator {
                    choices,
                    element: u.element.mul(x)?,
                });
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// U′ = ∏_𝔭 ⟨nr(N_I), nr(1 − ε φ⁻¹)⟩: the 2^{|S_f|} products of the two reduced norms per place.
pub fn u_prime_generators(fix: &Fixture, s: &[usize]) -> Result<USet> {
    let finite = finite_places_checked(fix, s)?;
    let mut per_place = Vec::new();
    for i in finite {
        let pl = &fix.places[i];
        let n_i = fix.real.reduced_norm_element(&inertia_norm(fix, pl))?;
        let fr = fix.real.reduced_norm_element(&frobenius_element(fix, pl))?;
        per_place.push((
            i,
            vec![
                (UChoice::InertiaNorm.tag().to_string(), n_i),
                (UChoice::Frobenius.tag().to_string(), fr),
            ],
        ));
    }
    Ok(USet {
        generators: products(fix, per_place)?,
        truncation: None,
    })
}

/// U from u_𝔭 = a N_I + b (1 − ε φ⁻¹) with a, b ∈ {0, ±x : x ∈ G_𝔓}, distinct norms per place,
/// and at most `cap` products.
pub fn u_generators_truncated(fix: &Fixture, s: &[usize], cap: usize) -> Result<USet> {
    let finite = finite_places_checked(fix, s)?;
    let g = &fix.group;
    let mut per_place = Vec::new();
    for i in finite {
        let pl = &fix.places[i];
        let mut coeffs: Vec<(String, GroupRingElement)> =
            vec![("0".into(), GroupRingElement::zero(g))];
        for x in members(pl.decomposition) {
            for sign in [1i64, -1] {
                let tag = format!("{}{}", if sign < 0 { "-" } else { "" }, g.label(x));
                coeffs.push((
                    tag,
                    GroupRingElement::from_terms(g, [(x, Cyc::from_int(sign))]),
                ));
            }
        }
        let (n_i, fr) = (inertia_norm(fix, pl), frobenius_element(fix, pl));
        let mut seen = BTreeSet::new();
        let mut options = Vec::new();
        for (ta, a) in &coeffs {
            for (tb, b) in &coeffs {
                let u = a.mul(&n_i)?.add(&b.mul(&fr)?)?;
                let nr = fix.real.reduced_norm_element(&u)?;
                let key: Vec<String> = nr.components().iter().map(Cyc::key).collect();
                if seen.insert(key) {
                    options.push((format!("({ta}) N_I + ({tb}) (1 - eps phi^-1)"), nr));
                }
            }
        }
        per_place.push((i, options));
    }
    let total: usize = per_place.iter().map(|(_, o)| o.len()).product();
    let mut gens = products(fix, per_place)?;
    let mut note = "u_p = a N_I + b (1 - eps phi^-1) with a, b in {0} or plus-minus elements of the decomposition group".to_string();
    if gens.len() > cap {
        gens.truncate(cap);
        note.push_str(&format!("; first {cap} of {total} products"));
    }
    Ok(USet {
        generators: gens,
        truncation: Some(note),
    })
}

#[derive(Clone, Debug)]
pub struct SkuGenerator {
    pub t: Vec<usize>,
    pub u: Vec<(usize, String)>,
    pub element: CentralElement,
}

/// Generators δ_T(0)·u·L(0)♯ of SKu′(L/K,S) (or SKu with a truncated U).
#[derive(Clone, Debug)]
pub struct SkuSet {
    pub generators: Vec<SkuGenerator>,
    pub truncation: Vec<String>,
    pub warnings: Vec<String>,
    pub missing: Vec<MissingSource>,
    pub sources: Vec<SourceNote>,
    pub l0_sharp: Option<CentralElement>,
}

impl SkuSet {
    pub fn to_json(&self, fix: &Fixture) -> serde_json::Value {
        json!({
            "truncation": self.truncation,
            "warnings": self.warnings,
            "missingSources": self.missing.iter().map(MissingSource::to_json).collect::<Vec<_>>(),
            "sources": self.sources.iter().map(SourceNote::to_json).collect::<Vec<_>>(),
            "L0sharp": self.l0_sharp.as_ref().map(|x| x.to_json(false)),
            "generators": self.generators.iter().map(|g| json!({
                "T": fix.place_labels(&g.t),
                "u": g.u.iter().map(|(p, c)| json!({"place": fix.places[*p].label, "choice": c})).collect::<Vec<_>>(),
                "element": g.element.to_json(true),
            })).collect::<Vec<_>>(),
        })
    }
}

fn sku_from(fix: &Fixture, s: &[usize], bound: usize, u: USet) -> Result<SkuSet> {
    let a = generate_a_s(fix, s, bound)?;
    let mut truncation = vec![a.tag()];
    truncation.extend(u.truncation.clone());
    let l0 = match theta(fix, &fix.infinite_places(), &[], 0)? {
        Theta::Assembled(x) => x,
        Theta::Incomplete(missing) => {
            return Ok(SkuSet {
                generators: Vec::new(),
                truncation,
                warnings: a.warnings,
                missing,
                sources: Vec::new(),
                l0_sharp: None,
            })
        }
    };
    let mut generators = Vec::new();
    for d in &a.generators {
        let dl = d.element.mul(&l0.element)?;
        for x in &u.generators {
            generators.push(SkuGenerator {
                t: d.t.clone(),
                u: x.choices.clone(),
                element: dl.mul(&x.element)?,
            });
        }
    }
    Ok(SkuSet {
        generators,
        truncation,
        warnings: a.warnings,
        missing: Vec::new(),
        sources: l0.sources,
        l0_sharp: Some(l0.element),
    })
}

/// All products δ_T(0)·u′·L(0)♯ with T from the truncated 𝔄_S and u′ from U′.
pub fn sku_prime_generators(fix: &Fixture, s: &[usize], bound: usize) -> Result<SkuSet> {
    let u = u_prime_generators(fix, s)?;
    sku_from(fix, s, bound, u)
}

/// SKu(L/K,S) generators with the truncated U.
pub fn sku_generators_truncated(
    fix: &Fixture,
    s: &[usize],
    bound: usize,
    cap: usize,
) -> Result<SkuSet> {
    let u = u_generators_truncated(fix, s, cap)?;
    sku_from(fix, s, bound, u)
}

/// ∏_{𝔭∈J} nr(N_I)·θ_{S_J}^T(r) with S_J = S∖J, together with its ingredients.
#[derive(Clone, Debug)]
pub struct InertiaNormElement {
    pub j: Vec<usize>,
    pub s_j: Vec<usize>,
    pub h_j: Subset,
    pub norms: CentralElement,
    pub theta: ThetaElement,
    pub element: CentralElement,
}

impl InertiaNormElement {
    /// z = |H_J|⁻¹ ∏ |I|, an integer for abelian G.
    pub fn z(&self, fix: &Fixture) -> Rational {
        let prod: i64 = self
            .j
            .iter()
            .map(|&i| size(fix.places[i].inertia) as i64)
            .product();
        Rational::new(prod.into(), (size(self.h_j) as i64).into())
    }
}

pub fn theta_with_inertia_norms(
    fix: &Fixture,
    j: &[usize],
    s: &[usize],
    t: &[usize],
    r: i64,
) -> Result<std::result::Result<InertiaNormElement, Vec<MissingSource>>> {
    let mut j = j.to_vec();
    j.sort();
    j.dedup();
    if let Some(&i) = j
        .iter()
        .find(|&&i| fix.places[i].infinite || !fix.places[i].ramified)
    {
        return Err(Error::invalid(format!(
            "J must consist of ramified places, not {}",
            fix.places[i].label
        )));
    }
    let h_j = fix.inertia_closure(&j);
    for (decl_j, decl_h) in &fix.inertia_quotients {
        let mut d = decl_j.clone();
        d.sort();
        if d == j && *decl_h != h_j {
            return Err(Error::invalid(format!(
                "declared H_J = {{{}}} differs from the group generated by inertia, {{{}}}",
                fix.group.subset_labels(*decl_h).join(", "),
                fix.group.subset_labels(h_j).join(", ")
            )));
        }
    }
    let s_j: Vec<usize> = s.iter().copied().filter(|i| !j.contains(i)).collect();
    let th = match theta(fix, &s_j, t, r)? {
        Theta::Assembled(x) => x,
        Theta::Incomplete(m) => return Ok(Err(m)),
    };
    let mut norms = CentralElement::one(&fix.table);
    for &i in &j {
        norms = norms.mul(
            &fix.real
                .reduced_norm_element(&inertia_norm(fix, &fix.places[i]))?,
        )?;
    }
    for chi in 0..fix.table.len() {
        if fix.table.kernel(chi) & h_j != h_j && !norms.component(chi).is_zero() {
            return Err(Error::Internal(format!(
                "nr(N_I) product is nonzero at {} although H_J is not in its kernel",
                fix.table.char(chi).label
            )));
        }
    }
    let element = norms.mul(&th.element)?;
    let eps = CentralElement::eps_h(&fix.table, h_j)?;
    if norms.mul(&eps)?.mul(&th.element)? != element {
        return Err(Error::Internal(
            "inertia norms do not absorb the idempotent of H_J".into(),
        ));
    }
    Ok(Ok(InertiaNormElement {
        j,
        s_j,
        h_j,
        norms,
        theta: th,
        element,
    }))
}

/// ω_L = nr(|μ_L|), the scalar |μ_L|.
pub fn omega_l(fix: &Fixture) -> CentralElement {
    scalar(fix, fix.mu.w as i64)
}
