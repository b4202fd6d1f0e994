//! Equivariant Stickelberger elements θ_S^T(r), Sinnott–Kurihara generators and inertia-norm multiples.

mod abelian;
mod monomial;
mod sku;

use serde_json::json;

pub use abelian::{dirichlet_of, partial_zeta_theta, theta_abelian};
pub use monomial::{effective_sources, monomial_value, theta_monomial, MissingSource};
pub use sku::{
    omega_l, sku_generators_truncated, sku_prime_generators, theta_with_inertia_norms,
    u_generators_truncated, u_prime_generators, InertiaNormElement, SkuGenerator, SkuSet, UChoice,
    UGenerator, USet,
};

use crate::arith::{q, Cyc};
use crate::arithdata::Fixture;
use crate::center::CentralElement;
use crate::error::{Error, Result};
use crate::groups::{members, subgroup_h_r, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Dirichlet L-values through the Artin map, cross-checked by the partial-zeta sum.
    Cyclotomic,
    /// Induction from abelian sources attached to monomial certificates.
    Monomial,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::Cyclotomic => "cyclotomic",
            Route::Monomial => "monomial",
        }
    }
}

/// Where the values of one assembled element came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceNote {
    pub subgroup: Vec<String>,
    pub kind: String,
    pub provenance: String,
    /// Values read from a fixture table rather than computed.
    pub fixture_supplied: bool,
}

impl SourceNote {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "subgroup": self.subgroup,
            "kind": self.kind,
            "provenance": self.provenance,
            "fixtureSupplied": self.fixture_supplied,
        })
    }
}

/// θ_S^T(r) with components L_S^T(r, χ̌).
#[derive(Clone, Debug)]
pub struct ThetaElement {
    pub element: CentralElement,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub r: i64,
    pub route: Route,
    /// The partial-zeta route was run and agreed.
    pub cross_checked: bool,
    pub sources: Vec<SourceNote>,
}

impl ThetaElement {
    pub fn fixture_supplied(&self) -> bool {
        self.sources.iter().any(|s| s.fixture_supplied)
    }

    pub fn to_json(&self, fix: &Fixture) -> serde_json::Value {
        json!({
            "S": fix.place_labels(&self.s),
            "T": fix.place_labels(&self.t),
            "r": self.r,
            "convention": "component at chi is L_S^T(r, contragredient of chi); the sharp of theta has components L_S^T(r, chi)",
            "route": self.route.tag(),
            "crossChecked": self.cross_checked,
            "sources": self.sources.iter().map(SourceNote::to_json).collect::<Vec<_>>(),
            "element": self.element.to_json(true),
        })
    }
}

/// Result of an assembly that may lack sources.
#[derive(Clone, Debug)]
pub enum Theta {
    Assembled(ThetaElement),
    Incomplete(Vec<MissingSource>),
}

impl Theta {
    pub fn into_element(self) -> Result<ThetaElement> {
        match self {
            Theta::Assembled(t) => Ok(t),
            Theta::Incomplete(m) => Err(Error::invalid(format!(
                "missing sources: {}",
                m.iter()
                    .map(MissingSource::describe)
                    .collect::<Vec<_>>()
                    .join("; ")
            ))),
        }
    }
}

pub(crate) fn check_sets(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> Result<()> {
    if r > 0 {
        return Err(Error::invalid(format!("r must be non-positive, got {r}")));
    }
    if let Some(&i) = s.iter().chain(t).find(|&&i| i >= fix.places.len()) {
        return Err(Error::invalid(format!("place index {i} out of range")));
    }
    if let Some(i) = fix.infinite_places().into_iter().find(|i| !s.contains(i)) {
        return Err(Error::invalid(format!(
            "S must contain the infinite place {}",
            fix.places[i].label
        )));
    }
    if let Some(&i) = t.iter().find(|&&i| fix.places[i].infinite) {
        return Err(Error::invalid(format!(
            "T contains the infinite place {}",
            fix.places[i].label
        )));
    }
    if let Some(&i) = s.iter().find(|i| t.contains(i)) {
        return Err(Error::invalid(format!(
            "S and T share {}",
            fix.places[i].label
        )));
    }
    Ok(())
}

/// θ_S^T(r): the cyclotomic route for abelian fixtures with an Artin map, induction otherwise.
pub fn theta(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> Result<Theta> {
    if fix.group.is_abelian() && fix.cyclotomic.is_some() {
        theta_abelian(fix, s, t, r).map(Theta::Assembled)
    } else {
        theta_monomial(fix, s, t, r)
    }
}

/// dim V_χ^H for a subgroup H.
pub fn fixed_dimension(fix: &Fixture, chi: usize, h: Subset) -> u64 {
    let hs = members(h);
    let mut acc = Cyc::zero(1);
    for &x in &hs {
        acc = &acc + fix.table.value(chi, x);
    }
    let d = acc
        .scale(&crate::arith::qf(1, hs.len() as i64))
        .to_rational()
        .expect("dimension is rational");
    d.to_integer().try_into().expect("small dimension")
}

/// Order of vanishing of L_S(s, χ) at s = r, read off the Γ-factors and the places in S.
pub fn vanishing_order(fix: &Fixture, s: &[usize], r: i64, chi: usize) -> u64 {
    let dim = fix.table.degree(chi);
    if r == 0 {
        let sum: u64 = s
            .iter()
            .map(|&i| fix.places[i].decomposition)
            .map(|d| fixed_dimension(fix, chi, d))
            .sum();
        return sum - fixed_dimension(fix, chi, fix.group.full());
    }
    let mut sum = 0;
    for i in fix.infinite_places() {
        let plus = fixed_dimension(fix, chi, fix.places[i].decomposition);
        sum += if r % 2 == 0 { plus } else { dim - plus };
    }
    sum
}

/// Components must vanish exactly where the predicted order is positive.
pub(crate) fn check_vanishing(fix: &Fixture, s: &[usize], r: i64, comps: &[Cyc]) -> Result<()> {
    for (chi, c) in comps.iter().enumerate() {
        // θ at χ carries L(r, χ̌), whose order equals that of χ
        let order = vanishing_order(fix, s, r, chi);
        if (order > 0) != c.is_zero() {
            return Err(Error::invalid(format!(
                "component at {} is {} but the predicted order of vanishing is {}",
                fix.table.char(chi).label,
                c,
                order
            )));
        }
    }
    Ok(())
}

/// H(r) from the complex conjugations of the fixture.
pub fn h_of_r(fix: &Fixture, r: i64) -> Result<Subset> {
    subgroup_h_r(&fix.group, &fix.complex_conjugations(), r)
}

/// ε_{H(r)}·θ = θ; returns the characters where θ is nonzero although H(r) ⊄ ker χ.
pub fn h_r_failures(fix: &Fixture, theta: &ThetaElement) -> Result<Vec<String>> {
    let h = h_of_r(fix, theta.r)?;
    let eps = CentralElement::eps_h(&fix.table, h)?;
    let prod = eps.mul(&theta.element)?;
    Ok((0..fix.table.len())
        .filter(|&chi| prod.component(chi) != theta.element.component(chi))
        .map(|chi| fix.table.char(chi).label.clone())
        .collect())
}

/// ♯-contract: θ♯ at χ equals L_S^T(r, χ) computed on its own; returns the first mismatch.
pub fn sharp_contract(fix: &Fixture, theta: &ThetaElement) -> Result<Option<(String, Cyc, Cyc)>> {
    let sharp = theta.element.sharp();
    let sources = effective_sources(fix);
    for chi in 0..fix.table.len() {
        let expected = match theta.route {
            Route::Cyclotomic => abelian::l_value(fix, chi, false, &theta.s, &theta.t, theta.r)?,
            Route::Monomial => {
                match monomial_value(fix, &sources, chi, false, &theta.s, &theta.t, theta.r)? {
                    Ok((v, _)) => v,
                    Err(m) => return Err(Error::invalid(m.describe())),
                }
            }
        };
        if sharp.component(chi) != &expected {
            return Ok(Some((
                fix.table.char(chi).label.clone(),
                sharp.component(chi).clone(),
                expected,
            )));
        }
    }
    Ok(None)
}

/// The scalar q as a central element.
pub(crate) fn scalar(fix: &Fixture, n: i64) -> CentralElement {
    CentralElement::scalar(&fix.table, Cyc::from_rational(q(n)))
}
