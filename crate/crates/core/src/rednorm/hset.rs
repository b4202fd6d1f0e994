//! Certified and assumed members of 𝓗(G), and three-valued 𝓘(G) membership.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gr_matrix::GroupRingMatrix;
use super::norm::Realization;
use crate::arith::Cyc;
use crate::center::{CentralElement, GroupRingElement, MembershipWitness};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HStatus {
    /// Provably in 𝓗(G).
    Certified,
    /// Survived randomized falsification only.
    Assumed,
}

impl HStatus {
    pub fn tag(self) -> &'static str {
        match self {
            HStatus::Certified => "certified",
            HStatus::Assumed => "assumed-H",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HElement {
    pub element: GroupRingElement,
    pub status: HStatus,
    pub note: String,
}

/// The scalar |G|: |G|·𝓜(G) ⊆ ℤG, so |G|·H* is integral for every integral H.
/// For abelian G the star adjoint is the classical adjugate and 1 is certified as well.
pub fn certified_h(real: &Realization) -> Vec<HElement> {
    let g = real.table().group();
    let mut out = Vec::new();
    if g.is_abelian() {
        out.push(HElement {
            element: GroupRingElement::one(g),
            status: HStatus::Certified,
            note: "1 (abelian: adjugate is integral)".into(),
        });
    }
    out.push(HElement {
        element: GroupRingElement::scalar(g, Cyc::from_int(g.order() as i64)),
        status: HStatus::Certified,
        note: "|G|".into(),
    });
    out
}

/// Random integral b×b matrix with small coefficients.
pub fn random_integral_matrix(
    real: &Realization,
    b: usize,
    rng: &mut ChaCha8Rng,
    height: i64,
) -> GroupRingMatrix {
    let g = real.table().group();
    let n = g.order();
    let mut m = GroupRingMatrix::zero(g, b, b);
    for i in 0..b {
        for j in 0..b {
            let mut terms = Vec::new();
            for x in 0..n {
                if rng.gen_bool(0.5) {
                    terms.push((x, Cyc::from_int(rng.gen_range(-height..=height))));
                }
            }
            m.set(i, j, GroupRingElement::from_terms(g, terms));
        }
    }
    m
}

/// Randomized falsification of x ∈ 𝓗(G): x·H* must be integral for integral H.
/// Returns the offending matrix on failure.
pub fn validate_candidate(
    real: &Realization,
    x: &GroupRingElement,
    trials: usize,
    seed: u64,
) -> Result<std::result::Result<HElement, GroupRingMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let b = 1 + t % 3;
        let h = random_integral_matrix(real, b, &mut rng, 2);
        let adj = real.star_adjoint(&h)?;
        if !adj.adjoint.left_scale(x)?.is_integral() {
            return Ok(Err(h));
        }
    }
    Ok(Ok(HElement {
        element: x.clone(),
        status: HStatus::Assumed,
        note: format!("survived {trials} random star adjoints (b <= 3, seed {seed})"),
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub enum IMembership {
    /// Explicit certificate that x ∈ 𝓘(G).
    Certified(String),
    /// Componentwise integral: x ∈ ζ(𝓜(G)) but no certificate found within budget.
    NecessaryPass,
    Falsified(MembershipWitness),
}

/// Bounded search: x ∈ ζ(ℤG), or x − nr(H) ∈ ζ(ℤG) for H of size ≤ 2 with coefficient height ≤ 1.
pub fn i_membership(real: &Realization, x: &CentralElement, budget: usize) -> Result<IMembership> {
    if let Some(w) = x.max_order_witness(None) {
        return Ok(IMembership::Falsified(w));
    }
    if x.to_group_ring().is_integral() {
        return Ok(IMembership::Certified("element of zeta(ZG)".into()));
    }
    let g = real.table().group();
    let n = g.order();
    let mut tried = 0usize;
    // b = 1: coefficients in {-1, 0, 1}
    let total1 = 3u128.checked_pow(n as u32).unwrap_or(u128::MAX);
    let mut code: u128 = 1;
    while code < total1 && tried < budget {
        let mut c = code;
        let terms: Vec<(usize, Cyc)> = (0..n)
            .map(|i| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                (i, Cyc::from_int(d))
            })
            .collect();
        let h = GroupRingMatrix::scalar_diag(&GroupRingElement::from_terms(g, terms), 1);
        if let Some(cert) = try_certificate(real, x, &h)? {
            return Ok(IMembership::Certified(cert));
        }
        code += 1;
        tried += 1;
    }
    // b = 2: entries in {0, ±g}
    let choices = 2 * n + 1;
    let entry = |k: usize| -> GroupRingElement {
        if k == 0 {
            GroupRingElement::zero(g)
        } else {
            let e = (k - 1) / 2;
            let s = if (k - 1).is_multiple_of(2) { 1 } else { -1 };
            GroupRingElement::from_terms(g, [(e, Cyc::from_int(s))])
        }
    };
    let total2 = choices.pow(4);
    let mut code = 0usize;
    while code < total2 && tried < budget {
        let mut c = code;
        let mut rows = vec![Vec::new(), Vec::new()];
        for k in 0..4 {
            rows[k / 2].push(entry(c % choices));
            c /= choices;
        }
        let h = GroupRingMatrix::from_rows(g, rows)?;
        if let Some(cert) = try_certificate(real, x, &h)? {
            return Ok(IMembership::Certified(cert));
        }
        code += 1;
        tried += 1;
    }
    Ok(IMembership::NecessaryPass)
}

fn try_certificate(
    real: &Realization,
    x: &CentralElement,
    h: &GroupRingMatrix,
) -> Result<Option<String>> {
    let nr = real.reduced_norm(h)?;
    if x.sub(&nr)?.to_group_ring().is_integral() {
        return Ok(Some(format!(
            "x - nr(H) in zeta(ZG) for H = {}",
            h.to_json()
        )));
    }
    Ok(None)
}
