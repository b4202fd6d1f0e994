//! Twisted roots of unity μ_n(L) = H⁰(L, ℚ/ℤ(n)) and their ℤG-annihilators.

use num_integer::Integer;
use serde::Serialize;

use super::fixture::{ArtinMap, CyclicAction, Fixture};
use crate::arith::Cyc;
use crate::center::GroupRingElement;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::lvalues::is_prime;

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Whether Gal(ℚ̄/L) acts trivially on μ_m^{⊗n}, for L the fixed field of the kernel of `art`.
fn twist_trivial(art: &ArtinMap, m: u64, n: u32) -> bool {
    let f = art.conductor;
    let big = m.lcm(&f);
    let kernel = art.kernel();
    (1..=big)
        .filter(|a| a.gcd(&big) == 1 && kernel.contains(&(a % f)))
        .all(|a| pow_mod(a, n as u64, m) == 1 % m)
}

/// w_n(L) for L inside ℚ(ζ_f): the largest m with trivial Galois action on μ_m^{⊗n}, found prime by prime.
pub fn twisted_order(art: &ArtinMap, n: u32) -> u64 {
    let f = art.conductor;
    let bound = (n as u64 + 1).max(f);
    let mut w = 1u64;
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut pk = p;
        while twist_trivial(art, pk, n) {
            w *= p;
            pk *= p;
        }
    }
    w
}

/// μ_n(L) with g acting by a^n for any a ↦ g under the Artin map.
pub fn twisted_roots_from_artin(g: &FiniteGroup, art: &ArtinMap, n: u32) -> Result<CyclicAction> {
    if art.commutator != crate::groups::bit(0) || art.subgroup != g.full() {
        return Err(Error::invalid(
            "twisted roots of unity need an Artin map onto G",
        ));
    }
    let w = twisted_order(art, n);
    let f = art.conductor;
    let big = w.lcm(&f);
    let mut kappa: Vec<Option<u64>> = vec![None; g.order()];
    for a in (1..=big).filter(|a| a.gcd(&big) == 1) {
        let x = art.at(a as i64).expect("unit");
        let k = pow_mod(a, n as u64, w);
        match kappa[x] {
            Some(prev) if prev != k => {
                return Err(Error::Internal(format!(
                    "twisted action not well defined at {}",
                    g.label(x)
                )))
            }
            Some(_) => {}
            None => kappa[x] = Some(k),
        }
    }
    let kappa = kappa
        .into_iter()
        .map(|k| k.expect("Artin map is onto"))
        .collect();
    Ok(CyclicAction { w, kappa })
}

/// Annihilator of ℤ/w with action κ: the lattice spanned by w and g − κ(g), returned with a proof sketch.
#[derive(Clone, Debug, Serialize)]
pub struct TateAnnihilator {
    pub n: u32,
    pub w: u64,
    #[serde(skip)]
    pub generators: Vec<GroupRingElement>,
    /// Rows of an upper-triangular basis, columns indexed by group elements (identity first).
    pub basis: Vec<Vec<i64>>,
    /// |ℤG / basis| = det = w equals the size of the image ℤ/w, so the basis spans the full kernel.
    pub index: u64,
    pub provenance: String,
    pub frobenius_elements: Vec<FrobeniusElementCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusElementCheck {
    pub place: String,
    /// Image of 1 − φ N^{r−1} in ℤ/w, with N^{r−1} read as an inverse modulo w.
    pub image: u64,
    pub annihilates: bool,
}

pub fn annihilator_basis(action: &CyclicAction) -> Vec<Vec<i64>> {
    let n = action.kappa.len();
    let w = action.w as i64;
    let mut rows = Vec::with_capacity(n);
    let mut first = vec![0i64; n];
    first[0] = w;
    rows.push(first);
    for gidx in 1..n {
        let mut row = vec![0i64; n];
        row[0] = -(action.kappa[gidx] as i64 % w.max(1));
        row[gidx] = 1;
        rows.push(row);
    }
    rows
}

/// Σ c_g κ(g) mod w.
pub fn action_image(action: &CyclicAction, coeffs: &[i64]) -> u64 {
    let w = action.w as i64;
    let s: i64 = coeffs
        .iter()
        .zip(&action.kappa)
        .map(|(c, k)| (c.rem_euclid(w) * *k as i64) % w)
        .sum();
    s.rem_euclid(w) as u64
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

pub fn mu_tate_annihilators(fix: &Fixture, r: i64) -> Result<TateAnnihilator> {
    if r >= 0 {
        return Err(Error::invalid(
            "twisted roots of unity annihilators need r < 0",
        ));
    }
    let n = (1 - r) as u32;
    let twist = fix.twists.iter().find(|t| t.n == n).ok_or_else(|| {
        Error::invalid(format!(
            "fixture has no twisted roots of unity data for n = {n}"
        ))
    })?;
    let action = &twist.action;
    let g = &fix.group;
    let basis = annihilator_basis(action);
    let index: u64 = basis
        .iter()
        .enumerate()
        .map(|(i, row)| row[i].unsigned_abs())
        .product();
    if index != action.w {
        return Err(Error::Internal(
            "annihilator basis has the wrong index".into(),
        ));
    }
    for row in &basis {
        if action_image(action, row) != 0 {
            return Err(Error::Internal(
                "annihilator basis row acts nontrivially".into(),
            ));
        }
    }
    let generators = basis
        .iter()
        .map(|row| {
            GroupRingElement::from_terms(
                g,
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(x, c)| (x, Cyc::from_int(*c))),
            )
        })
        .collect();
    let mut frobenius_elements = Vec::new();
    for p in fix.places.iter().filter(|p| !p.infinite && !p.ramified) {
        let Some(ninv) = mod_inverse(p.norm % action.w.max(1), action.w) else {
            continue;
        };
        let scale = pow_mod(ninv, n as u64, action.w);
        let image = (1 + action.w - (action.kappa[p.frobenius] * scale) % action.w) % action.w;
        frobenius_elements.push(FrobeniusElementCheck {
            place: p.label.clone(),
            image,
            annihilates: image == 0,
        });
    }
    Ok(TateAnnihilator {
        n,
        w: action.w,
        generators,
        basis,
        index,
        provenance: twist.provenance.clone(),
        frobenius_elements,
    })
}
