//! θ_S^T(r) by induction: the component at χ = ind_V^G ψ is an L-value of ψ̄ over L^V.

use std::collections::BTreeSet;

use serde_json::json;

use super::abelian::dirichlet_of;
use super::{check_sets, check_vanishing, Route, SourceNote, Theta, ThetaElement};
use crate::arith::Cyc;
use crate::arithdata::{
    linear_local_factor, translate_place, FactorKind, Fixture, Place, Source, SourceData,
};
use crate::center::CentralElement;
use crate::error::{Error, Result};
use crate::groups::{members, Subset};
use crate::lvalues::l_at_nonpositive;

/// A certificate (V, ψ) for which no source supplies the needed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingSource {
    pub character: String,
    pub subgroup: Vec<String>,
    pub reason: String,
}

impl MissingSource {
    pub fn describe(&self) -> String {
        format!(
            "{} (induced from {{{}}}): {}",
            self.character,
            self.subgroup.join(", "),
            self.reason
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"character": self.character, "subgroup": self.subgroup, "reason": self.reason})
    }
}

/// Declared sources, plus the Artin map of an abelian fixture read as a source over V = G.
pub fn effective_sources(fix: &Fixture) -> Vec<Source> {
    let mut out = fix.sources.clone();
    let full = fix.group.full();
    if let Some(art) = &fix.cyclotomic {
        if !out
            .iter()
            .any(|s| s.subgroup == full && matches!(s.data, SourceData::Cyclotomic(_)))
        {
            out.push(Source {
                subgroup: full,
                data: SourceData::Cyclotomic(art.clone()),
                provenance: format!("Artin map of the fixture modulo {}", art.conductor),
            });
        }
    }
    out
}

fn same_character(a: &[Option<u32>], am: u64, b: &[Option<u32>], bm: u64, v: Subset) -> bool {
    members(v).into_iter().all(|x| match (a[x], b[x]) {
        (Some(i), Some(j)) => (i as u64 * bm) % (am * bm) == (j as u64 * am) % (am * bm),
        _ => false,
    })
}

fn conj_exps(exps: &[Option<u32>], m: u64) -> Vec<Option<u32>> {
    exps.iter()
        .map(|k| k.map(|k| ((m - k as u64 % m) % m) as u32))
        .collect()
}

fn translate_all(fix: &Fixture, idx: &[usize], v: Subset) -> Vec<Place> {
    idx.iter()
        .flat_map(|&i| translate_place(&fix.group, &fix.places[i], v))
        .collect()
}

/// Local data of a cyclotomic source must match the fixture's places.
fn check_cyclotomic(
    fix: &Fixture,
    d: &crate::lvalues::DirichletCharacter,
    exps: &[Option<u32>],
    m: u64,
) -> Result<()> {
    let prim = d.primitive();
    let cond = prim.modulus();
    for pl in fix.places.iter().filter(|p| !p.infinite) {
        let trivial = members(pl.inertia).into_iter().all(|x| exps[x] == Some(0));
        if trivial == cond.is_multiple_of(pl.q) {
            return Err(Error::invalid(format!(
                "cyclotomic source disagrees with the inertia group at {} (character conductor {cond})",
                pl.label
            )));
        }
        if trivial {
            let local = Cyc::zeta_pow(m, exps[pl.frobenius].expect("Frobenius in G") as i64);
            if local != prim.value(pl.q as i64) {
                return Err(Error::invalid(format!(
                    "cyclotomic source disagrees with the Frobenius at {}",
                    pl.label
                )));
            }
        }
    }
    Ok(())
}

/// L_S^T(r, ψ̄) over L^V for χ with certificate (V, ψ) when `conj`, else L_S^T(r, ψ);
/// both equal the corresponding Artin L-value of χ̌ or χ. Returns the value and the index of the source used.
pub fn monomial_value(
    fix: &Fixture,
    sources: &[Source],
    chi: usize,
    conj: bool,
    s: &[usize],
    t: &[usize],
    r: i64,
) -> Result<std::result::Result<(Cyc, usize), MissingSource>> {
    let g = &fix.group;
    let cert = &fix.table.char(chi).cert;
    let v = cert.subgroup;
    let m = cert.psi.modulus;
    let target = if conj {
        conj_exps(&cert.psi.exps, m)
    } else {
        cert.psi.exps.clone()
    };
    // Euler factors of L(ψ') are 1 − c ψ'(φ) = 1 − c ψ̄'(φ⁻¹)
    let factor_psi = conj_exps(&target, m);
    let missing = |reason: String| MissingSource {
        character: fix.table.char(chi).label.clone(),
        subgroup: g.subset_labels(v),
        reason,
    };
    let candidates: Vec<usize> = (0..sources.len())
        .filter(|&i| sources[i].subgroup == v)
        .collect();
    if candidates.is_empty() {
        return Ok(Err(missing("no source for this subgroup".into())));
    }
    let s_places = translate_all(fix, s, v);
    let t_places = translate_all(fix, t, v);
    let all_labels: BTreeSet<String> = (0..fix.places.len())
        .flat_map(|i| translate_place(g, &fix.places[i], v))
        .map(|p| p.label)
        .collect();
    let s_labels: BTreeSet<&str> = s_places.iter().map(|p| p.label.as_str()).collect();
    let t_labels: BTreeSet<&str> = t_places.iter().map(|p| p.label.as_str()).collect();
    let finish = |raw: Cyc, s0: &[String], t0: &[String]| -> Cyc {
        let mut acc = raw;
        for p in s_places
            .iter()
            .filter(|p| !p.infinite && !s0.contains(&p.label))
        {
            acc = &acc * &linear_local_factor(g, p, &factor_psi, m, r, FactorKind::Euler);
        }
        for p in t_places.iter().filter(|p| !t0.contains(&p.label)) {
            acc = &acc * &linear_local_factor(g, p, &factor_psi, m, r, FactorKind::Delta);
        }
        acc.simplify()
    };
    let mut reasons = Vec::new();
    for i in candidates {
        match &sources[i].data {
            SourceData::Cyclotomic(art) => {
                let d = dirichlet_of(art, &target, m)?;
                check_cyclotomic(fix, &d, &target, m)?;
                let raw = l_at_nonpositive(r, &d)?;
                return Ok(Ok((finish(raw, &[], &[]), i)));
            }
            SourceData::Table(values) => {
                for e in values {
                    if let Some(bad) = e.s.iter().chain(&e.t).find(|l| !all_labels.contains(*l)) {
                        return Err(Error::invalid(format!(
                            "source label {bad:?} is not a place of the fixed field of {{{}}}",
                            g.subset_labels(v).join(", ")
                        )));
                    }
                }
                let hit = values.iter().find(|e| {
                    e.r == r
                        && same_character(&e.psi, e.order, &target, m, v)
                        && e.s.iter().all(|l| s_labels.contains(l.as_str()))
                        && e.t.iter().all(|l| t_labels.contains(l.as_str()))
                });
                match hit {
                    Some(e) => return Ok(Ok((finish(e.value.clone(), &e.s, &e.t), i))),
                    None => reasons.push(format!(
                        "no table entry at r = {r} with sets inside S' and T'"
                    )),
                }
            }
        }
    }
    Ok(Err(missing(reasons.join("; "))))
}

/// Assemble θ_S^T(r) from sources, one component per monomial certificate.
pub fn theta_monomial(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> Result<Theta> {
    check_sets(fix, s, t, r)?;
    let sources = effective_sources(fix);
    let mut comps = Vec::with_capacity(fix.table.len());
    let mut missing = Vec::new();
    let mut used = BTreeSet::new();
    for chi in 0..fix.table.len() {
        match monomial_value(fix, &sources, chi, true, s, t, r)? {
            Ok((v, i)) => {
                comps.push(v);
                used.insert(i);
            }
            Err(m) => missing.push(m),
        }
    }
    if !missing.is_empty() {
        return Ok(Theta::Incomplete(missing));
    }
    check_vanishing(fix, s, r, &comps)?;
    let element = CentralElement::from_components(&fix.table, comps)?;
    if let Some((k, chi)) = element.galois_violation() {
        return Err(Error::invalid(format!(
            "assembled components are not Galois-equivariant under {k} at {}",
            fix.table.char(chi).label
        )));
    }
    let notes = used
        .into_iter()
        .map(|i| {
            let src = &sources[i];
            SourceNote {
                subgroup: fix.group.subset_labels(src.subgroup),
                kind: match src.data {
                    SourceData::Cyclotomic(_) => "cyclotomic".into(),
                    SourceData::Table(_) => "table".into(),
                },
                provenance: src.provenance.clone(),
                fixture_supplied: matches!(src.data, SourceData::Table(_)),
            }
        })
        .collect();
    Ok(Theta::Assembled(ThetaElement {
        element,
        s: s.to_vec(),
        t: t.to_vec(),
        r,
        route: Route::Monomial,
        cross_checked: false,
        sources: notes,
    }))
}
