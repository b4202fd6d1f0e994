//! Truncated generating sets of 𝔄_S: δ_T(0) over T drawn from the fixture's place pool.

use serde_json::json;

use super::fixture::Fixture;
use super::places::{check_hyp, local_factor_element, FactorKind};
use crate::center::CentralElement;
use crate::error::{Error, Result};

pub const DEFAULT_BOUND: usize = 2;

#[derive(Clone, Debug)]
pub struct Generator {
    pub t: Vec<usize>,
    pub element: CentralElement,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub generators: Vec<Generator>,
    pub bound: usize,
    pub warnings: Vec<String>,
}

impl GeneratorSet {
    pub fn tag(&self) -> String {
        format!("truncated at |T| <= {}", self.bound)
    }

    pub fn to_json(&self, fix: &Fixture) -> serde_json::Value {
        json!({
            "truncation": self.tag(),
            "warnings": self.warnings,
            "generators": self.generators.iter().map(|g| json!({
                "T": fix.place_labels(&g.t),
                "element": g.element.to_json(true),
            })).collect::<Vec<_>>(),
        })
    }
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    crate::rednorm::fitting::combinations(pool.len(), k)
        .into_iter()
        .map(|c| c.into_iter().map(|i| pool[i]).collect())
        .collect()
}

/// δ_T(r) = ∏_{𝔭∈T} nr(1 − N(𝔭)^{1−r} ε_𝔭 φ_𝔓⁻¹).
pub fn delta_t(fix: &Fixture, t: &[usize], r: i64) -> Result<CentralElement> {
    let mut acc = CentralElement::one(&fix.table);
    for &i in t {
        acc = acc.mul(&local_factor_element(
            fix,
            &fix.places[i],
            r,
            FactorKind::Delta,
        )?)?;
    }
    Ok(acc)
}

pub fn generate_a_s(fix: &Fixture, s: &[usize], bound: usize) -> Result<GeneratorSet> {
    let missing: Vec<String> = fix
        .ramified_places()
        .into_iter()
        .chain(fix.infinite_places())
        .filter(|i| !s.contains(i))
        .map(|i| fix.places[i].label.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::invalid(format!(
            "S must contain {}",
            missing.join(", ")
        )));
    }
    let pool: Vec<usize> = fix
        .t_pool
        .iter()
        .copied()
        .filter(|i| !s.contains(i))
        .collect();
    let mut warnings = Vec::new();
    if pool.is_empty() {
        warnings.push("place pool outside S is empty".to_string());
    }
    let mut generators = Vec::new();
    for k in 0..=bound.min(pool.len()) {
        for mut t in subsets(&pool, k) {
            t.sort();
            if check_hyp(fix, s, &t)?.holds {
                generators.push(Generator {
                    element: delta_t(fix, &t, 0)?,
                    t,
                });
            }
        }
    }
    if generators.is_empty() {
        warnings.push(format!("no T with |T| <= {bound} satisfies Hyp(S,T)"));
    }
    Ok(GeneratorSet {
        generators,
        bound,
        warnings,
    })
}
