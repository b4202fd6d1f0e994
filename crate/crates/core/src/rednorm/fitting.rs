//! Fitting invariants of finite presentations and finite G-modules.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::gr_matrix::GroupRingMatrix;
use super::norm::Realization;
use crate::center::{CentralElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Λ^a → Λ^b ↠ M with h stored as an a×b matrix; maximal minors select b rows.
#[derive(Clone, Debug)]
pub struct PresentationModule {
    pub h: GroupRingMatrix,
}

impl PresentationModule {
    pub fn new(h: GroupRingMatrix) -> Result<Self> {
        if !h.is_integral() {
            return Err(Error::invalid(
                "presentation matrix must have entries in ZG",
            ));
        }
        Ok(PresentationModule { h })
    }

    pub fn is_quadratic(&self) -> bool {
        self.h.is_square()
    }
}

#[derive(Clone, Debug)]
pub struct FittingInvariant {
    pub generators: Vec<CentralElement>,
    /// Row sets (lexicographic) producing each generator; empty for the zero class.
    pub row_sets: Vec<Vec<usize>>,
    pub equivalence_tag: &'static str,
}

pub const NR_EQUIVALENCE_TAG: &str =
    "class under nr(Lambda)-equivalence; generators are one representative";

/// Reduced norms of all b×b row selections; the zero class when a < b.
pub fn fitting_of_presentation(
    p: &PresentationModule,
    real: &Realization,
) -> Result<FittingInvariant> {
    let (a, b) = (p.h.rows(), p.h.cols());
    if a < b {
        return Ok(FittingInvariant {
            generators: vec![CentralElement::zero(real.table())],
            row_sets: Vec::new(),
            equivalence_tag: NR_EQUIVALENCE_TAG,
        });
    }
    let mut generators = Vec::new();
    let mut row_sets = Vec::new();
    for rows in combinations(a, b) {
        generators.push(real.reduced_norm(&p.h.select_rows(&rows))?);
        row_sets.push(rows);
    }
    Ok(FittingInvariant {
        generators,
        row_sets,
        equivalence_tag: NR_EQUIVALENCE_TAG,
    })
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A finite abelian group ⊕ ℤ/n_i with a G-action by integer matrices (acting on column vectors).
#[derive(Clone, Debug)]
pub struct FiniteGModule {
    group: Arc<FiniteGroup>,
    factors: Vec<u64>,
    action: Vec<Vec<Vec<i64>>>,
}

impl FiniteGModule {
    /// Matrices may be given for generators only; the rest follows by closure and is checked.
    pub fn new(
        group: &Arc<FiniteGroup>,
        factors: Vec<u64>,
        action: BTreeMap<usize, Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let d = factors.len();
        if factors.contains(&0) {
            return Err(Error::invalid("module factors must be positive"));
        }
        let reduce = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            m.iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .map(|x| x.rem_euclid(factors[i] as i64))
                        .collect()
                })
                .collect()
        };
        for (g, m) in &action {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::invalid(format!(
                    "action matrix of {} has the wrong size",
                    group.label(*g)
                )));
            }
            // image of e_j must be killed by n_j
            for j in 0..d {
                for i in 0..d {
                    if (m[i][j] as i128 * factors[j] as i128).rem_euclid(factors[i] as i128) != 0 {
                        return Err(Error::invalid(format!(
                            "action of {} is not well defined on Z/{}",
                            group.label(*g),
                            factors[j]
                        )));
                    }
                }
            }
        }
        let identity: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| (i == j) as i64).collect())
            .collect();
        // the zero module needs no generators: every element acts by the empty matrix
        let mut full: Vec<Option<Vec<Vec<i64>>>> =
            vec![if d == 0 { Some(Vec::new()) } else { None }; group.order()];
        full[0] = Some(reduce(&identity));
        let gens: Vec<(usize, Vec<Vec<i64>>)> =
            action.iter().map(|(g, m)| (*g, reduce(m))).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = full[x].clone().unwrap();
            for (g, mg) in &gens {
                let y = group.mul(x, *g);
                let my = reduce(&matmul(&mx, mg));
                match &full[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::invalid(format!(
                            "action is inconsistent at {}",
                            group.label(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        full[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        for (g, m) in &gens {
            if full[*g].as_ref() != Some(m) {
                return Err(Error::invalid(format!(
                    "action is inconsistent at {}",
                    group.label(*g)
                )));
            }
        }
        let action: Vec<Vec<Vec<i64>>> = full
            .into_iter()
            .enumerate()
            .map(|(g, m)| {
                m.ok_or_else(|| {
                    Error::invalid(format!("action undetermined at {}", group.label(g)))
                })
            })
            .collect::<Result<_>>()?;
        let module = FiniteGModule {
            group: group.clone(),
            factors,
            action,
        };
        module.check_homomorphism()?;
        Ok(module)
    }

    pub fn trivial(group: &Arc<FiniteGroup>, factors: Vec<u64>) -> Result<Self> {
        Self::new(group, factors, BTreeMap::new())
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &*self.group;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = &self.action[g.mul(a, b)];
                let rhs = self.reduce(&matmul(&self.action[a], &self.action[b]));
                if *lhs != rhs {
                    return Err(Error::invalid(format!(
                        "action is not a homomorphism at ({}, {})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    fn reduce(&self, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|x| x.rem_euclid(self.factors[i] as i64))
                    .collect()
            })
            .collect()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().all(|&n| n == 1)
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn action_matrix(&self, g: usize) -> &[Vec<i64>] {
        &self.action[g]
    }

    /// x·v for x with rational coefficients whose denominators are prime to the exponent.
    pub fn act(&self, x: &GroupRingElement, v: &[i64]) -> Result<Vec<i64>> {
        let n = self.exponent() as i64;
        let d = self.factors.len();
        let mut out = vec![0i64; d];
        for (g, c) in x.terms() {
            let r = c.to_rational().ok_or_else(|| {
                Error::invalid("only rational group-ring coefficients act on modules")
            })?;
            let k = residue(&r, n).ok_or_else(|| {
                Error::invalid(format!(
                    "coefficient {r} has a denominator sharing a factor with {n}"
                ))
            })?;
            let m = &self.action[g];
            for i in 0..d {
                let mut s: i128 = 0;
                for j in 0..d {
                    s += m[i][j] as i128 * v[j] as i128;
                }
                let fi = self.factors[i] as i128;
                out[i] = ((out[i] as i128 + (k as i128 % fi) * (s % fi)).rem_euclid(fi)) as i64;
            }
        }
        Ok(out)
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        let d = self.factors.len();
        (0..d)
            .map(|i| (0..d).map(|j| (i == j) as i64).collect())
            .collect()
    }

    /// First basis vector not killed by x, with its image.
    pub fn annihilation_failure(&self, x: &GroupRingElement) -> Result<Option<(usize, Vec<i64>)>> {
        for (i, e) in self.basis().into_iter().enumerate() {
            let img = self.act(x, &e)?;
            if img.iter().any(|&c| c != 0) {
                return Ok(Some((i, img)));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> ModuleJson {
        let mut action = serde_json::Map::new();
        for g in 0..self.group.order() {
            action.insert(
                self.group.label(g).to_string(),
                serde_json::to_value(&self.action[g]).unwrap(),
            );
        }
        ModuleJson {
            factors: self.factors.clone(),
            action,
        }
    }

    /// `{"factors": [..], "action": {g: matrix}}`.
    pub fn from_json(group: &Arc<FiniteGroup>, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("module must be an object".into()))?;
        for k in obj.keys() {
            if k != "factors" && k != "action" {
                return Err(Error::Parse(format!("unknown field {k:?} in module")));
            }
        }
        let factors: Vec<u64> =
            serde_json::from_value(obj.get("factors").cloned().unwrap_or_default())
                .map_err(|e| Error::Parse(format!("factors: {e}")))?;
        let mut action = BTreeMap::new();
        if let Some(a) = obj.get("action") {
            let a = a
                .as_object()
                .ok_or_else(|| Error::Parse("action must be an object".into()))?;
            for (k, m) in a {
                let g = crate::center::group_ring::resolve_element(group, k)?;
                let m: Vec<Vec<i64>> = serde_json::from_value(m.clone())
                    .map_err(|e| Error::Parse(format!("action of {k}: {e}")))?;
                action.insert(g, m);
            }
        }
        Self::new(group, factors, action)
    }
}

#[derive(Serialize)]
pub struct ModuleJson {
    pub factors: Vec<u64>,
    pub action: serde_json::Map<String, serde_json::Value>,
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| a[i][k] as i128 * b[k][j] as i128)
                        .sum::<i128>() as i64
                })
                .collect()
        })
        .collect()
}

/// r mod n for a rational with denominator prime to n.
pub fn residue(r: &crate::arith::Rational, n: i64) -> Option<i64> {
    let nb = BigInt::from(n);
    let num = r.numer().mod_floor(&nb);
    let den = r.denom().mod_floor(&nb);
    if n == 1 {
        return Some(0);
    }
    let inv = mod_inverse(den.to_i64()?, n)?;
    let v = (num * BigInt::from(inv)).mod_floor(&nb);
    v.to_i64()
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let g = a.extended_gcd(&n);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n))
}

#[derive(Clone, Debug)]
pub struct AnnihilationViolation {
    pub h_index: usize,
    pub generator_index: usize,
    pub basis_vector: usize,
    pub image: Vec<i64>,
}

/// Check (h·f)·M = 0 for every h and every Fitting generator f.
pub fn annihilation_check(
    fitt: &FittingInvariant,
    module: &FiniteGModule,
    h_elements: &[GroupRingElement],
) -> Result<Vec<AnnihilationViolation>> {
    let mut out = Vec::new();
    if module.is_zero() {
        return Ok(out);
    }
    for (hi, h) in h_elements.iter().enumerate() {
        for (fi, f) in fitt.generators.iter().enumerate() {
            let x = h.mul(&f.to_group_ring())?;
            if let Some((b, image)) = module.annihilation_failure(&x)? {
                out.push(AnnihilationViolation {
                    h_index: hi,
                    generator_index: fi,
                    basis_vector: b,
                    image,
                });
            }
        }
    }
    Ok(out)
}
