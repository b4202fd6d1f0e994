//! Character tables of monomial groups with explicit (U, ψ) certificates.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::group::{bit, members, size, FiniteGroup, Subset};
use crate::arith::{q, Cyc, Rational};
use crate::error::{Error, Result};

/// A linear character of a subgroup, as exponents of ζ_e with e the exponent of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChar {
    pub subgroup: Subset,
    /// `exps[g]` for g in the subgroup, `None` outside it.
    pub exps: Vec<Option<u32>>,
    pub modulus: u64,
}

impl LinearChar {
    pub fn value(&self, g: usize) -> Option<Cyc> {
        self.exps[g].map(|k| Cyc::zeta_pow(self.modulus, k as i64))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().flatten().all(|&k| k == 0)
    }

    pub fn product(&self, other: &LinearChar) -> Result<LinearChar> {
        if self.modulus != other.modulus || self.subgroup != other.subgroup {
            return Err(Error::invalid(
                "linear characters live on different subgroups",
            ));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(((*a as u64 + *b as u64) % self.modulus) as u32),
                _ => None,
            })
            .collect();
        Ok(LinearChar {
            subgroup: self.subgroup,
            exps,
            modulus: self.modulus,
        })
    }

    /// Verify ψ(ab) = ψ(a)ψ(b) on the subgroup.
    pub fn check_multiplicative(&self, g: &FiniteGroup) -> Result<()> {
        let m = members(self.subgroup);
        for &a in &m {
            for &b in &m {
                let (Some(x), Some(y), Some(z)) =
                    (self.exps[a], self.exps[b], self.exps[g.mul(a, b)])
                else {
                    return Err(Error::invalid(
                        "linear character undefined on part of its subgroup",
                    ));
                };
                if (x as u64 + y as u64) % self.modulus != z as u64 % self.modulus {
                    return Err(Error::invalid(format!(
                        "psi is not multiplicative at ({}, {})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All linear characters of the subgroup `u`, built by extending from [U,U] one cyclic step at a time.
pub fn linear_characters(g: &FiniteGroup, u: Subset) -> Vec<LinearChar> {
    let e = g.exponent();
    let n = g.order();
    let base = g.commutator_subgroup(u);
    let mut cur = base;
    let mut chars: Vec<Vec<Option<u32>>> = vec![{
        let mut v = vec![None; n];
        for x in members(base) {
            v[x] = Some(0);
        }
        v
    }];
    while cur != u {
        let t = members(u & !cur)[0];
        let mut m = 1u64;
        let mut tm = t;
        while cur & bit(tm) == 0 {
            tm = g.mul(tm, t);
            m += 1;
        }
        let cur_elems = members(cur);
        let mut next = Vec::new();
        for lam in &chars {
            let a = lam[tm].unwrap() as u64;
            debug_assert_eq!(a % m, 0);
            // solve m·j ≡ a (mod e)
            let step = e / m;
            let j0 = a / m;
            for s in 0..m {
                let j = (j0 + s * step) % e;
                let mut v = lam.clone();
                let mut power = 0usize;
                for k in 1..m {
                    power = if k == 1 { t } else { g.mul(power, t) };
                    for &c in &cur_elems {
                        let x = g.mul(c, power);
                        v[x] = Some(((lam[c].unwrap() as u64 + k * j) % e) as u32);
                    }
                }
                next.push(v);
            }
        }
        chars = next;
        cur = g.generated_by_set(cur | bit(t));
    }
    chars
        .into_iter()
        .map(|exps| LinearChar {
            subgroup: u,
            exps,
            modulus: e,
        })
        .collect()
}

/// Values of ind_U^G ψ on the given elements.
pub fn induce_values(g: &FiniteGroup, psi: &LinearChar, points: &[usize]) -> Vec<Cyc> {
    let e = psi.modulus as usize;
    let usize_ = size(psi.subgroup);
    let scale = Rational::new(1.into(), (usize_ as i64).into());
    points
        .iter()
        .map(|&x| {
            let mut counts = vec![0i64; e];
            for y in 0..g.order() {
                let c = g.conj(g.inv(y), x);
                if let Some(k) = psi.exps[c] {
                    counts[k as usize] += 1;
                }
            }
            Cyc::from_exponent_coeffs(
                e as u64,
                counts.into_iter().map(|c| q(c) * &scale).collect(),
            )
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct MonomialCertificate {
    pub subgroup: Subset,
    pub psi: LinearChar,
}

#[derive(Clone, Debug)]
pub struct Character {
    pub label: String,
    pub degree: u64,
    /// One value per conjugacy class.
    pub values: Vec<Cyc>,
    pub cert: MonomialCertificate,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    chars: Vec<Character>,
    contragredient: Vec<usize>,
    galois: Vec<(u64, Vec<usize>)>,
    orbits: Vec<Vec<usize>>,
}

impl CharacterTable {
    /// Irreducible characters via induction from linear characters of subgroups, largest first.
    pub fn monomial(group: Arc<FiniteGroup>) -> Result<Self> {
        let g = &*group;
        let n = g.order();
        let e = g.exponent();
        let classes = g.conjugacy_classes();
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let mut found: Vec<Character> = Vec::new();
        let mut sum_sq: u64 = 0;
        'outer: for u in g.all_subgroups() {
            let deg = (n / size(u)) as u64;
            if sum_sq + deg * deg > n as u64 {
                continue;
            }
            for psi in linear_characters(g, u) {
                let values = induce_values(g, &psi, &reps);
                if sum_sq + deg * deg > n as u64 {
                    break;
                }
                if !inner_product(&classes, &values, &values, n).is_one() {
                    continue;
                }
                if found.iter().any(|c| c.values == values) {
                    continue;
                }
                found.push(Character {
                    label: String::new(),
                    degree: deg,
                    values,
                    cert: MonomialCertificate { subgroup: u, psi },
                });
                sum_sq += deg * deg;
                if sum_sq == n as u64 {
                    break 'outer;
                }
            }
        }
        if sum_sq != n as u64 || found.len() != classes.len() {
            return Err(Error::NotMonomial);
        }
        let key = |c: &Character| -> (u64, bool, String) {
            let trivial = c.values.iter().all(|v| v.is_one());
            let s: Vec<String> = c
                .values
                .iter()
                .map(|v| v.lift(e).expect("lift to exponent").key())
                .collect();
            (c.degree, !trivial, s.join(";"))
        };
        found.sort_by_cached_key(key);
        for (i, c) in found.iter_mut().enumerate() {
            c.label = format!("chi_{i}");
        }
        let mut table = CharacterTable {
            group: group.clone(),
            classes,
            class_of,
            chars: found,
            contragredient: Vec::new(),
            galois: Vec::new(),
            orbits: Vec::new(),
        };
        table.build_galois()?;
        Ok(table)
    }

    fn build_galois(&mut self) -> Result<()> {
        let e = self.group.exponent();
        for k in 1..=e {
            if k.gcd(&e) != 1 {
                continue;
            }
            let mut perm = Vec::with_capacity(self.chars.len());
            for c in &self.chars {
                let twisted: Vec<Cyc> = c
                    .values
                    .iter()
                    .map(|v| v.galois_apply(k as i64))
                    .collect::<Result<_>>()?;
                let idx = self
                    .chars
                    .iter()
                    .position(|d| d.values == twisted)
                    .ok_or_else(|| Error::Internal("character set is not Galois stable".into()))?;
                perm.push(idx);
            }
            self.galois.push((k, perm));
        }
        let minus_one = (e - 1).max(1);
        self.contragredient = self
            .galois
            .iter()
            .find(|(k, _)| *k == minus_one || e == 1)
            .map(|(_, p)| p.clone())
            .expect("complex conjugation");
        let mut seen = vec![false; self.chars.len()];
        for i in 0..self.chars.len() {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = self.galois.iter().map(|(_, p)| p[i]).collect();
            orbit.sort();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            self.orbits.push(orbit);
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn char(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    pub fn value(&self, chi: usize, g: usize) -> &Cyc {
        &self.chars[chi].values[self.class_of[g]]
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.chars[chi].degree
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.chars.iter().position(|c| c.label == label)
    }

    /// Index of the contragredient χ̌.
    pub fn contragredient(&self, chi: usize) -> usize {
        self.contragredient[chi]
    }

    /// Index of the character g ↦ σ_k(χ(g)).
    pub fn galois_image(&self, k: u64, chi: usize) -> usize {
        let e = self.group.exponent();
        let k = k % e.max(1);
        self.galois
            .iter()
            .find(|(kk, _)| *kk % e.max(1) == k)
            .map(|(_, p)| p[chi])
            .unwrap_or(chi)
    }

    pub fn galois_perms(&self) -> &[(u64, Vec<usize>)] {
        &self.galois
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn kernel(&self, chi: usize) -> Subset {
        let d = Cyc::from_int(self.degree(chi) as i64);
        (0..self.group.order())
            .filter(|&g| *self.value(chi, g) == d)
            .fold(0, |acc, g| acc | bit(g))
    }

    pub fn is_linear(&self, chi: usize) -> bool {
        self.degree(chi) == 1
    }

    /// Frobenius inner product of two class functions.
    pub fn inner(&self, a: &[Cyc], b: &[Cyc]) -> Cyc {
        inner_product(&self.classes, a, b, self.group.order())
    }

    /// Locate an irreducible by its class values.
    pub fn find(&self, values: &[Cyc]) -> Option<usize> {
        self.chars.iter().position(|c| c.values == values)
    }

    /// Restriction of χ to a subgroup, as element-indexed values (`None` off the subgroup).
    pub fn restrict(&self, chi: usize, sub: Subset) -> Vec<Option<Cyc>> {
        (0..self.group.order())
            .map(|g| {
                if sub & bit(g) != 0 {
                    Some(self.value(chi, g).clone())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn sum_of_squared_degrees(&self) -> u64 {
        self.chars.iter().map(|c| c.degree * c.degree).sum()
    }

    pub fn to_json(&self) -> TableJson {
        let g = &self.group;
        TableJson {
            group: g.name().to_string(),
            order: g.order(),
            classes: self
                .classes
                .iter()
                .map(|c| c.iter().map(|&x| g.label(x).to_string()).collect())
                .collect(),
            characters: self
                .chars
                .iter()
                .map(|c| CharJson {
                    label: c.label.clone(),
                    degree: c.degree,
                    values: c.values.clone(),
                    induced_from: g.subset_labels(c.cert.subgroup),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableJson {
    pub group: String,
    pub order: usize,
    pub classes: Vec<Vec<String>>,
    pub characters: Vec<CharJson>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharJson {
    pub label: String,
    pub degree: u64,
    pub values: Vec<Cyc>,
    pub induced_from: Vec<String>,
}

pub fn inner_product(classes: &[Vec<usize>], a: &[Cyc], b: &[Cyc], order: usize) -> Cyc {
    let mut acc = Cyc::zero(1);
    for ((cls, x), y) in classes.iter().zip(a).zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let t = (x * &y.conj()).scale(&q(cls.len() as i64));
        acc = &acc + &t;
    }
    acc.scale(&Rational::new(One::one(), (order as i64).into()))
}

/// Degree of a class function as an integer, if its identity value is a positive integer.
pub fn degree_of(values: &[Cyc]) -> Option<u64> {
    let r = values.first()?.to_rational()?;
    if r.is_integer() && !r.is_zero() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let t = CharacterTable::monomial(Arc::new(FiniteGroup::symmetric3())).unwrap();
        assert_eq!(t.len(), 3);
        let degs: Vec<u64> = t.chars().iter().map(|c| c.degree).collect();
        assert_eq!(degs, vec![1, 1, 2]);
        assert_eq!(size(t.char(2).cert.subgroup), 3);
        assert_eq!(t.sum_of_squared_degrees(), 6);
    }

    #[test]
    fn q8_table() {
        let t = CharacterTable::monomial(Arc::new(FiniteGroup::quaternion())).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.char(4).degree, 2);
        assert_eq!(size(t.char(4).cert.subgroup), 4);
    }

    #[test]
    fn induced_s3_character() {
        let g = FiniteGroup::symmetric3();
        let c3 = g.generated(&[g.index_of("c").unwrap()]);
        let chars = linear_characters(&g, c3);
        assert_eq!(chars.len(), 3);
        let psi = chars.iter().find(|c| !c.is_trivial()).unwrap();
        let pts = [0, g.index_of("s").unwrap(), g.index_of("c").unwrap()];
        let v = induce_values(&g, psi, &pts);
        assert_eq!(
            v,
            vec![Cyc::from_int(2), Cyc::from_int(0), Cyc::from_int(-1)]
        );
        let triv = linear_characters(&g, bit(0));
        let reg = induce_values(&g, &triv[0], &pts);
        assert_eq!(
            reg,
            vec![Cyc::from_int(6), Cyc::from_int(0), Cyc::from_int(0)]
        );
    }

    #[test]
    fn contragredient_of_c3() {
        let t = CharacterTable::monomial(Arc::new(FiniteGroup::cyclic(3))).unwrap();
        assert_eq!(t.contragredient(0), 0);
        assert_eq!(t.contragredient(1), 2);
        assert_eq!(t.orbits().len(), 2);
    }
}
