//! Central elements of ℚG viewed through their character components.

use std::sync::Arc;

use serde_json::json;

use super::group_ring::{cyc_json, GroupRingElement};
use crate::arith::{q, qf, Cyc};
use crate::error::{Error, Result};
use crate::groups::{bit, detect_direct_product, members, CharacterTable, DirectProduct, Subset};

/// x ∈ ζ(FG), stored as the scalars by which x acts on each irreducible.
#[derive(Clone, Debug)]
pub struct CentralElement {
    table: Arc<CharacterTable>,
    components: Vec<Cyc>,
}

impl PartialEq for CentralElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.components == other.components
    }
}

/// Failing datum of a maximal-order membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipWitness {
    pub character: String,
    /// Element of C for product-mode tests.
    pub element: Option<String>,
    pub value: Cyc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxOrderMode {
    /// ζ(𝓜(G)) = ⊕ O_ℚ(χ).
    Full,
    /// ζ(𝓜(H))[C] for a decomposition G = H × C.
    Product,
}

impl CentralElement {
    pub fn from_components(table: &Arc<CharacterTable>, components: Vec<Cyc>) -> Result<Self> {
        if components.len() != table.len() {
            return Err(Error::invalid(format!(
                "{} components for {} characters",
                components.len(),
                table.len()
            )));
        }
        Ok(CentralElement {
            table: table.clone(),
            components: components.into_iter().map(|c| c.simplify()).collect(),
        })
    }

    pub fn from_fn(table: &Arc<CharacterTable>, f: impl Fn(usize) -> Cyc) -> Self {
        let components = (0..table.len()).map(|i| f(i).simplify()).collect();
        CentralElement {
            table: table.clone(),
            components,
        }
    }

    pub fn scalar(table: &Arc<CharacterTable>, x: Cyc) -> Self {
        Self::from_fn(table, |_| x.clone())
    }

    pub fn one(table: &Arc<CharacterTable>) -> Self {
        Self::scalar(table, Cyc::from_int(1))
    }

    pub fn zero(table: &Arc<CharacterTable>) -> Self {
        Self::scalar(table, Cyc::from_int(0))
    }

    /// The central idempotent e_χ.
    pub fn idempotent(table: &Arc<CharacterTable>, chi: usize) -> Self {
        Self::from_fn(table, |i| Cyc::from_int((i == chi) as i64))
    }

    /// c_χ = χ(1)⁻¹ Σ_g a_g χ(g); rejects non-central input.
    pub fn from_group_ring(x: &GroupRingElement, table: &Arc<CharacterTable>) -> Result<Self> {
        let g = table.group();
        if let Some((a, b)) = x.central_violation() {
            return Err(Error::NotCentral(
                g.label(a).to_string(),
                g.label(b).to_string(),
            ));
        }
        let components = (0..table.len())
            .map(|chi| {
                let mut acc = Cyc::zero(1);
                for (h, c) in x.terms() {
                    acc = &acc + &(c * table.value(chi, h));
                }
                acc.scale(&qf(1, table.degree(chi) as i64)).simplify()
            })
            .collect();
        Ok(CentralElement {
            table: table.clone(),
            components,
        })
    }

    /// a_g = Σ_χ c_χ χ(1) χ(g⁻¹) / |G|.
    pub fn to_group_ring(&self) -> GroupRingElement {
        let g = self.table.group();
        let n = g.order() as i64;
        let mut terms = Vec::with_capacity(g.order());
        // coefficients are class functions: compute once per class
        for cls in self.table.classes() {
            let x = cls[0];
            let xinv = g.inv(x);
            let mut acc = Cyc::zero(1);
            for (chi, c) in self.components.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = (c * self.table.value(chi, xinv)).scale(&q(self.table.degree(chi) as i64));
                acc = &acc + &t;
            }
            let acc = acc.scale(&qf(1, n)).simplify();
            for &y in cls {
                terms.push((y, acc.clone()));
            }
        }
        GroupRingElement::from_terms(g, terms)
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn components(&self) -> &[Cyc] {
        &self.components
    }

    pub fn component(&self, chi: usize) -> &Cyc {
        &self.components[chi]
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyc, &Cyc) -> Cyc) -> Result<Self> {
        if !Arc::ptr_eq(&self.table, &other.table) {
            return Err(Error::invalid(
                "central elements over different character tables",
            ));
        }
        Ok(Self::from_fn(&self.table, |i| {
            f(&self.components[i], &other.components[i])
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, x: &Cyc) -> Self {
        Self::from_fn(&self.table, |i| &self.components[i] * x)
    }

    pub fn map(&self, f: impl Fn(usize, &Cyc) -> Cyc) -> Self {
        Self::from_fn(&self.table, |i| f(i, &self.components[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cyc::is_zero)
    }

    /// Components move to the contragredient characters.
    pub fn sharp(&self) -> Self {
        Self::from_fn(&self.table, |i| {
            self.components[self.table.contragredient(i)].clone()
        })
    }

    /// ε_H = |H|⁻¹ N_H for normal H: component 1 exactly when H ⊆ ker χ.
    pub fn eps_h(table: &Arc<CharacterTable>, h: Subset) -> Result<Self> {
        let g = table.group();
        if !g.is_subgroup(h) || !g.is_normal(h) {
            return Err(Error::invalid("eps_H needs a normal subgroup"));
        }
        Ok(Self::from_fn(table, |chi| {
            Cyc::from_int((table.kernel(chi) & h == h) as i64)
        }))
    }

    /// Components are Galois-equivariant, i.e. the element lies in ζ(ℚG).
    pub fn galois_violation(&self) -> Option<(u64, usize)> {
        for (k, perm) in self.table.galois_perms() {
            for chi in 0..self.components.len() {
                let twisted = self.components[chi].galois_apply(*k as i64).ok()?;
                if twisted != self.components[perm[chi]] {
                    return Some((*k, chi));
                }
            }
        }
        None
    }

    pub fn is_rational(&self) -> bool {
        self.galois_violation().is_none()
    }

    /// ζ(𝓜(G)) membership (componentwise algebraic integrality), optionally only at `p`.
    pub fn max_order_witness(&self, p: Option<u64>) -> Option<MembershipWitness> {
        self.components.iter().enumerate().find_map(|(chi, c)| {
            let ok = match p {
                Some(p) => c.is_p_integral(p),
                None => c.is_algebraic_integer(),
            };
            (!ok).then(|| MembershipWitness {
                character: self.table.char(chi).label.clone(),
                element: None,
                value: c.clone(),
            })
        })
    }

    /// Membership in ζ(𝓜(G)) or ζ(𝓜(H))[C]; `Ok(None)` means the element belongs.
    pub fn max_order_membership(
        &self,
        mode: MaxOrderMode,
        p: Option<u64>,
    ) -> Result<Option<MembershipWitness>> {
        match mode {
            MaxOrderMode::Full => Ok(self.max_order_witness(p)),
            MaxOrderMode::Product => {
                let g = self.table.group();
                let Some(dp) = detect_direct_product(g) else {
                    return Ok(self.max_order_witness(p));
                };
                self.product_membership(dp, p)
            }
        }
    }

    /// Coefficients α_c(ψ) of the ψ-part in ℚ(ψ)[C], for ψ ∈ Irr(H).
    pub fn product_coefficients(
        &self,
        dp: DirectProduct,
    ) -> Result<Vec<(usize, Vec<(usize, Cyc)>)>> {
        let t = &*self.table;
        let g = t.group();
        let hs = members(dp.h);
        let cs = members(dp.c);
        if hs.len() * cs.len() != g.order() {
            return Err(Error::invalid(
                "decomposition does not match the element's group",
            ));
        }
        // group G-characters by their restriction to H
        let mut groups: Vec<(Vec<Cyc>, Vec<usize>)> = Vec::new();
        for chi in 0..t.len() {
            let res: Vec<Cyc> = hs.iter().map(|&h| t.value(chi, h).clone()).collect();
            match groups.iter_mut().find(|(r, _)| *r == res) {
                Some((_, v)) => v.push(chi),
                None => groups.push((res, vec![chi])),
            }
        }
        let mut out = Vec::new();
        for (_, chis) in &groups {
            if chis.len() != cs.len() {
                return Err(Error::Internal(
                    "restriction classes do not match |C|".into(),
                ));
            }
            let mut coeffs = Vec::new();
            for &c in &cs {
                let cinv = g.inv(c);
                let mut acc = Cyc::zero(1);
                for &chi in chis {
                    // λ(c⁻¹) = χ(c⁻¹)/χ(1)
                    let lam = t.value(chi, cinv).scale(&qf(1, t.degree(chi) as i64));
                    acc = &acc + &(&self.components[chi] * &lam);
                }
                coeffs.push((c, acc.scale(&qf(1, cs.len() as i64)).simplify()));
            }
            out.push((chis[0], coeffs));
        }
        Ok(out)
    }

    fn product_membership(
        &self,
        dp: DirectProduct,
        p: Option<u64>,
    ) -> Result<Option<MembershipWitness>> {
        let g = self.table.group();
        for (chi, coeffs) in self.product_coefficients(dp)? {
            for (c, a) in coeffs {
                let ok = match p {
                    Some(p) => a.is_p_integral(p),
                    None => a.is_algebraic_integer(),
                };
                if !ok {
                    return Ok(Some(MembershipWitness {
                        character: self.table.char(chi).label.clone(),
                        element: Some(g.label(c).to_string()),
                        value: a,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Multiply by (1 − j)/2.
    pub fn minus_project(&self, j: usize) -> Result<MinusCentralElement> {
        let g = self.table.group();
        if g.mul(j, j) != 0 {
            return Err(Error::invalid("j is not an involution"));
        }
        if g.center() & bit(j) == 0 {
            return Err(Error::invalid("j is not central"));
        }
        let base = self.map(|chi, c| {
            let ratio = self
                .table
                .value(chi, j)
                .scale(&qf(1, self.table.degree(chi) as i64));
            let factor = (&Cyc::from_int(1) - &ratio).scale(&qf(1, 2));
            c * &factor
        });
        Ok(MinusCentralElement { base, j })
    }

    pub fn to_json(&self, with_group_ring: bool) -> serde_json::Value {
        let mut comps = serde_json::Map::new();
        for (chi, c) in self.components.iter().enumerate() {
            comps.insert(self.table.char(chi).label.clone(), cyc_json(c));
        }
        let mut v = json!({
            "group": self.table.group().name(),
            "components": comps,
        });
        if with_group_ring {
            v["groupRing"] = self.to_group_ring().to_json();
        }
        v
    }

    /// Parse either view; when both are present they must agree.
    pub fn from_json(table: &Arc<CharacterTable>, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("central element must be an object".into()))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "group" | "components" | "groupRing") {
                return Err(Error::Parse(format!(
                    "unknown field {k:?} in central element"
                )));
            }
        }
        if let Some(name) = obj.get("group") {
            if name.as_str() != Some(table.group().name()) {
                return Err(Error::Parse(format!(
                    "central element is over group {name}"
                )));
            }
        }
        let from_ring = match obj.get("groupRing") {
            Some(r) => Some(Self::from_group_ring(
                &GroupRingElement::from_json(table.group(), r)?,
                table,
            )?),
            None => None,
        };
        let from_comps = match obj.get("components") {
            Some(c) => {
                let c = c
                    .as_object()
                    .ok_or_else(|| Error::Parse("components must be an object".into()))?;
                let mut comps = vec![None; table.len()];
                for (label, x) in c {
                    let i = table
                        .index_of_label(label)
                        .ok_or_else(|| Error::Parse(format!("unknown character {label:?}")))?;
                    comps[i] = Some(Cyc::from_json(x)?);
                }
                let comps = comps
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| {
                        c.ok_or_else(|| Error::Parse(format!("missing component chi_{i}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Self::from_components(table, comps)?)
            }
            None => None,
        };
        match (from_ring, from_comps) {
            (Some(a), Some(b)) if a != b => Err(Error::Parse(
                "components and group ring view disagree".into(),
            )),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(Error::Parse(
                "central element needs components or groupRing".into(),
            )),
        }
    }
}

/// A central element multiplied by ε₋ = (1 − j)/2.
#[derive(Clone, Debug, PartialEq)]
pub struct MinusCentralElement {
    pub base: CentralElement,
    pub j: usize,
}

impl MinusCentralElement {
    /// Characters with χ(j) = −χ(1).
    pub fn odd_characters(&self) -> Vec<usize> {
        let t = self.base.table();
        (0..t.len())
            .filter(|&chi| *t.value(chi, self.j) == Cyc::from_int(-(t.degree(chi) as i64)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn table(g: FiniteGroup) -> Arc<CharacterTable> {
        Arc::new(CharacterTable::monomial(Arc::new(g)).unwrap())
    }

    #[test]
    fn norm_element_components() {
        let t = table(FiniteGroup::symmetric3());
        let g = t.group().clone();
        let n = GroupRingElement::norm_element(&g, g.full());
        let c = CentralElement::from_group_ring(&n, &t).unwrap();
        assert_eq!(c.component(0), &Cyc::from_int(6));
        assert!(c.components()[1..].iter().all(Cyc::is_zero));
        assert_eq!(c.to_group_ring(), n);
    }

    #[test]
    fn three_cycle_class_sum() {
        let t = table(FiniteGroup::symmetric3());
        let g = t.group().clone();
        let c = g.index_of("c").unwrap();
        let cls = t.classes()[t.class_of(c)].clone();
        let x = GroupRingElement::from_terms(&g, cls.into_iter().map(|y| (y, Cyc::from_int(1))));
        let comps = CentralElement::from_group_ring(&x, &t).unwrap();
        let vals: Vec<Cyc> = comps.components().to_vec();
        assert_eq!(
            vals,
            vec![Cyc::from_int(2), Cyc::from_int(2), Cyc::from_int(-1)]
        );
    }

    #[test]
    fn rejects_non_central() {
        let t = table(FiniteGroup::symmetric3());
        let g = t.group().clone();
        let s = GroupRingElement::basis(&g, g.index_of("s").unwrap());
        assert!(matches!(
            CentralElement::from_group_ring(&s, &t),
            Err(Error::NotCentral(..))
        ));
    }

    #[test]
    fn eps_and_minus() {
        let t = table(FiniteGroup::symmetric3());
        let g = t.group().clone();
        let c3 = g.generated(&[g.index_of("c").unwrap()]);
        let e = CentralElement::eps_h(&t, c3).unwrap();
        assert_eq!(
            e.components(),
            &[Cyc::from_int(1), Cyc::from_int(1), Cyc::from_int(0)]
        );
        assert!(CentralElement::eps_h(&t, g.generated(&[g.index_of("s").unwrap()])).is_err());

        let t2 = table(FiniteGroup::cyclic(2));
        let g2 = t2.group().clone();
        let x = GroupRingElement::from_terms(&g2, [(0, Cyc::from_int(5)), (1, Cyc::from_int(2))]);
        let xc = CentralElement::from_group_ring(&x, &t2).unwrap();
        let m = xc.minus_project(1).unwrap();
        let expect =
            GroupRingElement::from_terms(&g2, [(0, qf(3, 2).into()), (1, qf(-3, 2).into())]);
        assert_eq!(m.base.to_group_ring(), expect);
        assert!(xc.minus_project(0).unwrap().base.is_zero());
    }

    #[test]
    fn membership_modes() {
        let t = table(FiniteGroup::direct_product(
            &FiniteGroup::symmetric3(),
            &FiniteGroup::cyclic(2),
        ));
        let one = CentralElement::one(&t);
        assert_eq!(
            one.max_order_membership(MaxOrderMode::Full, None).unwrap(),
            None
        );
        assert_eq!(
            one.max_order_membership(MaxOrderMode::Product, None)
                .unwrap(),
            None
        );
        let half = one.scale(&qf(1, 2).into());
        let w = half
            .max_order_membership(MaxOrderMode::Full, None)
            .unwrap()
            .unwrap();
        assert_eq!(w.value, qf(1, 2).into());
        // (1 + c)/2 for the central C2 generator is integral componentwise but not in Z[C]
        let g = t.group().clone();
        let dp = detect_direct_product(&g).unwrap();
        let c = members(dp.c)[1];
        let x = GroupRingElement::from_terms(&g, [(0, qf(1, 2).into()), (c, qf(1, 2).into())]);
        let xc = CentralElement::from_group_ring(&x, &t).unwrap();
        assert!(xc
            .max_order_membership(MaxOrderMode::Full, None)
            .unwrap()
            .is_none());
        let w = xc
            .max_order_membership(MaxOrderMode::Product, None)
            .unwrap()
            .unwrap();
        assert_eq!(w.value, qf(1, 2).into());
    }

    #[test]
    fn json_views_round_trip() {
        let t = table(FiniteGroup::quaternion());
        let g = t.group().clone();
        let x = GroupRingElement::norm_element(&g, g.center());
        let c = CentralElement::from_group_ring(&x, &t).unwrap();
        let v = c.to_json(true);
        assert_eq!(CentralElement::from_json(&t, &v).unwrap(), c);
        let s = serde_json::to_string(&v).unwrap();
        let again = CentralElement::from_json(&t, &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&again.to_json(true)).unwrap(), s);
    }
}
