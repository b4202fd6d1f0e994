//! Elements of the group algebra F[G] with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Cyc, Rational};
use crate::error::{Error, Result};
use crate::groups::{members, FiniteGroup, Subset};

#[derive(Clone, Debug)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, Cyc>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::from_terms(group, [(g, Cyc::from_int(1))])
    }

    pub fn scalar(group: &Arc<FiniteGroup>, x: Cyc) -> Self {
        Self::from_terms(group, [(0, x)])
    }

    /// N_H = Σ_{h ∈ H} h.
    pub fn norm_element(group: &Arc<FiniteGroup>, h: Subset) -> Self {
        Self::from_terms(group, members(h).into_iter().map(|x| (x, Cyc::from_int(1))))
    }

    pub fn from_terms(
        group: &Arc<FiniteGroup>,
        terms: impl IntoIterator<Item = (usize, Cyc)>,
    ) -> Self {
        let mut out = Self::zero(group);
        for (g, x) in terms {
            out.add_term(g, &x);
        }
        out
    }

    pub fn from_rational_coeffs(group: &Arc<FiniteGroup>, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            group,
            coeffs
                .iter()
                .enumerate()
                .map(|(g, x)| (g, Cyc::from_rational(x.clone()))),
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, g: usize) -> Cyc {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| Cyc::zero(1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyc)> {
        self.coeffs.iter().map(|(g, x)| (*g, x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, g: usize, x: &Cyc) {
        if x.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(g).or_insert_with(|| Cyc::zero(1));
        let s = (&*entry + x).simplify();
        if s.is_zero() {
            self.coeffs.remove(&g);
        } else {
            *entry = s;
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::invalid("group ring elements over different groups"))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (g, x) in &other.coeffs {
            out.add_term(*g, x);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg_ref())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(&self.group);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_term(self.group.mul(*a, *b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, x) in &self.coeffs {
            out.add_term(*g, &(x * c));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Cyc) -> Cyc) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, x) in &self.coeffs {
            out.add_term(*g, &f(x));
        }
        out
    }

    /// The involution g ↦ g⁻¹.
    pub fn sharp(&self) -> Self {
        Self::from_terms(
            &self.group,
            self.coeffs
                .iter()
                .map(|(g, x)| (self.group.inv(*g), x.clone())),
        )
    }

    /// Coefficients constant on conjugacy classes; returns an offending pair otherwise.
    pub fn central_violation(&self) -> Option<(usize, usize)> {
        let g = &*self.group;
        for x in 0..g.order() {
            let cx = self.coeff(x);
            for h in 0..g.order() {
                let y = g.conj(h, x);
                if self.coeff(y) != cx {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_central(&self) -> bool {
        self.central_violation().is_none()
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.coeffs.values().all(Cyc::is_rational)
    }

    /// Membership in ℤG.
    pub fn is_integral(&self) -> bool {
        self.coeffs
            .values()
            .all(|x| x.to_rational().is_some_and(|r| r.is_integer()))
    }

    /// Coefficients in ℤ[ζ] (algebraic-integer coefficients).
    pub fn has_algebraic_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(Cyc::is_algebraic_integer)
    }

    /// First coefficient whose rational value is not an integer.
    pub fn non_integral_witness(&self) -> Option<(usize, Cyc)> {
        self.coeffs
            .iter()
            .find(|(_, x)| !x.to_rational().is_some_and(|r| r.is_integer()))
            .map(|(g, x)| (*g, x.clone()))
    }

    /// Apply σ_k to every coefficient.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(&self.group);
        for (g, x) in &self.coeffs {
            out.add_term(*g, &x.galois_apply(k)?);
        }
        Ok(out)
    }

    /// JSON object keyed by element labels, in element order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (g, x) in &self.coeffs {
            m.insert(self.group.label(*g).to_string(), cyc_json(x));
        }
        serde_json::Value::Object(m)
    }

    /// Parse `{label: coefficient}`; labels may also be element indices.
    pub fn from_json(group: &Arc<FiniteGroup>, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("group ring element must be an object".into()))?;
        let mut out = Self::zero(group);
        for (k, x) in obj {
            let g = resolve_element(group, k)?;
            out.add_term(g, &Cyc::from_json(x)?);
        }
        Ok(out)
    }
}

/// Rationals print as bare strings; irrational values as the cyclotomic object form.
pub fn cyc_json(x: &Cyc) -> serde_json::Value {
    match x.to_rational() {
        Some(r) => serde_json::Value::String(r.to_string()),
        None => serde_json::to_value(x).expect("serializable"),
    }
}

pub fn resolve_element(group: &FiniteGroup, key: &str) -> Result<usize> {
    if let Some(i) = group.index_of(key) {
        return Ok(i);
    }
    match key.parse::<usize>() {
        Ok(i) if i < group.order() => Ok(i),
        _ => Err(Error::Parse(format!("unknown group element {key:?}"))),
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, x)| {
                let label = self.group.label(*g);
                if x.is_rational() {
                    format!("{}*[{}]", x, label)
                } else {
                    format!("({})*[{}]", x, label)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
