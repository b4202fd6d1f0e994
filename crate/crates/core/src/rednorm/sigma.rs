//! The reindexing isomorphism M_n(F)[C] ≅ M_n(F[C]).

use std::collections::BTreeMap;
use std::sync::Arc;

use super::gr_matrix::GroupRingMatrix;
use crate::arith::matrix::CycMatrix;
use crate::arith::Cyc;
use crate::center::GroupRingElement;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Σ_c M_c c with matrix coefficients M_c ∈ M_n(F).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGroupRing {
    group: Arc<FiniteGroup>,
    n: usize,
    terms: BTreeMap<usize, CycMatrix>,
}

impl MatrixGroupRing {
    pub fn new(
        group: &Arc<FiniteGroup>,
        n: usize,
        terms: impl IntoIterator<Item = (usize, CycMatrix)>,
    ) -> Result<Self> {
        let mut out = MatrixGroupRing {
            group: group.clone(),
            n,
            terms: BTreeMap::new(),
        };
        for (c, m) in terms {
            if m.rows() != n || m.cols() != n {
                return Err(Error::invalid("coefficient matrix has the wrong size"));
            }
            out.add_term(c, m)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, c: usize, m: CycMatrix) -> Result<()> {
        let next = match self.terms.remove(&c) {
            Some(old) => old.add(&m)?,
            None => m,
        };
        if !next.entries().iter().all(Cyc::is_zero) {
            self.terms.insert(c, next);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = MatrixGroupRing {
            group: self.group.clone(),
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (c, m) in &self.terms {
            for (d, k) in &other.terms {
                out.add_term(self.group.mul(*c, *d), m.mul(k)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (c, m) in &other.terms {
            out.add_term(*c, m.clone())?;
        }
        Ok(out)
    }

    /// σ(Σ_c M_c c) = (Σ_c (M_c)_{ij} c)_{ij}.
    pub fn sigma(&self) -> GroupRingMatrix {
        let mut out = GroupRingMatrix::zero(&self.group, self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let e = GroupRingElement::from_terms(
                    &self.group,
                    self.terms.iter().map(|(c, m)| (*c, m.get(i, j).clone())),
                );
                out.set(i, j, e);
            }
        }
        out
    }

    pub fn from_sigma(m: &GroupRingMatrix) -> Result<Self> {
        let n = m.rows();
        if m.cols() != n {
            return Err(Error::invalid("sigma inverse needs a square matrix"));
        }
        let g = m.group();
        let mut terms = Vec::new();
        for c in 0..g.order() {
            let mut mc = CycMatrix::zero(n, n, 1);
            for i in 0..n {
                for j in 0..n {
                    mc.set(i, j, m.get(i, j).coeff(c));
                }
            }
            terms.push((c, mc));
        }
        Self::new(g, n, terms)
    }

    /// Σ_c λ(c) M_c for a character given by its values on C.
    pub fn specialize(&self, lambda: impl Fn(usize) -> Cyc) -> Result<CycMatrix> {
        let mut acc = CycMatrix::zero(self.n, self.n, 1);
        for (c, m) in &self.terms {
            acc = acc.add(&m.scale(&lambda(*c))?)?;
        }
        Ok(acc)
    }
}

/// Determinant over the commutative ring F[C] by the Leibniz expansion.
pub fn det_commutative(m: &GroupRingMatrix) -> Result<GroupRingElement> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::invalid("determinant of a non-square matrix"));
    }
    if !m.group().is_abelian() {
        return Err(Error::invalid(
            "Leibniz determinant needs a commutative ring",
        ));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = GroupRingElement::zero(m.group());
    permute(&mut perm, 0, &mut |p, sign| {
        let mut term = GroupRingElement::scalar(m.group(), Cyc::from_int(sign));
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(m.get(i, j))?;
            if term.is_zero() {
                break;
            }
        }
        acc = acc.add(&term)?;
        Ok(())
    })?;
    Ok(acc)
}

fn permute(
    p: &mut Vec<usize>,
    k: usize,
    f: &mut impl FnMut(&[usize], i64) -> Result<()>,
) -> Result<()> {
    fn sign(p: &[usize]) -> i64 {
        let mut s = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }
    if k == p.len() {
        return f(p, sign(p));
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f)?;
        p.swap(k, i);
    }
    Ok(())
}
