//! Induced monomial representations realising the irreducible characters.

use crate::arith::matrix::CycMatrix;
use crate::arith::Cyc;
use crate::center::GroupRingElement;
use crate::groups::{bit, FiniteGroup, MonomialCertificate};

/// ρ(g) for every g: column j is sent to row `perm[j]` with scalar ζ_e^{exp[j]}.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub degree: usize,
    pub modulus: u64,
    pub transversal: Vec<usize>,
    /// Indexed by group element, then by column.
    entries: Vec<Vec<(usize, u32)>>,
}

impl MonomialRep {
    pub fn new(g: &FiniteGroup, cert: &MonomialCertificate) -> Self {
        let transversal = g.left_transversal(cert.subgroup);
        let d = transversal.len();
        let mut entries = Vec::with_capacity(g.order());
        for x in 0..g.order() {
            let mut cols = Vec::with_capacity(d);
            for &tj in &transversal {
                let y = g.mul(x, tj);
                let (i, e) = transversal
                    .iter()
                    .enumerate()
                    .find_map(|(i, &ti)| {
                        let u = g.mul(g.inv(ti), y);
                        (cert.subgroup & bit(u) != 0)
                            .then(|| (i, cert.psi.exps[u].expect("psi defined on U")))
                    })
                    .expect("transversal covers G");
                cols.push((i, e));
            }
            entries.push(cols);
        }
        MonomialRep {
            degree: d,
            modulus: cert.psi.modulus,
            transversal,
            entries,
        }
    }

    pub fn matrix(&self, g: usize) -> CycMatrix {
        let mut m = CycMatrix::zero(self.degree, self.degree, 1);
        for (j, &(i, e)) in self.entries[g].iter().enumerate() {
            m.set(i, j, Cyc::zeta_pow(self.modulus, e as i64));
        }
        m
    }

    /// ρ(x) for x in the group algebra.
    pub fn apply(&self, x: &GroupRingElement) -> CycMatrix {
        let d = self.degree;
        let mut acc: Vec<Option<Cyc>> = vec![None; d * d];
        for (g, c) in x.terms() {
            for (j, &(i, e)) in self.entries[g].iter().enumerate() {
                let t = c * &Cyc::zeta_pow(self.modulus, e as i64);
                let slot = &mut acc[i * d + j];
                *slot = Some(match slot.take() {
                    None => t,
                    Some(s) => &s + &t,
                });
            }
        }
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| acc[i * d + j].clone().unwrap_or_else(|| Cyc::zero(1)))
                    .collect()
            })
            .collect();
        CycMatrix::from_rows(rows).expect("square")
    }

    pub fn trace(&self, g: usize) -> Cyc {
        let mut acc = Cyc::zero(1);
        for (j, &(i, e)) in self.entries[g].iter().enumerate() {
            if i == j {
                acc = &acc + &Cyc::zeta_pow(self.modulus, e as i64);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::CharacterTable;
    use std::sync::Arc;

    #[test]
    fn traces_match_characters() {
        for g in [
            FiniteGroup::symmetric3(),
            FiniteGroup::quaternion(),
            FiniteGroup::dihedral(4),
        ] {
            let t = CharacterTable::monomial(Arc::new(g)).unwrap();
            let g = t.group().clone();
            for chi in 0..t.len() {
                let rep = MonomialRep::new(&g, &t.char(chi).cert);
                for x in 0..g.order() {
                    assert_eq!(&rep.trace(x), t.value(chi, x));
                    for y in 0..g.order() {
                        let lhs = rep.matrix(g.mul(x, y));
                        let rhs = rep.matrix(x).mul(&rep.matrix(y)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn s3_transposition_det() {
        let t = CharacterTable::monomial(Arc::new(FiniteGroup::symmetric3())).unwrap();
        let g = t.group().clone();
        let rep = MonomialRep::new(&g, &t.char(2).cert);
        assert_eq!(
            rep.matrix(g.index_of("s").unwrap()).det().unwrap(),
            Cyc::from_int(-1)
        );
    }
}
