//! Reduced norms, reduced characteristic polynomials and star adjoints.

use std::sync::Arc;

use super::gr_matrix::GroupRingMatrix;
use super::representation::MonomialRep;
use crate::arith::matrix::CycMatrix;
use crate::arith::{qf, Cyc};
use crate::center::{CentralElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::groups::CharacterTable;

/// A character table together with explicit monomial representations of every irreducible.
#[derive(Clone, Debug)]
pub struct Realization {
    table: Arc<CharacterTable>,
    reps: Vec<MonomialRep>,
}

#[derive(Clone, Debug)]
pub struct StarAdjointResult {
    pub adjoint: GroupRingMatrix,
    pub norm: CentralElement,
    /// ρ_χ(H*) for every χ.
    pub components: Vec<CycMatrix>,
}

impl Realization {
    pub fn new(table: &Arc<CharacterTable>) -> Self {
        let g = table.group();
        let reps = table
            .chars()
            .iter()
            .map(|c| MonomialRep::new(g, &c.cert))
            .collect();
        Realization {
            table: table.clone(),
            reps,
        }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn rep(&self, chi: usize) -> &MonomialRep {
        &self.reps[chi]
    }

    /// Block matrix ρ_χ(A) of size b·χ(1).
    pub fn represent(&self, a: &GroupRingMatrix, chi: usize) -> CycMatrix {
        let rep = &self.reps[chi];
        let d = rep.degree;
        let mut m = CycMatrix::zero(a.rows() * d, a.cols() * d, 1);
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let block = rep.apply(a.get(r, c));
                for i in 0..d {
                    for j in 0..d {
                        m.set(r * d + i, c * d + j, block.get(i, j).clone());
                    }
                }
            }
        }
        m
    }

    /// nr(A): χ-component det ρ_χ(A).
    pub fn reduced_norm(&self, a: &GroupRingMatrix) -> Result<CentralElement> {
        if !a.is_square() {
            return Err(Error::invalid(format!(
                "reduced norm of a {}x{} matrix",
                a.rows(),
                a.cols()
            )));
        }
        let comps = (0..self.table.len())
            .map(|chi| self.represent(a, chi).det())
            .collect::<Result<Vec<_>>>()?;
        let nr = CentralElement::from_components(&self.table, comps)?;
        if a.has_rational_coeffs() {
            if let Some((k, chi)) = nr.galois_violation() {
                return Err(Error::Internal(format!(
                    "reduced norm components not Galois-consistent at sigma_{k}, {}",
                    self.table.char(chi).label
                )));
            }
        }
        Ok(nr)
    }

    pub fn reduced_norm_element(&self, x: &GroupRingElement) -> Result<CentralElement> {
        self.reduced_norm(&GroupRingMatrix::scalar_diag(x, 1))
    }

    /// Coefficients α_0..α_m of the reduced characteristic polynomial at χ.
    pub fn reduced_charpoly(&self, a: &GroupRingMatrix, chi: usize) -> Result<Vec<Cyc>> {
        self.represent(a, chi).charpoly()
    }

    /// H* = Σ_χ (−1)^{m+1} Σ_{j=1}^{m} α_j(χ) H^{j−1} e_χ, verified against H*H = HH* = nr(H).
    pub fn star_adjoint(&self, h: &GroupRingMatrix) -> Result<StarAdjointResult> {
        if !h.is_square() {
            return Err(Error::invalid("star adjoint needs a square matrix"));
        }
        let g = self.table.group();
        let b = h.rows();
        let polys = (0..self.table.len())
            .map(|chi| self.reduced_charpoly(h, chi))
            .collect::<Result<Vec<_>>>()?;
        // the coefficients must lie in ℚ(χ): Galois twists of χ permute them
        for (k, perm) in self.table.galois_perms() {
            if !h.has_rational_coeffs() {
                break;
            }
            for chi in 0..polys.len() {
                for (x, y) in polys[chi].iter().zip(&polys[perm[chi]]) {
                    if x.galois_apply(*k as i64)? != *y {
                        return Err(Error::Internal(
                            "reduced characteristic polynomial not in Q(chi)".into(),
                        ));
                    }
                }
            }
        }
        let max_m = polys.iter().map(|p| p.len() - 1).max().unwrap_or(0);
        let mut powers = vec![GroupRingMatrix::identity(g, b)];
        for _ in 1..max_m {
            let next = powers.last().unwrap().mul(h)?;
            powers.push(next);
        }
        let mut adj = GroupRingMatrix::zero(g, b, b);
        let mut components = Vec::with_capacity(polys.len());
        let n = g.order() as i64;
        for (chi, poly) in polys.iter().enumerate() {
            let m = poly.len() - 1;
            let sign = if m % 2 == 0 { -1 } else { 1 };
            let e_chi = self.idempotent_element(chi, n);
            for j in 1..=m {
                let alpha = poly[j].scale(&qf(sign, 1));
                if alpha.is_zero() {
                    continue;
                }
                adj = adj.add(&powers[j - 1].left_scale(&e_chi.scale(&alpha))?)?;
            }
            let rho_h = self.represent(h, chi);
            let mut acc = CycMatrix::zero(rho_h.rows(), rho_h.cols(), 1);
            let mut pow = CycMatrix::identity(rho_h.rows(), 1);
            for j in 1..=m {
                acc = acc.add(&pow.scale(&poly[j].scale(&qf(sign, 1)))?)?;
                pow = pow.mul(&rho_h)?;
            }
            components.push(acc);
        }
        let norm = self.reduced_norm(h)?;
        let nr_elem = norm.to_group_ring();
        let expected = GroupRingMatrix::scalar_diag(&nr_elem, b);
        if adj.mul(h)? != expected || h.mul(&adj)? != expected {
            return Err(Error::Internal(
                "star adjoint identity H*H = HH* = nr(H) failed".into(),
            ));
        }
        if h.has_rational_coeffs() && !adj.has_rational_coeffs() {
            return Err(Error::Internal(
                "star adjoint has irrational coefficients".into(),
            ));
        }
        Ok(StarAdjointResult {
            adjoint: adj,
            norm,
            components,
        })
    }

    /// e_χ = χ(1)/|G| Σ χ(g⁻¹) g as a group-ring element.
    pub fn idempotent_element(&self, chi: usize, order: i64) -> GroupRingElement {
        let g = self.table.group();
        let d = self.table.degree(chi) as i64;
        GroupRingElement::from_terms(
            g,
            (0..g.order()).map(|x| (x, self.table.value(chi, g.inv(x)).scale(&qf(d, order)))),
        )
    }
}
