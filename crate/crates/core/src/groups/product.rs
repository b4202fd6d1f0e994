//! Direct-product decompositions G = H × C and the subgroups H(r) generated by complex conjugations.

use super::group::{bit, members, size, FiniteGroup, Subset};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectProduct {
    pub h: Subset,
    pub c: Subset,
}

/// Decomposition G = H × C with C abelian and |C| maximal; `None` when only C = 1 works.
pub fn detect_direct_product(g: &FiniteGroup) -> Option<DirectProduct> {
    let normals = g.normal_subgroups();
    let n = g.order();
    let mut best: Option<DirectProduct> = None;
    for &c in &normals {
        if size(c) == 1 || !g.is_abelian_subset(c) {
            continue;
        }
        if best.is_some_and(|b| size(b.c) >= size(c)) {
            continue;
        }
        for &h in &normals {
            if size(h) * size(c) != n || h & c != bit(0) {
                continue;
            }
            let commute = members(h)
                .iter()
                .all(|&x| members(c).iter().all(|&y| g.commutes(x, y)));
            if commute {
                best = Some(DirectProduct { h, c });
                break;
            }
        }
    }
    best
}

/// The subgroup H(r): products j_w j_w' for even r, the j_w themselves for odd r.
pub fn subgroup_h_r(g: &FiniteGroup, involutions: &[usize], r: i64) -> Result<Subset> {
    for &j in involutions {
        if g.mul(j, j) != 0 {
            return Err(Error::invalid(format!(
                "{} is not an involution",
                g.label(j)
            )));
        }
    }
    let gens: Vec<usize> = if r.rem_euclid(2) == 0 {
        involutions
            .iter()
            .flat_map(|&a| involutions.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .collect()
    } else {
        involutions.to_vec()
    };
    let h = g.generated(&gens);
    if !g.is_normal(h) {
        return Err(Error::invalid(
            "H(r) is not normal; the fixture's complex conjugations are inconsistent",
        ));
    }
    Ok(h)
}
