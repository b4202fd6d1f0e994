//! Dense univariate polynomials over ℚ, lowest degree first.

use num_traits::{One, Zero};

use super::rational::Rational;

pub type Poly = Vec<Rational>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![Rational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate().take(db + 1) {
            if !y.is_zero() {
                r[shift + j] -= &c * y;
            }
        }
        quo[shift] = c;
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    trim(&mut r0);
    trim(&mut r1);
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (quo, rem) = divrem(&r0, &r1);
        let t2 = sub(&t0, &mul(&quo, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is the gcd; it must be a nonzero constant
    if degree(&r0) != Some(0) {
        return None;
    }
    let inv = Rational::one() / &r0[0];
    let mut out: Poly = t0.into_iter().map(|c| c * &inv).collect();
    let (_, rem) = divrem(&out, m);
    out = rem;
    Some(out)
}

pub fn eval(p: &Poly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    fn p(v: &[i64]) -> Poly {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[1, 0, 1]);
        let (quo, rem) = divrem(&a, &b);
        assert_eq!(add(&mul(&quo, &b), &rem), a);
        assert!(rem.len() < 3);
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[1, 1, 1]);
        let a = p(&[2, 1]);
        let inv = inverse_mod(&a, &m).unwrap();
        let (_, r) = divrem(&mul(&a, &inv), &m);
        assert_eq!(r, p(&[1]));
        assert!(inverse_mod(&p(&[1, 1]), &p(&[-1, 0, 1])).is_none());
    }
}
