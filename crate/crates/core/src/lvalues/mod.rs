//! Exact Dirichlet L-values at non-positive integers via generalized Bernoulli numbers.

pub mod bernoulli;
pub mod dirichlet;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Pow;

pub use bernoulli::{bernoulli_number_at, bernoulli_polynomial, eval_bernoulli};
pub use dirichlet::{
    is_prime, prime_factors, unit_group_generators, DirichletCharacter, DirichletJson,
};

use crate::arith::{q, qf, Cyc, Rational};
use crate::error::{Error, Result};

fn int_pow(base: u64, e: u32) -> Rational {
    Rational::from_integer(Pow::pow(BigInt::from(base), e))
}

/// B_{n,χ} = f^{n−1} Σ_{a=1}^{f} χ(a) B_n(a/f) for primitive χ of conductor f.
pub fn generalized_bernoulli(n: usize, chi: &DirichletCharacter) -> Result<Cyc> {
    if !chi.is_primitive() {
        return Err(Error::invalid(format!(
            "generalized Bernoulli number needs a primitive character (modulus {}, conductor {})",
            chi.modulus(),
            chi.conductor()
        )));
    }
    if n == 0 {
        return Err(Error::invalid("B_{0,chi} is not used"));
    }
    let f = chi.modulus();
    let mut acc = Cyc::zero(chi.value_order());
    for a in 1..=f {
        if chi.exponent_at(a as i64).is_none() {
            continue;
        }
        let b = eval_bernoulli(n, &qf(a as i64, f as i64));
        acc = acc + chi.value(a as i64).scale(&b);
    }
    Ok(acc.scale(&int_pow(f, n as u32 - 1)))
}

/// L(r, χ_prim) = −B_{1−r,χ}/(1−r) for r ≤ 0, evaluated on the primitive core.
pub fn l_at_nonpositive(r: i64, chi: &DirichletCharacter) -> Result<Cyc> {
    if r > 0 {
        return Err(Error::invalid(format!("L-values only at r <= 0, got {r}")));
    }
    let n = (1 - r) as usize;
    let b = generalized_bernoulli(n, &chi.primitive())?;
    Ok(b.scale(&qf(-1, n as i64)))
}

/// ζ_f(r, a) = Σ_{m ≡ a (f), m > 0} m^{−s} at s = r ≤ 0, that is −f^{−r} B_{1−r}(a/f)/(1−r).
pub fn partial_zeta(r: i64, f: u64, a: u64) -> Result<Rational> {
    if r > 0 || f == 0 {
        return Err(Error::invalid("partial zeta needs r <= 0 and f > 0"));
    }
    let a = match a % f {
        0 => f,
        x => x,
    };
    let n = (1 - r) as usize;
    let b = eval_bernoulli(n, &qf(a as i64, f as i64));
    Ok(-b * int_pow(f, (-r) as u32) / q(n as i64))
}

fn check_places(s: &BTreeSet<u64>, t: &BTreeSet<u64>) -> Result<()> {
    if let Some(p) = s.intersection(t).next() {
        return Err(Error::invalid(format!("S and T share the prime {p}")));
    }
    if let Some(p) = s.iter().chain(t).find(|&&p| !is_prime(p)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(())
}

/// Euler factor (1 − χ_prim(q) q^{−r}) at q ∤ cond(χ).
pub fn euler_factor(r: i64, chi: &DirichletCharacter, p: u64) -> Cyc {
    let prim = chi.primitive();
    let one = Cyc::one(chi.value_order());
    one - prim.value(p as i64).scale(&int_pow(p, (-r) as u32))
}

/// δ factor (1 − χ_prim(q) q^{1−r}).
pub fn delta_factor(r: i64, chi: &DirichletCharacter, p: u64) -> Cyc {
    let prim = chi.primitive();
    let one = Cyc::one(chi.value_order());
    one - prim.value(p as i64).scale(&int_pow(p, (1 - r) as u32))
}

/// L_S^T(r, χ) = L(r, χ_prim) ∏_{q∈S, q∤f_χ} (1 − χ(q) q^{−r}) ∏_{q∈T} (1 − χ(q) q^{1−r}).
pub fn l_st(r: i64, chi: &DirichletCharacter, s: &BTreeSet<u64>, t: &BTreeSet<u64>) -> Result<Cyc> {
    check_places(s, t)?;
    let mut acc = l_at_nonpositive(r, chi)?;
    for &p in s {
        acc = acc * euler_factor(r, chi, p);
    }
    for &p in t {
        acc = acc * delta_factor(r, chi, p);
    }
    Ok(acc)
}

/// The S-truncated value L_S(r, χ) computed as Σ_a χ(a) ζ_m(r, a) with m the product of S.
pub fn l_s_by_partial_zeta(r: i64, chi: &DirichletCharacter, s: &BTreeSet<u64>) -> Result<Cyc> {
    let prim = chi.primitive();
    let f = prim.modulus();
    let m: u64 = s.iter().product::<u64>() * f;
    let mut acc = Cyc::zero(chi.value_order());
    for a in 1..=m {
        if num_integer::gcd(a, m) != 1 {
            continue;
        }
        acc = acc + prim.value(a as i64).scale(&partial_zeta(r, m, a)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi_m3() -> DirichletCharacter {
        DirichletCharacter::from_generator_values(3, 2, &[(2, 1)]).unwrap()
    }

    fn chi_m4() -> DirichletCharacter {
        DirichletCharacter::from_generator_values(4, 2, &[(3, 1)]).unwrap()
    }

    #[test]
    fn riemann_zeta() {
        let one = DirichletCharacter::trivial(1);
        assert_eq!(
            l_at_nonpositive(0, &one).unwrap(),
            Cyc::from_rational(qf(-1, 2))
        );
        assert_eq!(
            l_at_nonpositive(-1, &one).unwrap(),
            Cyc::from_rational(qf(-1, 12))
        );
        assert_eq!(l_at_nonpositive(-2, &one).unwrap(), Cyc::zero(1));
        assert_eq!(
            l_at_nonpositive(-3, &one).unwrap(),
            Cyc::from_rational(qf(1, 120))
        );
    }

    #[test]
    fn quadratic_values() {
        assert_eq!(
            generalized_bernoulli(1, &chi_m3()).unwrap(),
            Cyc::from_rational(qf(-1, 3))
        );
        assert_eq!(
            l_at_nonpositive(0, &chi_m3()).unwrap(),
            Cyc::from_rational(qf(1, 3))
        );
        assert_eq!(
            l_at_nonpositive(0, &chi_m4()).unwrap(),
            Cyc::from_rational(qf(1, 2))
        );
        let t: BTreeSet<u64> = [5].into();
        // δ = 1 − χ(5)·5 = 6
        assert_eq!(
            l_st(0, &chi_m3(), &[3].into(), &t).unwrap(),
            Cyc::from_int(2)
        );
        assert!(l_st(0, &chi_m3(), &t, &t).is_err());
        assert!(generalized_bernoulli(1, &DirichletCharacter::all(6)[1]).is_err());
    }

    #[test]
    fn parity_vanishing() {
        for f in 3..40 {
            for chi in DirichletCharacter::all(f) {
                if !chi.is_primitive() || chi.is_trivial() {
                    continue;
                }
                let l0 = l_at_nonpositive(0, &chi).unwrap();
                let l1 = l_at_nonpositive(-1, &chi).unwrap();
                assert_eq!(l0.is_zero(), chi.is_even(), "f={f}");
                assert_eq!(l1.is_zero(), !chi.is_even(), "f={f}");
            }
        }
    }

    #[test]
    fn partial_zeta_route_agrees() {
        for f in [5u64, 7, 8, 12] {
            for chi in DirichletCharacter::all(f) {
                let s: BTreeSet<u64> = prime_factors(f).into_iter().map(|(p, _)| p).collect();
                for r in [0, -1, -2] {
                    let a = l_st(r, &chi, &s, &BTreeSet::new()).unwrap();
                    let b = l_s_by_partial_zeta(r, &chi, &s).unwrap();
                    assert_eq!(a, b, "f={f} r={r}");
                }
            }
        }
    }
}
