//! Elements of ℚ(ζ_n) in the power basis modulo Φ_n.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly;
use super::rational::{format_rational, is_integer, lcm_denominators, parse_rational, q, Rational};
use crate::error::{Error, Result};

static MAX_ORDER: AtomicU64 = AtomicU64::new(1_000_000);

/// Largest cyclotomic order arithmetic may lift to.
pub fn max_order() -> u64 {
    MAX_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_order(cap: u64) {
    MAX_ORDER.store(cap.max(1), Ordering::Relaxed);
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

type PhiCache = RwLock<HashMap<u64, Arc<Vec<i64>>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Φ_n with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p: Vec<i128> = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        p = divide_monic(&p, &phi_d);
    }
    let p: Vec<i64> = p
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let p = Arc::new(p);
    phi_cache().write().unwrap().entry(n).or_insert(p).clone()
}

fn divide_monic(a: &[i128], b: &[i64]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut quo = vec![0i128; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        quo[k - db] = c;
        for (j, &y) in b.iter().enumerate() {
            r[k - db + j] -= c * y as i128;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quo
}

/// Reduce a polynomial (any length) modulo Φ_n into a vector of length φ(n).
fn reduce(n: u64, mut p: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    // fold modulo x^n - 1 first, cheaply
    if p.len() > n as usize {
        let n = n as usize;
        for k in (n..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if !c.is_zero() {
                p[k % n] += c;
            }
        }
        p.truncate(n);
    }
    if p.len() > d {
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[k]);
            for (j, &y) in phi.iter().enumerate().take(d) {
                if y != 0 {
                    p[k - d + j] -= &c * BigInt::from(y);
                }
            }
        }
        p.truncate(d);
    }
    p.resize(d, Rational::zero());
    p
}

fn check_order(n: u64) -> Result<()> {
    let cap = max_order();
    if n > cap {
        Err(Error::OrderTooLarge { order: n, cap })
    } else {
        Ok(())
    }
}

/// An element of ℚ(ζ_n), stored canonically in the power basis 1, ζ, …, ζ^{φ(n)−1}.
#[derive(Clone, Debug)]
pub struct Cyc {
    n: u64,
    c: Vec<Rational>,
}

impl Cyc {
    pub fn zero(n: u64) -> Self {
        Cyc {
            n,
            c: vec![Rational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational_at(n, Rational::one())
    }

    pub fn from_rational(x: Rational) -> Self {
        Cyc { n: 1, c: vec![x] }
    }

    pub fn from_int(x: i64) -> Self {
        Self::from_rational(q(x))
    }

    pub fn from_rational_at(n: u64, x: Rational) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = x;
        z
    }

    /// ζ_n^k.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        Cyc { n, c: reduce(n, p) }
    }

    /// Σ_k counts[k] ζ_n^k for a coefficient vector indexed by exponent.
    pub fn from_exponent_coeffs(n: u64, coeffs: Vec<Rational>) -> Self {
        Cyc {
            n,
            c: reduce(n, coeffs),
        }
    }

    /// Build from power-basis coefficients of length at most φ(n).
    pub fn from_power_basis(n: u64, mut coeffs: Vec<Rational>) -> Result<Self> {
        let d = euler_phi(n) as usize;
        if coeffs.len() > d {
            return Err(Error::invalid(format!(
                "{} coefficients exceed the degree {d} of Q(zeta_{n})",
                coeffs.len()
            )));
        }
        coeffs.resize(d, Rational::zero());
        Ok(Cyc { n, c: coeffs })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|x| x.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Re-express in ℚ(ζ_m) for a multiple m of the current order.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.n) {
            return Err(Error::invalid(format!(
                "cannot lift order {} to {m}",
                self.n
            )));
        }
        check_order(m)?;
        let step = (m / self.n) as usize;
        let mut p = vec![Rational::zero(); step * self.c.len().max(1)];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                p[i * step] = x.clone();
            }
        }
        Ok(Cyc {
            n: m,
            c: reduce(m, p),
        })
    }

    fn common(a: &Cyc, b: &Cyc) -> Result<(Cyc, Cyc)> {
        if a.n == b.n {
            return Ok((a.clone(), b.clone()));
        }
        // order-1 elements lift for free
        if a.n == 1 {
            return Ok((Cyc::from_rational_at(b.n, a.c[0].clone()), b.clone()));
        }
        if b.n == 1 {
            return Ok((a.clone(), Cyc::from_rational_at(a.n, b.c[0].clone())));
        }
        let m = lcm_u64(a.n, b.n);
        check_order(m)?;
        Ok((a.lift(m)?, b.lift(m)?))
    }

    pub fn checked_add(&self, other: &Cyc) -> Result<Cyc> {
        if self.n == other.n {
            let c = self.c.iter().zip(&other.c).map(|(x, y)| x + y).collect();
            return Ok(Cyc { n: self.n, c });
        }
        let (a, b) = Self::common(self, other)?;
        a.checked_add(&b)
    }

    pub fn checked_sub(&self, other: &Cyc) -> Result<Cyc> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Cyc) -> Result<Cyc> {
        if self.n != other.n {
            let (a, b) = Self::common(self, other)?;
            return a.checked_mul(&b);
        }
        if let Some(x) = other.to_rational() {
            return Ok(self.scale(&x));
        }
        if let Some(x) = self.to_rational() {
            return Ok(other.scale(&x));
        }
        Ok(Cyc {
            n: self.n,
            c: reduce(self.n, poly::mul(&self.c, &other.c)),
        })
    }

    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(x) = self.to_rational() {
            return Ok(Cyc::from_rational_at(self.n, Rational::one() / x));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.n)
            .iter()
            .map(|&c| q(c))
            .collect();
        let inv = poly::inverse_mod(&self.c, &phi)
            .ok_or_else(|| Error::Internal("cyclotomic element not invertible".into()))?;
        Ok(Cyc {
            n: self.n,
            c: reduce(self.n, inv),
        })
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, x: &Rational) -> Cyc {
        Cyc {
            n: self.n,
            c: self.c.iter().map(|y| y * x).collect(),
        }
    }

    pub fn neg_ref(&self) -> Cyc {
        Cyc {
            n: self.n,
            c: self.c.iter().map(|y| -y).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Cyc> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyc::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The automorphism ζ_n ↦ ζ_n^k.
    pub fn galois_apply(&self, k: i64) -> Result<Cyc> {
        let n = self.n;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd_u64(kk, n) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        if self.is_rational() || kk == 1 % n {
            return Ok(self.clone());
        }
        let mut p = vec![Rational::zero(); n as usize];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                p[(i as u64 * kk % n) as usize] += x;
            }
        }
        Ok(Cyc { n, c: reduce(n, p) })
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyc {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.c.iter().all(is_integer)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.c.iter().all(|x| super::rational::is_p_integral(x, p))
    }

    /// Least common denominator of the power-basis coefficients.
    pub fn denominator(&self) -> BigInt {
        lcm_denominators(&self.c)
    }

    /// Numerical value in ℂ (for display only).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let v = rational_to_f64(x);
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Deterministic textual key, e.g. `[12|1,-1/2,0,3]`.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(format_rational).collect();
        format!("[{}|{}]", self.n, parts.join(","))
    }

    /// Drop rational elements to order 1.
    pub fn simplify(&self) -> Cyc {
        if self.n != 1 && self.is_rational() {
            Cyc::from_rational(self.c[0].clone())
        } else {
            self.clone()
        }
    }
}

pub(crate) fn rational_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        match Cyc::common(self, other) {
            Ok((a, b)) => a.c == b.c,
            Err(_) => false,
        }
    }
}

impl Eq for Cyc {}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.to_rational() {
            return write!(f, "{x}");
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let sign = if x.is_negative() { "-" } else { "+" };
            if first {
                if x.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, i),
            };
            if z.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{mag}*{z}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                self.$checked(rhs).expect("cyclotomic arithmetic failed")
            }
        }
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.neg_ref()
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.neg_ref()
    }
}

impl From<Rational> for Cyc {
    fn from(x: Rational) -> Self {
        Cyc::from_rational(x)
    }
}

impl From<i64> for Cyc {
    fn from(x: i64) -> Self {
        Cyc::from_int(x)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycJson {
    order: u64,
    coeffs: BTreeMap<String, serde_json::Value>,
}

impl Serialize for Cyc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        struct Coeffs<'a>(&'a [Rational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let nz: Vec<_> = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                let mut m = s.serialize_map(Some(nz.len()))?;
                for (i, x) in nz {
                    m.serialize_entry(&i.to_string(), &format_rational(x))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("order", &self.n)?;
        m.serialize_entry("coeffs", &Coeffs(&self.c))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        Cyc::from_json(&v).map_err(D::Error::custom)
    }
}

impl Cyc {
    /// Accepts the object form, or a bare rational string/integer as an order-1 element.
    pub fn from_json(v: &serde_json::Value) -> Result<Cyc> {
        if !v.is_object() {
            return super::rational::serde_rational::from_json(v).map(Cyc::from_rational);
        }
        let raw: CycJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        check_order(raw.order)?;
        let d = euler_phi(raw.order) as usize;
        let mut c = vec![Rational::zero(); d];
        for (k, x) in &raw.coeffs {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient index {k:?}")))?;
            if i >= d {
                return Err(Error::Parse(format!(
                    "coefficient index {i} out of range for order {}",
                    raw.order
                )));
            }
            c[i] = match x {
                serde_json::Value::String(s) => parse_rational(s)?,
                other => super::rational::serde_rational::from_json(other)?,
            };
        }
        Ok(Cyc { n: raw.order, c })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qf;

    #[test]
    fn phi_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn basic_identities() {
        let i = Cyc::zeta_pow(4, 1);
        assert_eq!(&i * &i, Cyc::from_int(-1));
        let z3 = Cyc::zeta_pow(3, 1);
        let a = &Cyc::one(3) + &z3;
        let b = &Cyc::one(3) + &Cyc::zeta_pow(3, 2);
        assert_eq!(&a * &b, Cyc::from_int(1));
        assert_eq!(
            Cyc::from_rational(qf(2, 3)).inv().unwrap(),
            Cyc::from_rational(qf(3, 2))
        );
        assert_eq!(Cyc::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn galois() {
        let z3 = Cyc::zeta_pow(3, 1);
        assert_eq!(z3.galois_apply(2).unwrap(), &Cyc::from_int(-1) - &z3);
        let x = &Cyc::zeta_pow(12, 1) + &Cyc::one(12);
        assert_eq!(
            x.galois_apply(5).unwrap(),
            &Cyc::zeta_pow(12, 5) + &Cyc::one(12)
        );
        assert!(x.galois_apply(3).is_err());
    }

    #[test]
    fn integrality() {
        assert!(!Cyc::from_rational(qf(1, 2)).is_algebraic_integer());
        assert!((&Cyc::zeta_pow(8, 1) + &Cyc::from_int(3)).is_algebraic_integer());
        let z = Cyc::zeta_pow(5, 1);
        let num = &Cyc::one(5) - &z;
        let den = &Cyc::one(5) - &Cyc::zeta_pow(5, 2);
        assert!(num.checked_div(&den).unwrap().is_algebraic_integer());
    }

    #[test]
    fn mixed_orders() {
        let a = Cyc::zeta_pow(4, 1);
        let b = Cyc::zeta_pow(3, 1);
        let c = &a * &b;
        assert_eq!(c.order(), 12);
        assert_eq!(c, Cyc::zeta_pow(12, 7));
        assert_eq!(Cyc::zeta_pow(6, 2), Cyc::zeta_pow(3, 1));
    }

    #[test]
    fn order_cap() {
        set_max_order(100);
        let r = Cyc::zeta_pow(11, 1).checked_mul(&Cyc::zeta_pow(13, 1));
        set_max_order(1_000_000);
        assert!(matches!(r, Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn json_round_trip() {
        let x = &Cyc::zeta_pow(12, 1).scale(&qf(-3, 2)) + &Cyc::from_int(5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":12,"coeffs":{"0":"5","1":"-3/2"}}"#);
        let y: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&y).unwrap(), s);
        assert!(serde_json::from_str::<Cyc>(r#"{"order":4,"coeffs":{"2":"1"}}"#).is_err());
        assert!(serde_json::from_str::<Cyc>(r#"{"order":4,"coeffs":{},"x":1}"#).is_err());
    }
}
