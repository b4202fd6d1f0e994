//! High-precision numeric oracles built without the crate's Bernoulli machinery.

#![allow(dead_code)]

use std::collections::HashMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
/// Euler–Maclaurin cutoff and number of correction terms.
const N: i64 = 30;
const K: usize = 20;

pub struct Numeric {
    pub p: usize,
    cc: Consts,
    /// B_{2k}/(2k)! for k = 1..=K.
    corrections: Vec<BigFloat>,
    roots: HashMap<(u64, u64), (BigFloat, BigFloat)>,
}

/// Bernoulli numbers B_0..B_n from Σ_{j≤m} C(m+1, j) B_j = 0.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

impl Numeric {
    pub fn new(bits: usize) -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let b = bernoulli_numbers(2 * K);
        let mut fact = BigInt::one();
        let mut corrections = Vec::with_capacity(K);
        for m in 1..=2 * K {
            fact *= BigInt::from(m);
            if m % 2 == 0 {
                let x = &b[m] / BigRational::from_integer(fact.clone());
                corrections.push(rational_to_float(&x, bits, &mut cc));
            }
        }
        Numeric {
            p: bits,
            cc,
            corrections,
            roots: HashMap::new(),
        }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rational(&mut self, x: &BigRational) -> BigFloat {
        rational_to_float(x, self.p, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    fn pow(&mut self, x: &BigFloat, e: &BigFloat) -> BigFloat {
        let l = x.ln(self.p, RM, &mut self.cc);
        e.mul(&l, self.p, RM).exp(self.p, RM, &mut self.cc)
    }

    /// ζ(s, a) for real s ≠ 1 and a > 0 by Euler–Maclaurin summation.
    pub fn hurwitz(&mut self, s: &BigFloat, a: &BigFloat) -> BigFloat {
        let p = self.p;
        let minus_s = s.neg();
        let mut acc = self.int(0);
        for n in 0..N {
            let x = a.add(&self.int(n), p, RM);
            acc = acc.add(&self.pow(&x, &minus_s), p, RM);
        }
        let x = a.add(&self.int(N), p, RM);
        let one = self.int(1);
        let x_minus_s = self.pow(&x, &minus_s);
        acc = acc.add(
            &x_minus_s.mul(&x, p, RM).div(&s.sub(&one, p, RM), p, RM),
            p,
            RM,
        );
        acc = acc.add(&x_minus_s.div(&self.int(2), p, RM), p, RM);
        let inv_x2 = one.div(&x.mul(&x, p, RM), p, RM);
        // x^{−s−2k+1} and the rising factorial s(s+1)…(s+2k−2)
        let mut power = x_minus_s.div(&x, p, RM);
        let mut rising = s.clone();
        for k in 1..=K {
            let term = self.corrections[k - 1]
                .mul(&rising, p, RM)
                .mul(&power, p, RM);
            acc = acc.add(&term, p, RM);
            let a1 = s.add(&self.int(2 * k as i64 - 1), p, RM);
            let a2 = s.add(&self.int(2 * k as i64), p, RM);
            rising = rising.mul(&a1, p, RM).mul(&a2, p, RM);
            power = power.mul(&inv_x2, p, RM);
        }
        acc
    }

    /// (cos 2πk/m, sin 2πk/m).
    pub fn root_of_unity(&mut self, k: i64, m: u64) -> (BigFloat, BigFloat) {
        let p = self.p;
        let k = k.rem_euclid(m as i64) as u64;
        if let Some(z) = self.roots.get(&(k, m)) {
            return z.clone();
        }
        let t = self
            .pi()
            .mul(&self.int(2 * k as i64), p, RM)
            .div(&self.int(m as i64), p, RM);
        let z = (t.cos(p, RM, &mut self.cc), t.sin(p, RM, &mut self.cc));
        self.roots.insert((k, m), z.clone());
        z
    }

    /// L(s, χ) = f^{−s} Σ_{a=1}^{f} χ(a) ζ(s, a/f), with χ given by exponents of exp(2πi/m).
    pub fn dirichlet_l(
        &mut self,
        s: &BigFloat,
        f: u64,
        m: u64,
        exponent: impl Fn(u64) -> Option<u32>,
    ) -> (BigFloat, BigFloat) {
        let p = self.p;
        let zetas: Vec<Option<BigFloat>> = (1..=f)
            .map(|a| {
                exponent(a).map(|_| {
                    let x = self.int(a as i64).div(&self.int(f as i64), p, RM);
                    self.hurwitz(s, &x)
                })
            })
            .collect();
        self.character_sum(s, f, m, &zetas, exponent)
    }

    /// Σ_a χ(a) z_a scaled by f^{−s}, reusing precomputed Hurwitz values z_a = ζ(s, a/f).
    pub fn character_sum(
        &mut self,
        s: &BigFloat,
        f: u64,
        m: u64,
        zetas: &[Option<BigFloat>],
        exponent: impl Fn(u64) -> Option<u32>,
    ) -> (BigFloat, BigFloat) {
        let p = self.p;
        let (mut re, mut im) = (self.int(0), self.int(0));
        for a in 1..=f {
            let (Some(e), Some(z)) = (exponent(a), &zetas[(a - 1) as usize]) else {
                continue;
            };
            let (c, sn) = self.root_of_unity(e as i64, m);
            re = re.add(&c.mul(z, p, RM), p, RM);
            im = im.add(&sn.mul(z, p, RM), p, RM);
        }
        let scale = self.pow(&self.int(f as i64), &s.neg());
        (re.mul(&scale, p, RM), im.mul(&scale, p, RM))
    }

    /// Σ_i c_i exp(2πi·i/n) for power-basis coefficients c_i.
    pub fn cyclotomic(&mut self, n: u64, coeffs: &[BigRational]) -> (BigFloat, BigFloat) {
        let p = self.p;
        let (mut re, mut im) = (self.int(0), self.int(0));
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = self.rational(c);
            let (co, si) = self.root_of_unity(i as i64, n);
            re = re.add(&co.mul(&x, p, RM), p, RM);
            im = im.add(&si.mul(&x, p, RM), p, RM);
        }
        (re, im)
    }

    pub fn close(&mut self, a: &BigFloat, b: &BigFloat, tol: &BigFloat) -> bool {
        a.sub(b, self.p, RM).abs().cmp(tol) == Some(-1)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc)
            .expect("format")
            .parse()
            .expect("decimal")
    }

    /// h⁻ of ℚ(ζ_q) for an odd prime q: 2q · ∏_{χ odd} (−B_{1,χ}/2), evaluated in complex arithmetic
    /// with characters built from a primitive root and B_{1,χ} = (1/q) Σ_a a χ(a).
    pub fn relative_class_number(&mut self, q: u64) -> (BigFloat, BigFloat) {
        let p = self.p;
        let g = (2..q)
            .find(|&g| (1..q - 1).all(|k| modpow(g, k, q) != 1))
            .expect("primitive root");
        let mut log = vec![0u64; q as usize];
        for k in 0..q - 1 {
            log[modpow(g, k, q) as usize] = k;
        }
        let (mut re, mut im) = (self.int(2 * q as i64), self.int(0));
        for j in (1..q - 1).step_by(2) {
            let (mut br, mut bi) = (self.int(0), self.int(0));
            for a in 1..q {
                let (c, s) = self.root_of_unity(((j * log[a as usize]) % (q - 1)) as i64, q - 1);
                let av = self.int(a as i64);
                br = br.add(&c.mul(&av, p, RM), p, RM);
                bi = bi.add(&s.mul(&av, p, RM), p, RM);
            }
            let d = self.int(-2 * q as i64);
            let (br, bi) = (br.div(&d, p, RM), bi.div(&d, p, RM));
            let nr = re.mul(&br, p, RM).sub(&im.mul(&bi, p, RM), p, RM);
            let ni = re.mul(&bi, p, RM).add(&im.mul(&br, p, RM), p, RM);
            re = nr;
            im = ni;
        }
        (re, im)
    }
}

fn modpow(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b) = (1u64, b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn rational_to_float(x: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    let n = BigFloat::parse(&x.numer().to_string(), Radix::Dec, p, RM, cc);
    let d = BigFloat::parse(&x.denom().to_string(), Radix::Dec, p, RM, cc);
    n.div(&d, p, RM)
}
