//! Bernoulli polynomials with B_1 = −1/2, cached.

use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::arith::poly::{self, Poly};
use crate::arith::{q, Rational};

fn cache() -> &'static RwLock<Vec<Arc<Poly>>> {
    static CACHE: OnceLock<RwLock<Vec<Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Arc::new(vec![Rational::one()])]))
}

fn binomials(n: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(prev * q((n - k + 1) as i64) / q(k as i64));
    }
    row
}

/// Bernoulli numbers from Σ_{k<n+1} C(n+1,k) B_k = 0.
fn bernoulli_number(n: usize, known: &[Arc<Poly>]) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let c = binomials(n + 1);
    let mut s = Rational::zero();
    for k in 0..n {
        s += &c[k] * &known[k][0];
    }
    -s / q((n + 1) as i64)
}

/// B_n(x) = Σ_k C(n,k) B_k x^{n−k}.
pub fn bernoulli_polynomial(n: usize) -> Arc<Poly> {
    if let Some(p) = cache().read().unwrap().get(n) {
        return p.clone();
    }
    let mut w = cache().write().unwrap();
    while w.len() <= n {
        let m = w.len();
        let bm = bernoulli_number(m, &w);
        let c = binomials(m);
        let mut p = vec![Rational::zero(); m + 1];
        for k in 0..m {
            p[m - k] = &c[k] * &w[k][0];
        }
        p[0] = bm;
        w.push(Arc::new(p));
    }
    w[n].clone()
}

pub fn bernoulli_number_at(n: usize) -> Rational {
    bernoulli_polynomial(n)[0].clone()
}

pub fn eval_bernoulli(n: usize, x: &Rational) -> Rational {
    poly::eval(&bernoulli_polynomial(n), x)
}
