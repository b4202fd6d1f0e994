//! Dirichlet characters with values ζ_e^k, primitive cores and conductors.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::Cyc;
use crate::error::{Error, Result};

/// A character of (ℤ/f)^×; `exps[a]` is k with χ(a) = ζ_e^k, `None` when gcd(a, f) > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    e: u64,
    exps: Vec<Option<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirichletJson {
    pub modulus: u64,
    /// Values are ζ_order^k; defaults to φ(modulus).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub values: BTreeMap<String, i64>,
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![(n, 1)]
}

fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

/// CRT lift of x mod m1 and 1 mod m2 (coprime moduli).
fn crt_with_one(x: u64, m1: u64, m2: u64) -> u64 {
    let f = m1 * m2;
    (0..m2)
        .map(|t| x + t * m1)
        .find(|a| a % m2 == 1 % m2)
        .unwrap_or(x)
        % f.max(1)
}

/// Independent generators of (ℤ/f)^× with their orders.
pub fn unit_group_generators(f: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, k) in prime_factors(f) {
        let pk = p.pow(k);
        let rest = f / pk;
        let local: Vec<(u64, u64)> = if p == 2 {
            match k {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pk - 1, 2), (5, pk / 4)],
            }
        } else {
            let phi = pk / p * (p - 1);
            let g = (2..pk)
                .find(|&g| g % p != 0 && mult_order(g, pk) == phi)
                .expect("primitive root");
            vec![(g, phi)]
        };
        for (g, o) in local {
            gens.push((crt_with_one(g, pk, rest), o));
        }
    }
    gens
}

impl DirichletCharacter {
    pub fn trivial(f: u64) -> Self {
        let exps = (0..f).map(|a| (a.gcd(&f) == 1).then_some(0)).collect();
        DirichletCharacter {
            modulus: f,
            e: 1,
            exps,
        }
    }

    /// All characters modulo f in a deterministic order (trivial first).
    pub fn all(f: u64) -> Vec<Self> {
        let gens = unit_group_generators(f);
        let e = gens.iter().fold(1u64, |acc, (_, o)| acc.lcm(o));
        // discrete logs of every unit
        let mut logs: Vec<Option<Vec<u64>>> = vec![None; f as usize];
        let one = 1 % f;
        logs[one as usize] = Some(vec![0; gens.len()]);
        let mut queue = VecDeque::from([one]);
        while let Some(a) = queue.pop_front() {
            let la = logs[a as usize].clone().unwrap();
            for (i, (g, o)) in gens.iter().enumerate() {
                let b = a * g % f;
                if logs[b as usize].is_none() {
                    let mut lb = la.clone();
                    lb[i] = (lb[i] + 1) % o;
                    logs[b as usize] = Some(lb);
                    queue.push_back(b);
                }
            }
        }
        let total: u64 = gens.iter().map(|(_, o)| o).product();
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut c = code;
            let ts: Vec<u64> = gens
                .iter()
                .map(|(_, o)| {
                    let t = c % o;
                    c /= o;
                    t
                })
                .collect();
            let exps = logs
                .iter()
                .map(|l| {
                    l.as_ref().map(|l| {
                        (l.iter()
                            .zip(&ts)
                            .zip(&gens)
                            .map(|((k, t), (_, o))| k * t * (e / o))
                            .sum::<u64>()
                            % e) as u32
                    })
                })
                .collect();
            out.push(DirichletCharacter {
                modulus: f,
                e,
                exps,
            });
        }
        if f == 1 {
            out = vec![Self::trivial(1)];
        }
        out
    }

    /// Build from values on some units (ζ_order^k), extended multiplicatively.
    pub fn from_generator_values(f: u64, order: u64, values: &[(u64, i64)]) -> Result<Self> {
        if f == 0 || order == 0 {
            return Err(Error::invalid("modulus and order must be positive"));
        }
        let mut exps: Vec<Option<u32>> = vec![None; f as usize];
        let one = 1 % f;
        exps[one as usize] = Some(0);
        let gens: Vec<(u64, u32)> = values
            .iter()
            .map(|&(a, k)| {
                let a = a % f;
                if a.gcd(&f) != 1 {
                    return Err(Error::invalid(format!("{a} is not a unit modulo {f}")));
                }
                Ok((a, k.rem_euclid(order as i64) as u32))
            })
            .collect::<Result<_>>()?;
        let mut queue = VecDeque::from([one]);
        while let Some(a) = queue.pop_front() {
            let ka = exps[a as usize].unwrap() as u64;
            for &(g, kg) in &gens {
                let b = a * g % f;
                let kb = ((ka + kg as u64) % order) as u32;
                match exps[b as usize] {
                    Some(existing) if existing != kb => {
                        return Err(Error::invalid(format!(
                            "character values inconsistent at {b} mod {f}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        exps[b as usize] = Some(kb);
                        queue.push_back(b);
                    }
                }
            }
        }
        for a in 0..f {
            if a.gcd(&f) == 1 && exps[a as usize].is_none() {
                return Err(Error::invalid(format!(
                    "character undetermined at {a} mod {f}"
                )));
            }
        }
        Ok(DirichletCharacter {
            modulus: f,
            e: order,
            exps,
        })
    }

    pub fn from_json(j: &DirichletJson) -> Result<Self> {
        let order = j
            .order
            .unwrap_or_else(|| crate::arith::cyclotomic::euler_phi(j.modulus));
        let values = j
            .values
            .iter()
            .map(|(a, k)| {
                a.parse::<u64>()
                    .map(|a| (a, *k))
                    .map_err(|_| Error::Parse(format!("bad residue {a:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_values(j.modulus, order, &values)
    }

    /// Composite a ↦ λ(φ(a)) for a map of units into exponents modulo e.
    pub fn from_exponent_table(f: u64, e: u64, exps: Vec<Option<u32>>) -> Result<Self> {
        if exps.len() != f as usize {
            return Err(Error::invalid(
                "exponent table length differs from the modulus",
            ));
        }
        Ok(DirichletCharacter {
            modulus: f,
            e,
            exps,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value_order(&self) -> u64 {
        self.e
    }

    pub fn exponent_at(&self, a: i64) -> Option<u32> {
        self.exps[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// χ(a), zero for non-units.
    pub fn value(&self, a: i64) -> Cyc {
        match self.exponent_at(a) {
            Some(k) => Cyc::zeta_pow(self.e, k as i64),
            None => Cyc::zero(self.e),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().flatten().all(|&k| k == 0)
    }

    pub fn is_even(&self) -> bool {
        self.exponent_at(-1) == Some(0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        let g = self
            .exps
            .iter()
            .flatten()
            .fold(self.e, |acc, &k| acc.gcd(&(k as u64)));
        self.e / g
    }

    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        for d in (1..=f).filter(|d| f.is_multiple_of(*d)) {
            let ok = (0..f).all(|a| {
                if a.gcd(&f) != 1 || a % d != 1 % d {
                    return true;
                }
                self.exps[a as usize] == Some(0)
            });
            if ok {
                return d;
            }
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The character modulo its conductor that induces this one.
    pub fn primitive(&self) -> Self {
        let d = self.conductor();
        if d == self.modulus {
            return self.clone();
        }
        let f = self.modulus;
        let exps = (0..d)
            .map(|b| {
                if b.gcd(&d) != 1 {
                    return None;
                }
                let a = (0..f / d)
                    .map(|t| b + t * d)
                    .find(|a| a.gcd(&f) == 1)
                    .expect("lift exists");
                self.exps[a as usize]
            })
            .collect();
        DirichletCharacter {
            modulus: d,
            e: self.e,
            exps,
        }
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .map(|k| k.map(|k| ((self.e - k as u64 % self.e) % self.e) as u32))
            .collect();
        DirichletCharacter {
            modulus: self.modulus,
            e: self.e,
            exps,
        }
    }

    /// `{"modulus", "order", "values"}` on the unit group generators.
    pub fn to_json(&self) -> DirichletJson {
        let mut values = BTreeMap::new();
        for (g, _) in unit_group_generators(self.modulus) {
            values.insert(g.to_string(), self.exps[g as usize].unwrap_or(0) as i64);
        }
        DirichletJson {
            modulus: self.modulus,
            order: Some(self.e),
            values,
        }
    }
}
