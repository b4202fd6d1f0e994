//! Dense square and rectangular matrices over cyclotomic numbers.

use super::cyclotomic::Cyc;
use super::rational::q;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyc>,
}

impl CycMatrix {
    pub fn zero(rows: usize, cols: usize, order: u64) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![Cyc::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u64) -> Self {
        let mut m = Self::zero(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = Cyc::one(order);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Ok(CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Cyc) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Cyc] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&Cyc) -> Result<Cyc>) -> Result<Self> {
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::invalid("matrix shape mismatch in addition"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix shape mismatch in product"));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<Cyc> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a.checked_mul(b)?;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s.checked_add(&t)?,
                    });
                }
                data.push(acc.unwrap_or_else(|| Cyc::zero(1)));
            }
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scale(&self, x: &Cyc) -> Result<Self> {
        self.map(|a| a.checked_mul(x))
    }

    pub fn trace(&self) -> Result<Cyc> {
        let mut acc = Cyc::zero(1);
        for i in 0..self.rows.min(self.cols) {
            acc = acc.checked_add(self.get(i, i))?;
        }
        Ok(acc)
    }

    /// Determinant by Gaussian elimination over the cyclotomic field.
    pub fn det(&self) -> Result<Cyc> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Cyc::one(1);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Cyc::zero(1));
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = det.neg_ref();
            }
            let p = a[col * n + col].clone();
            det = det.checked_mul(&p)?;
            let pinv = p.inv()?;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].checked_mul(&pinv)?;
                for j in col..n {
                    if a[col * n + j].is_zero() {
                        continue;
                    }
                    let t = f.checked_mul(&a[col * n + j])?;
                    a[r * n + j] = a[r * n + j].checked_sub(&t)?;
                }
            }
        }
        Ok(det)
    }

    /// Coefficients c_0, …, c_n of det(xI − A), lowest degree first (Faddeev–LeVerrier).
    pub fn charpoly(&self) -> Result<Vec<Cyc>> {
        if self.rows != self.cols {
            return Err(Error::invalid(
                "characteristic polynomial of a non-square matrix",
            ));
        }
        let n = self.rows;
        let mut c = vec![Cyc::zero(1); n + 1];
        c[n] = Cyc::one(1);
        let mut m = CycMatrix::zero(n, n, 1);
        for k in 1..=n {
            let shifted = m.add(&CycMatrix::identity(n, 1).scale(&c[n - k + 1])?)?;
            m = self.mul(&shifted)?;
            let tr = m.trace()?;
            c[n - k] = tr.scale(&(q(-1) / q(k as i64)));
        }
        Ok(c)
    }

    pub fn submatrix(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        CycMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> CycMatrix {
        CycMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyc::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det().unwrap(), Cyc::from_int(-2));
        assert_eq!(
            m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]).det().unwrap(),
            Cyc::from_int(-5)
        );
        assert!(m(&[&[1, 2], &[2, 4]]).det().unwrap().is_zero());
    }

    #[test]
    fn charpoly_matches_det() {
        let a = m(&[&[2, 1, 0], &[0, 1, -1], &[3, 0, 4]]);
        let c = a.charpoly().unwrap();
        // constant term is (−1)^n det A
        assert_eq!(c[0], a.det().unwrap().neg_ref());
        assert_eq!(c[2], Cyc::from_int(-7));
    }
}
