//! Matrices with group-ring entries.

use std::sync::Arc;

use crate::arith::Cyc;
use crate::center::GroupRingElement;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    group: Arc<FiniteGroup>,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zero(group: &Arc<FiniteGroup>, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            group: group.clone(),
            rows,
            cols,
            entries: vec![GroupRingElement::zero(group); rows * cols],
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        let mut m = Self::zero(group, n, n);
        for i in 0..n {
            m.entries[i * n + i] = GroupRingElement::one(group);
        }
        m
    }

    pub fn scalar_diag(x: &GroupRingElement, n: usize) -> Self {
        let mut m = Self::zero(x.group(), n, n);
        for i in 0..n {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(group: &Arc<FiniteGroup>, rows: Vec<Vec<GroupRingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged group ring matrix"));
        }
        let entries: Vec<GroupRingElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| **e.group() != **group) {
            return Err(Error::invalid("matrix entries over different groups"));
        }
        Ok(GroupRingMatrix {
            group: group.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    /// All entries lie in ℤG.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_integral)
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.entries
            .iter()
            .all(GroupRingElement::has_rational_coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::invalid("shape mismatch in matrix sum"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(GroupRingMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::invalid("shape mismatch in matrix product"));
        }
        let mut out = Self::zero(&self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GroupRingElement::zero(&self.group);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Multiply every entry on the left by x.
    pub fn left_scale(&self, x: &GroupRingElement) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| x.mul(e))
            .collect::<Result<_>>()?;
        Ok(GroupRingMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        GroupRingMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Rows selected in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
        }
        GroupRingMatrix {
            group: self.group.clone(),
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols).map(|j| self.get(i, j).to_json()).collect(),
                    )
                })
                .collect(),
        )
    }

    /// Nested arrays of group-ring elements `{label: coefficient}`.
    pub fn from_json(group: &Arc<FiniteGroup>, v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(|e| GroupRingElement::from_json(group, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(group, rows)
    }
}
