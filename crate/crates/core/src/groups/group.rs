//! Finite groups given by a multiplication table; subsets are `u128` bitmasks.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bitmask over group element indices.
pub type Subset = u128;

pub const DEFAULT_MAX_ORDER: usize = 128;

pub fn bit(i: usize) -> Subset {
    1u128 << i
}

pub fn members(s: Subset) -> Vec<usize> {
    (0..128).filter(|&i| s & bit(i) != 0).collect()
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
    elem_order: Vec<u32>,
    exponent: u64,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
}

/// JSON group input: either a multiplication table or permutation generators.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_names: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.name.clone().unwrap_or_else(|| "G".into());
        match (&self.table, &self.permutations) {
            (Some(t), None) => {
                if self.generator_names.is_some() {
                    return Err(Error::InvalidGroup(
                        "generatorNames needs permutations".into(),
                    ));
                }
                FiniteGroup::from_table(&name, t, self.labels.clone())
            }
            (None, Some(p)) => {
                if self.labels.is_some() {
                    return Err(Error::InvalidGroup(
                        "labels are generated for permutation input; use generatorNames".into(),
                    ));
                }
                let names = match &self.generator_names {
                    Some(v) if v.len() == p.len() => v.clone(),
                    Some(_) => {
                        return Err(Error::InvalidGroup(
                            "generatorNames length differs from permutations".into(),
                        ))
                    }
                    None => (0..p.len()).map(|i| format!("g{i}")).collect(),
                };
                let gens: Vec<(String, Vec<usize>)> =
                    names.into_iter().zip(p.iter().cloned()).collect();
                FiniteGroup::from_permutations(&name, &gens)
            }
            _ => Err(Error::InvalidGroup(
                "exactly one of table or permutations is required".into(),
            )),
        }
    }
}

impl FiniteGroup {
    pub fn from_table(
        name: &str,
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > DEFAULT_MAX_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} exceeds the cap {DEFAULT_MAX_ORDER}"
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {x} out of range in row {i}"
                    )));
                }
                flat.push(x as u8);
            }
        }
        let m = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            if m(0, a) != a || m(a, 0) != a {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[m(a, b)] = true;
                seen_col[m(b, a)] = true;
            }
            if seen_row.iter().chain(&seen_col).any(|s| !s) {
                return Err(Error::InvalidGroup(format!(
                    "element {a} is not invertible"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidGroup(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Self::assemble(name, n, flat, labels)
    }

    fn assemble(name: &str, n: usize, table: Vec<u8>, labels: Vec<String>) -> Result<Self> {
        let mut inv = vec![0u8; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u8;
        }
        let mut elem_order = vec![1u32; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        let exponent = elem_order
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64));
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate label {l:?}")));
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            n,
            table,
            inv,
            elem_order,
            exponent,
            labels,
            label_index,
        })
    }

    /// Closure of permutation generators; elements are listed breadth-first and
    /// labelled by the first word reaching them (identity is `1`).
    pub fn from_permutations(name: &str, gens: &[(String, Vec<usize>)]) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.1.len());
        for (gname, p) in gens {
            if p.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {gname} has the wrong degree"
                )));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup(format!(
                        "generator {gname} is not a permutation"
                    )));
                }
                seen[x] = true;
            }
        }
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { (0..degree).map(|x| a[b[x]]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut labels = vec!["1".to_string()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gname, g) in gens {
                let p = compose(&elems[i], g);
                if index.contains_key(&p) {
                    continue;
                }
                if elems.len() == DEFAULT_MAX_ORDER {
                    return Err(Error::InvalidGroup(format!(
                        "generated group exceeds the cap {DEFAULT_MAX_ORDER}"
                    )));
                }
                index.insert(p.clone(), elems.len());
                let label = if i == 0 {
                    gname.clone()
                } else {
                    format!("{}{}", labels[i], gname)
                };
                labels.push(label);
                queue.push_back(elems.len());
                elems.push(p);
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)] as u8);
            }
        }
        Self::assemble(name, n, table, labels)
    }

    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|k| if k == 0 { "1".into() } else { format!("c^{k}") })
            .collect();
        Self::from_table(&format!("C{n}"), &table, Some(labels)).expect("cyclic table")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(
            "S3",
            &[("s".into(), vec![1, 0, 2]), ("c".into(), vec![1, 2, 0])],
        )
        .expect("S3")
    }

    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&format!("D{n}"), &[("r".into(), rot), ("s".into(), refl)])
            .expect("dihedral")
    }

    /// Quaternion group Q8 as permutations of its regular representation.
    pub fn quaternion() -> Self {
        // elements ±1, ±i, ±j, ±k indexed 0..8 as (1,-1,i,-i,j,-j,k,-k)
        let i_mul = [2, 3, 1, 0, 6, 7, 5, 4];
        let j_mul = [4, 5, 7, 6, 1, 0, 2, 3];
        let left = |m: [usize; 8]| m.to_vec();
        Self::from_permutations(
            "Q8",
            &[("i".into(), left(i_mul)), ("j".into(), left(j_mul))],
        )
        .expect("Q8")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Self::from_table(&format!("{}x{}", a.name, b.name), &table, Some(labels))
            .expect("product table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.elem_order[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut x = 0;
        while e > 0 {
            x = self.mul(x, a);
            e -= 1;
        }
        x
    }

    /// g x g⁻¹.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn full(&self) -> Subset {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.commutes(a, b)))
    }

    /// Subgroup generated by the given elements.
    pub fn generated(&self, gens: &[usize]) -> Subset {
        let mut set = bit(0);
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if set & bit(y) == 0 {
                    set |= bit(y);
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }

    pub fn generated_by_set(&self, s: Subset) -> Subset {
        self.generated(&members(s))
    }

    pub fn is_subgroup(&self, s: Subset) -> bool {
        if s & bit(0) == 0 {
            return false;
        }
        let m = members(s);
        m.iter()
            .all(|&a| m.iter().all(|&b| s & bit(self.mul(a, b)) != 0))
    }

    pub fn conjugate_subset(&self, g: usize, s: Subset) -> Subset {
        members(s)
            .into_iter()
            .fold(0, |acc, x| acc | bit(self.conj(g, x)))
    }

    pub fn is_normal(&self, s: Subset) -> bool {
        (0..self.n).all(|g| self.conjugate_subset(g, s) == s)
    }

    pub fn normal_closure(&self, s: Subset) -> Subset {
        let conjugates = (0..self.n).fold(0, |acc, g| acc | self.conjugate_subset(g, s));
        self.generated_by_set(conjugates)
    }

    /// Commutator subgroup of the subgroup `s`.
    pub fn commutator_subgroup(&self, s: Subset) -> Subset {
        let m = members(s);
        let mut comms = 0;
        for &a in &m {
            for &b in &m {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms |= bit(c);
            }
        }
        self.generated_by_set(comms)
    }

    pub fn center(&self) -> Subset {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.commutes(a, b)))
            .fold(0, |acc, a| acc | bit(a))
    }

    pub fn is_abelian_subset(&self, s: Subset) -> bool {
        let m = members(s);
        m.iter().all(|&a| m.iter().all(|&b| self.commutes(a, b)))
    }

    /// Conjugacy classes, each sorted, ordered by minimal element (identity class first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..self.n).map(|g| self.conj(g, x)).collect();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls.into_iter().collect());
        }
        classes
    }

    /// Every subgroup, ordered by decreasing size then increasing mask.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let mut cyclic: BTreeSet<Subset> = BTreeSet::new();
        for a in 0..self.n {
            cyclic.insert(self.generated(&[a]));
        }
        let cyclic: Vec<Subset> = cyclic.into_iter().collect();
        let mut found: BTreeSet<Subset> = cyclic.iter().copied().collect();
        let mut frontier: Vec<Subset> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &s in &frontier {
                for &c in &cyclic {
                    if c & !s == 0 {
                        continue;
                    }
                    let j = self.generated_by_set(s | c);
                    if found.insert(j) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subset> = found.into_iter().collect();
        out.sort_by(|a, b| size(*b).cmp(&size(*a)).then(a.cmp(b)));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<Subset> {
        self.all_subgroups()
            .into_iter()
            .filter(|&s| self.is_normal(s))
            .collect()
    }

    /// Left coset representatives of `s`, each the minimal element of its coset.
    pub fn left_transversal(&self, s: Subset) -> Vec<usize> {
        let mut covered: Subset = 0;
        let mut reps = Vec::new();
        for g in 0..self.n {
            if covered & bit(g) != 0 {
                continue;
            }
            reps.push(g);
            for h in members(s) {
                covered |= bit(self.mul(g, h));
            }
        }
        reps
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        members(s)
            .into_iter()
            .map(|i| self.labels[i].clone())
            .collect()
    }
}
