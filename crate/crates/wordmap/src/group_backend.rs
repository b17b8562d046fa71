//! Concrete finite matrix groups over prime fields: `GL_s(F_p)`,
//! `SL_2(F_p)`, the Borel (upper triangular) and unipotent subgroups.
//!
//! All groups here are small enough to enumerate; enumeration is gated by a
//! configurable cap and fails loudly above it.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default limit on the order of an enumerable group.
pub const DEFAULT_ENUMERATION_CAP: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("matrix is singular mod {p}")]
    Singular { p: u64 },
    #[error("matrix does not satisfy the {family} constraint")]
    NotInGroup { family: String },
    #[error("matrix size {got} does not match descriptor size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("group is nonsolvable")]
    Nonsolvable,
}

/// Exact arithmetic mod a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::InvalidDescriptor(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element, by Fermat.
    pub fn inv(&self, a: u64) -> Result<u64, GroupError> {
        if a.is_multiple_of(self.p) {
            return Err(GroupError::Singular { p: self.p });
        }
        Ok(self.pow(a, self.p - 2))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gl,
    Sl2,
    Borel,
    Unipotent,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gl => "GL",
            Family::Sl2 => "SL2",
            Family::Borel => "Borel",
            Family::Unipotent => "Unipotent",
        };
        write!(f, "{s}")
    }
}

/// Which group: a family, a matrix size and a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub size: usize,
    pub p: u64,
}

impl GroupDescriptor {
    pub fn new(family: Family, size: usize, p: u64) -> Result<Self, GroupError> {
        if size == 0 {
            return Err(GroupError::InvalidDescriptor("matrix size must be positive".into()));
        }
        if family == Family::Sl2 && size != 2 {
            return Err(GroupError::InvalidDescriptor("SL2 forces size 2".into()));
        }
        if !is_prime(p) {
            return Err(GroupError::InvalidDescriptor(format!("{p} is not prime")));
        }
        Ok(GroupDescriptor { family, size, p })
    }

    /// Group order from the closed formulas.
    pub fn order(&self) -> u64 {
        let p = self.p;
        let s = self.size as u32;
        match self.family {
            Family::Gl => {
                let ps = p.pow(s);
                (0..s).map(|i| ps - p.pow(i)).product()
            }
            Family::Sl2 => p * (p * p - 1),
            Family::Borel => (p - 1).pow(s) * p.pow(s * (s - 1) / 2),
            Family::Unipotent => p.pow(s * (s - 1) / 2),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sl2 => write!(f, "SL2:p={}", self.p),
            _ => write!(f, "{}:s={},p={}", self.family, self.size, self.p),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = GroupError;

    /// Grammar: `SL2:p=5`, `GL:s=3,p=2`, `Borel:s=2,p=5`, `Unipotent:s=3,p=3`.
    fn from_str(input: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::InvalidDescriptor(input.to_string());
        let (name, params) = input.split_once(':').ok_or_else(bad)?;
        let family = match name {
            "GL" => Family::Gl,
            "SL2" => Family::Sl2,
            "Borel" => Family::Borel,
            "Unipotent" => Family::Unipotent,
            _ => return Err(bad()),
        };
        let mut size: Option<usize> = None;
        let mut p: Option<u64> = None;
        for part in params.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "s" => size = Some(value.trim().parse().map_err(|_| bad())?),
                "p" => p = Some(value.trim().parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let p = p.ok_or_else(bad)?;
        let size = match family {
            Family::Sl2 => size.unwrap_or(2),
            _ => size.ok_or_else(bad)?,
        };
        GroupDescriptor::new(family, size, p)
    }
}

/// An invertible matrix, row-major, entries already reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    size: usize,
    entries: Vec<u64>,
}

impl GroupElement {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.size + col]
    }

    /// Row-major nested JSON-style rows.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.size)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// How far the derived series descends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivedLength {
    Solvable(usize),
    Nonsolvable,
}

/// A concrete finite group with its element table.
///
/// Construction enumerates the whole group (the order formula is checked
/// against the cap first) and sorts elements lexicographically by entries,
/// giving a deterministic total order used for orbit representatives.
pub struct Group {
    descriptor: GroupDescriptor,
    field: PrimeField,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl Group {
    pub fn new(descriptor: GroupDescriptor) -> Result<Self, GroupError> {
        Group::with_cap(descriptor, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(descriptor: GroupDescriptor, cap: u64) -> Result<Self, GroupError> {
        let order = descriptor.order();
        if order > cap {
            return Err(GroupError::CapExceeded { order, cap });
        }
        let field = PrimeField::new(descriptor.p)?;
        let mut elements = enumerate(&descriptor, &field);
        elements.sort();
        debug_assert_eq!(elements.len() as u64, order);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(Group { descriptor, field, elements, index })
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, sorted lexicographically by entries.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element_index(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> GroupElement {
        let s = self.descriptor.size;
        let mut entries = vec![0; s * s];
        for i in 0..s {
            entries[i * s + i] = 1 % self.descriptor.p;
        }
        GroupElement { size: s, entries }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let s = self.descriptor.size;
        let f = &self.field;
        let mut entries = vec![0; s * s];
        for i in 0..s {
            for k in 0..s {
                let aik = a.entries[i * s + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..s {
                    entries[i * s + j] =
                        f.add(entries[i * s + j], f.mul(aik, b.entries[k * s + j]));
                }
            }
        }
        GroupElement { size: s, entries }
    }

    /// Inverse by Gauss-Jordan elimination mod p.
    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        let s = self.descriptor.size;
        let f = &self.field;
        let mut left: Vec<u64> = a.entries.clone();
        let mut right: Vec<u64> = self.identity().entries;
        for col in 0..s {
            let pivot_row = (col..s)
                .find(|&r| left[r * s + col] != 0)
                .ok_or(GroupError::Singular { p: f.p })?;
            if pivot_row != col {
                for j in 0..s {
                    left.swap(col * s + j, pivot_row * s + j);
                    right.swap(col * s + j, pivot_row * s + j);
                }
            }
            let inv_pivot = f.inv(left[col * s + col])?;
            for j in 0..s {
                left[col * s + j] = f.mul(left[col * s + j], inv_pivot);
                right[col * s + j] = f.mul(right[col * s + j], inv_pivot);
            }
            for r in 0..s {
                if r == col || left[r * s + col] == 0 {
                    continue;
                }
                let factor = left[r * s + col];
                for j in 0..s {
                    left[r * s + j] = f.sub(left[r * s + j], f.mul(factor, left[col * s + j]));
                    right[r * s + j] =
                        f.sub(right[r * s + j], f.mul(factor, right[col * s + j]));
                }
            }
        }
        Ok(GroupElement { size: s, entries: right })
    }

    /// `a^e` by square-and-multiply; negative exponents invert first.
    pub fn power(&self, a: &GroupElement, e: i64) -> Result<GroupElement, GroupError> {
        let (mut base, mut exp) = if e < 0 {
            (self.invert(a)?, e.unsigned_abs())
        } else {
            (a.clone(), e as u64)
        };
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn conjugate(&self, s: &GroupElement, g: &GroupElement) -> Result<GroupElement, GroupError> {
        let s_inv = self.invert(s)?;
        Ok(self.multiply(&self.multiply(s, g), &s_inv))
    }

    /// Build an element from rows, validating the family constraint.
    pub fn element_from_rows(&self, rows: &[Vec<u64>]) -> Result<GroupElement, GroupError> {
        let s = self.descriptor.size;
        if rows.len() != s || rows.iter().any(|r| r.len() != s) {
            return Err(GroupError::SizeMismatch { expected: s, got: rows.len() });
        }
        let entries: Vec<u64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x % self.descriptor.p))
            .collect();
        let g = GroupElement { size: s, entries };
        self.check_membership(&g)?;
        Ok(g)
    }

    fn check_membership(&self, g: &GroupElement) -> Result<(), GroupError> {
        let ok = satisfies_family(&self.descriptor, &self.field, &g.entries);
        if !ok {
            return Err(GroupError::NotInGroup { family: self.descriptor.family.to_string() });
        }
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.size == self.descriptor.size
            && satisfies_family(&self.descriptor, &self.field, &g.entries)
    }

    pub fn element_order(&self, g: &GroupElement) -> usize {
        let id = self.identity();
        let mut acc = g.clone();
        let mut n = 1;
        while acc != id {
            acc = self.multiply(&acc, g);
            n += 1;
        }
        n
    }

    /// lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1u64, |acc, g| acc.lcm(&(self.element_order(g) as u64)))
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> GroupElement {
        self.elements[rng.gen_range(0..self.elements.len())].clone()
    }

    /// Brute-force center: elements commuting with everything.
    pub fn center(&self) -> Vec<GroupElement> {
        self.elements
            .iter()
            .filter(|z| {
                self.elements
                    .iter()
                    .all(|g| self.multiply(z, g) == self.multiply(g, z))
            })
            .cloned()
            .collect()
    }

    pub fn is_central(&self, g: &GroupElement) -> bool {
        self.elements
            .iter()
            .all(|h| self.multiply(g, h) == self.multiply(h, g))
    }

    /// Closure of a generating set under multiplication (BFS).
    pub fn subgroup_closure(&self, generators: &[GroupElement]) -> Vec<GroupElement> {
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for gen in generators {
                let next = self.multiply(&g, gen);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut out: Vec<GroupElement> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Is the given element list closed under multiplication (hence a subgroup)?
    pub fn is_subgroup(&self, elements: &[GroupElement]) -> bool {
        if elements.is_empty() {
            return false;
        }
        let set: HashSet<&GroupElement> = elements.iter().collect();
        if !set.contains(&self.identity()) {
            return false;
        }
        elements.iter().all(|a| {
            elements.iter().all(|b| set.contains(&self.multiply(a, b)))
        })
    }

    /// Successive commutator subgroups, from `D^0 = G` until stabilization.
    pub fn derived_series(&self) -> Vec<Vec<GroupElement>> {
        let mut series = vec![self.elements.clone()];
        loop {
            let current = series.last().unwrap();
            let mut commutators: HashSet<GroupElement> = HashSet::new();
            for a in current {
                let a_inv = self.invert(a).expect("group element");
                for b in current {
                    let b_inv = self.invert(b).expect("group element");
                    let c = self.multiply(&self.multiply(a, b), &self.multiply(&a_inv, &b_inv));
                    commutators.insert(c);
                }
            }
            let next = self.subgroup_closure(&commutators.into_iter().collect::<Vec<_>>());
            if &next == current {
                break;
            }
            series.push(next.clone());
            if next.len() == 1 {
                break;
            }
        }
        series
    }

    pub fn derived_length(&self) -> DerivedLength {
        let series = self.derived_series();
        let last = series.last().unwrap();
        if last.len() == 1 {
            DerivedLength::Solvable(series.len() - 1)
        } else {
            DerivedLength::Nonsolvable
        }
    }
}

fn determinant(field: &PrimeField, size: usize, entries: &[u64]) -> u64 {
    let mut m = entries.to_vec();
    let mut det = 1u64;
    for col in 0..size {
        let pivot_row = match (col..size).find(|&r| m[r * size + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for j in 0..size {
                m.swap(col * size + j, pivot_row * size + j);
            }
            det = field.neg(det);
        }
        let pivot = m[col * size + col];
        det = field.mul(det, pivot);
        let inv_pivot = field.inv(pivot).expect("nonzero pivot");
        for r in col + 1..size {
            let factor = field.mul(m[r * size + col], inv_pivot);
            if factor == 0 {
                continue;
            }
            for j in col..size {
                m[r * size + j] = field.sub(m[r * size + j], field.mul(factor, m[col * size + j]));
            }
        }
    }
    det
}

fn satisfies_family(descriptor: &GroupDescriptor, field: &PrimeField, entries: &[u64]) -> bool {
    let s = descriptor.size;
    if entries.len() != s * s || entries.iter().any(|&x| x >= descriptor.p) {
        return false;
    }
    let det = determinant(field, s, entries);
    match descriptor.family {
        Family::Gl => det != 0,
        Family::Sl2 => det == 1 % descriptor.p,
        Family::Borel => {
            let lower_zero =
                (0..s).all(|i| (0..i).all(|j| entries[i * s + j] == 0));
            let diag_nonzero = (0..s).all(|i| entries[i * s + i] != 0);
            lower_zero && diag_nonzero
        }
        Family::Unipotent => {
            let lower_zero =
                (0..s).all(|i| (0..i).all(|j| entries[i * s + j] == 0));
            let diag_one = (0..s).all(|i| entries[i * s + i] == 1 % descriptor.p);
            lower_zero && diag_one
        }
    }
}

fn enumerate(descriptor: &GroupDescriptor, field: &PrimeField) -> Vec<GroupElement> {
    let s = descriptor.size;
    let p = descriptor.p;
    match descriptor.family {
        Family::Gl | Family::Sl2 => {
            // scan all matrices, keep those satisfying the constraint
            let cells = s * s;
            let mut out = Vec::new();
            let mut entries = vec![0u64; cells];
            loop {
                if satisfies_family(descriptor, field, &entries) {
                    out.push(GroupElement { size: s, entries: entries.clone() });
                }
                // odometer
                let mut k = cells;
                loop {
                    if k == 0 {
                        return out;
                    }
                    k -= 1;
                    entries[k] += 1;
                    if entries[k] < p {
                        break;
                    }
                    entries[k] = 0;
                }
            }
        }
        Family::Borel | Family::Unipotent => {
            // free positions: strict upper triangle, plus the diagonal for Borel
            let mut free: Vec<(usize, u64)> = Vec::new(); // (flat index, #choices)
            for i in 0..s {
                for j in i..s {
                    if i == j {
                        if descriptor.family == Family::Borel {
                            free.push((i * s + j, p - 1));
                        }
                    } else {
                        free.push((i * s + j, p));
                    }
                }
            }
            let mut out = Vec::new();
            let mut choice = vec![0u64; free.len()];
            loop {
                let mut entries = vec![0u64; s * s];
                for i in 0..s {
                    entries[i * s + i] = 1 % p;
                }
                for (slot, &(idx, _)) in free.iter().enumerate() {
                    let v = choice[slot];
                    // diagonal choices skip zero
                    entries[idx] = if idx / s == idx % s { v + 1 } else { v };
                }
                out.push(GroupElement { size: s, entries });
                let mut k = free.len();
                loop {
                    if k == 0 {
                        return out;
                    }
                    k -= 1;
                    choice[k] += 1;
                    if choice[k] < free[k].1 {
                        break;
                    }
                    choice[k] = 0;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(spec: &str) -> Group {
        Group::new(spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders_match_formulas_and_enumeration() {
        assert_eq!(group("SL2:p=3").order(), 24);
        assert_eq!(group("Borel:s=2,p=5").order(), 80);
        assert_eq!(group("GL:s=2,p=2").order(), 6);
        assert_eq!(group("Unipotent:s=3,p=3").order(), 27);
        assert_eq!(group("SL2:p=5").order(), 120);
    }

    #[test]
    fn descriptor_parse_and_display() {
        let d: GroupDescriptor = "SL2:p=5".parse().unwrap();
        assert_eq!(d.to_string(), "SL2:p=5");
        let d: GroupDescriptor = "Borel:s=2,p=5".parse().unwrap();
        assert_eq!(d.to_string(), "Borel:s=2,p=5");
        assert!("SL2:s=3,p=5".parse::<GroupDescriptor>().is_err());
        assert!("GL:s=2,p=4".parse::<GroupDescriptor>().is_err());
        assert!("Sp:s=2,p=3".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let d: GroupDescriptor = "GL:s=3,p=7".parse().unwrap();
        assert!(matches!(Group::new(d), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn center_examples() {
        let g = group("SL2:p=3");
        let center = g.center();
        assert_eq!(center.len(), 2); // {I, -I}
        assert!(center.contains(&g.identity()));

        let u = group("Unipotent:s=2,p=3");
        assert_eq!(u.center().len(), u.order()); // abelian

        let gl22 = group("GL:s=2,p=2");
        assert_eq!(gl22.center().len(), 1);
    }

    #[test]
    fn derived_series_examples() {
        assert_eq!(group("Borel:s=2,p=5").derived_length(), DerivedLength::Solvable(2));
        assert_eq!(group("Unipotent:s=2,p=3").derived_length(), DerivedLength::Solvable(1));
        assert_eq!(group("SL2:p=5").derived_length(), DerivedLength::Nonsolvable);

        // nonsolvable series stabilizes at the whole group for SL2(F5)
        let g = group("SL2:p=5");
        let series = g.derived_series();
        assert_eq!(series.last().unwrap().len(), g.order());
    }

    #[test]
    fn derived_series_terms_decrease_and_are_normal() {
        let g = group("Borel:s=2,p=5");
        let series = g.derived_series();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for window in series.windows(2) {
            let (prev, next) = (&window[0], &window[1]);
            assert!(next.len() < prev.len());
            assert_eq!(prev.len() % next.len(), 0);
            // spot-check normality by random conjugation from the previous term
            let next_set: HashSet<&GroupElement> = next.iter().collect();
            for _ in 0..50 {
                let h = &next[rng.gen_range(0..next.len())];
                let c = &prev[rng.gen_range(0..prev.len())];
                let conj = g.conjugate(c, h).unwrap();
                assert!(next_set.contains(&conj));
            }
        }
    }

    #[test]
    fn group_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for spec in ["SL2:p=3", "GL:s=2,p=3", "Borel:s=2,p=5", "Unipotent:s=3,p=3"] {
            let g = group(spec);
            let id = g.identity();
            for _ in 0..100 {
                let a = g.random_element(&mut rng);
                let b = g.random_element(&mut rng);
                let c = g.random_element(&mut rng);
                assert_eq!(
                    g.multiply(&g.multiply(&a, &b), &c),
                    g.multiply(&a, &g.multiply(&b, &c))
                );
                assert_eq!(g.multiply(&a, &id), a);
                assert_eq!(g.multiply(&id, &a), a);
                let a_inv = g.invert(&a).unwrap();
                assert_eq!(g.multiply(&a, &a_inv), id);
                // closure under the family constraint
                assert!(g.contains(&g.multiply(&a, &b)));
                assert!(g.contains(&a_inv));
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        for spec in ["SL2:p=3", "GL:s=2,p=2", "Borel:s=2,p=3"] {
            let g = group(spec);
            for el in g.elements() {
                assert_eq!(g.order() % g.element_order(el), 0);
            }
        }
    }

    #[test]
    fn exponent_of_sl2_f3() {
        // element orders in SL2(F3) are {1,2,3,4,6}
        assert_eq!(group("SL2:p=3").exponent(), 12);
    }

    #[test]
    fn element_from_rows_validates() {
        let g = group("SL2:p=5");
        let ok = g.element_from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(ok.entry(0, 1), 1);
        assert!(matches!(
            g.element_from_rows(&[vec![2, 0], vec![0, 1]]),
            Err(GroupError::NotInGroup { .. })
        ));
        assert!(g.element_from_rows(&[vec![1, 1]]).is_err());
    }

    #[test]
    fn subgroup_closure_and_check() {
        let g = group("SL2:p=3");
        // (0 1; -1 0) has order 4
        let s = g.element_from_rows(&[vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(g.element_order(&s), 4);
        let sub = g.subgroup_closure(&[s]);
        assert_eq!(sub.len(), 4);
        assert!(g.is_subgroup(&sub));
        assert!(!g.is_subgroup(&sub[1..]));
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let g = group("SL2:p=5");
        let a = g.element_from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let mut acc = g.identity();
        for e in 0..10i64 {
            assert_eq!(g.power(&a, e).unwrap(), acc);
            acc = g.multiply(&acc, &a);
        }
        assert_eq!(g.power(&a, -3).unwrap(), g.invert(&g.power(&a, 3).unwrap()).unwrap());
    }
}
