//! Finite monoids and groups given by multiplication tables.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, invalid, Result};

/// A finite unital magma: closed table with a two-sided unit.
///
/// Associativity is not part of the type so that non-associative tables can
/// be loaded and rejected by the operations that need it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<usize>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(invalid!("a monoid needs at least one element"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(invalid!("multiplication table must be {n} x {n}"));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(invalid!("table entry {bad} is not an element index"));
        }
        if unit >= n {
            return Err(invalid!("unit index {unit} out of range"));
        }
        let m = Self { labels, table: table.into_iter().flatten().collect(), unit };
        if let Some(g) = (0..n).find(|&g| m.mul(unit, g) != g || m.mul(g, unit) != g) {
            return Err(invalid!("element {} violates the unit law", m.labels[g]));
        }
        Ok(m)
    }

    /// Builds a table from a closure on indices `0..order`.
    pub fn from_fn(labels: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(labels, table, unit)
    }

    /// `Z/n` with elements `0..n` and addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain!("cyclic group of order 0"));
        }
        Self::from_fn((0..n).map(|i| format!("{i}")).collect(), 0, |a, b| (a + b) % n)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// Left-to-right product; the unit for an empty slice.
    pub fn product(&self, elements: &[usize]) -> usize {
        elements.iter().fold(self.unit, |acc, &g| self.mul(acc, g))
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    /// Two-sided inverses, if every element has one.
    fn inverses(&self) -> Option<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|g| (0..n).find(|&h| self.mul(g, h) == self.unit && self.mul(h, g) == self.unit))
            .collect()
    }

    pub fn is_group(&self) -> bool {
        self.is_associative() && self.inverses().is_some()
    }
}

/// A finite group: an associative monoid in which every element is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    monoid: FiniteMonoid,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(monoid: FiniteMonoid) -> Result<Self> {
        if let Some((a, b, c)) = monoid.associativity_failure() {
            return Err(invalid!("table is not associative at ({a}, {b}, {c})"));
        }
        let inverse = monoid.inverses().ok_or_else(|| invalid!("some element has no inverse"))?;
        Ok(Self { monoid, inverse })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(FiniteMonoid::cyclic(n)?)
    }

    /// The symmetric group on `degree` letters; elements are permutations in
    /// lexicographic order of their one-line notation, composed as functions
    /// (`(p q)(i) = p(q(i))`).
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 6 {
            return Err(domain!("symmetric group degree must be in 1..=6, got {degree}"));
        }
        let perms = permutations(degree);
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| char::from(b'0' + *d as u8)).collect())
            .collect();
        let lookup = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let monoid = FiniteMonoid::from_fn(labels, 0, |a, b| {
            let composed: Vec<usize> = (0..degree).map(|i| perms[a][perms[b][i]]).collect();
            lookup(&composed)
        })?;
        Self::new(monoid)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn unit(&self) -> usize {
        self.monoid.unit()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.monoid.mul(a, b)
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// The non-identity elements in index order.
    pub fn nonidentity(&self) -> Vec<usize> {
        (0..self.order()).filter(|&g| g != self.unit()).collect()
    }
}

fn permutations(degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(degree);
    let mut used = alloc::vec![false; degree];
    fn rec(degree: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == degree {
            out.push(current.clone());
            return;
        }
        for d in 0..degree {
            if !used[d] {
                used[d] = true;
                current.push(d);
                rec(degree, current, used, out);
                current.pop();
                used[d] = false;
            }
        }
    }
    rec(degree, &mut current, &mut used, &mut out);
    out
}

/// Checks that `images` defines a unital homomorphism `src -> dst`.
pub fn check_homomorphism(images: &[usize], src: &FiniteMonoid, dst: &FiniteMonoid) -> Result<()> {
    if images.len() != src.order() {
        return Err(invalid!("map has {} images for {} elements", images.len(), src.order()));
    }
    if let Some(&bad) = images.iter().find(|&&h| h >= dst.order()) {
        return Err(invalid!("image {bad} is not an element of the target"));
    }
    if images[src.unit()] != dst.unit() {
        return Err(invalid!("map does not preserve the unit"));
    }
    for a in 0..src.order() {
        for b in 0..src.order() {
            if images[src.mul(a, b)] != dst.mul(images[a], images[b]) {
                return Err(invalid!(
                    "f({}·{}) != f({})·f({})",
                    src.labels()[a],
                    src.labels()[b],
                    src.labels()[a],
                    src.labels()[b]
                ));
            }
        }
    }
    Ok(())
}
