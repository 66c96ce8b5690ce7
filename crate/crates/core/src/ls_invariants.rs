//! Graded algebras by structure constants and the cohomological lower bounds
//! for category and topological complexity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_capacity, domain, invalid, Result};
use crate::field::Field;
use crate::linalg::{kernel, row_reduce, solve};
use crate::DEFAULT_CAPACITY;

/// One line of a multiplication table: `left · right = Σ coeff · label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEntry<E> {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, E)>,
}

type Sparse<E> = Vec<(usize, E)>;

/// A finite-dimensional graded algebra presented by a basis and the products
/// of basis elements. Products not listed are zero, except that products with
/// the first degree-0 basis element default to the unit law.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    top_degree: usize,
    labels: Vec<String>,
    degrees: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    index: BTreeMap<String, usize>,
    table: Vec<Sparse<F::Elem>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(
        field: F,
        top_degree: usize,
        basis: Vec<Vec<String>>,
        products: Vec<ProductEntry<F::Elem>>,
    ) -> Result<Self> {
        if basis.len() > top_degree + 1 {
            return Err(invalid!("basis lists degrees above the top degree {top_degree}"));
        }
        if basis.first().is_none_or(Vec::is_empty) {
            return Err(invalid!("degree 0 needs a unit"));
        }
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut by_degree = vec![Vec::new(); top_degree + 1];
        let mut index = BTreeMap::new();
        for (d, names) in basis.into_iter().enumerate() {
            for name in names {
                if index.insert(name.clone(), labels.len()).is_some() {
                    return Err(invalid!("duplicate basis label {name}"));
                }
                by_degree[d].push(labels.len());
                labels.push(name);
                degrees.push(d);
            }
        }
        let dim = labels.len();
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| invalid!("unknown basis label {name}"));
        let mut given: BTreeMap<(usize, usize), BTreeMap<usize, F::Elem>> = BTreeMap::new();
        for entry in products {
            let slot = given.entry((lookup(&entry.left)?, lookup(&entry.right)?)).or_default();
            for (name, c) in entry.result {
                let i = lookup(&name)?;
                let sum = slot.get(&i).map_or(c.clone(), |prev| field.add(prev, &c));
                slot.insert(i, sum);
            }
        }
        let unit = by_degree[0][0];
        let mut table = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for (a, b) in [(unit, x), (x, unit)] {
                table[a * dim + b] = vec![(x, field.one())];
            }
        }
        for ((a, b), terms) in given {
            table[a * dim + b] = terms.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        }
        Ok(Self { field, top_degree, labels, degrees, by_degree, index, table })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_in(&self, d: usize) -> usize {
        self.by_degree.get(d).map_or(0, Vec::len)
    }

    /// Basis indices of degree `d`.
    pub fn basis_in(&self, d: usize) -> &[usize] {
        self.by_degree.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn unit_index(&self) -> usize {
        self.by_degree[0][0]
    }

    /// Highest degree with a nonzero basis element.
    pub fn top_nonzero_degree(&self) -> usize {
        (0..=self.top_degree).rev().find(|&d| self.dim_in(d) > 0).unwrap_or(0)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &[(usize, F::Elem)] {
        &self.table[a * self.dim() + b]
    }

    /// Product of sparse vectors, sorted by index with zeros dropped.
    pub fn mul_sparse(&self, u: &[(usize, F::Elem)], v: &[(usize, F::Elem)]) -> Sparse<F::Elem> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (a, x) in u {
            for (b, y) in v {
                let xy = f.mul(x, y);
                for (p, z) in self.basis_product(*a, *b) {
                    let term = f.mul(&xy, z);
                    let sum = acc.get(p).map_or(term.clone(), |prev| f.add(prev, &term));
                    acc.insert(*p, sum);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
    }

    pub fn basis_by_degree(&self) -> Vec<Vec<String>> {
        let top = self.top_nonzero_degree();
        (0..=top).map(|d| self.basis_in(d).iter().map(|&i| self.labels[i].clone()).collect()).collect()
    }

    /// All nonzero basis products, including the unit ones.
    pub fn product_entries(&self) -> Vec<ProductEntry<F::Elem>> {
        let dim = self.dim();
        let mut out = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let terms = self.basis_product(a, b);
                if !terms.is_empty() {
                    out.push(ProductEntry {
                        left: self.labels[a].clone(),
                        right: self.labels[b].clone(),
                        result: terms.iter().map(|(p, c)| (self.labels[*p].clone(), c.clone())).collect(),
                    });
                }
            }
        }
        out
    }

    /// Coordinates of a sparse vector restricted to degree `d`.
    fn local(&self, v: &[(usize, F::Elem)], d: usize) -> Vec<F::Elem> {
        let basis = self.basis_in(d);
        let mut out = vec![self.field.zero(); basis.len()];
        for (i, c) in v {
            if let Ok(pos) = basis.binary_search(i) {
                out[pos] = c.clone();
            }
        }
        out
    }

    fn global(&self, v: &[F::Elem], d: usize) -> Sparse<F::Elem> {
        self.basis_in(d).iter().zip(v).filter(|(_, c)| !self.field.is_zero(c)).map(|(&i, c)| (i, c.clone())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    DegreeZero { dim: usize },
    Unit { label: String },
    Homogeneity { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    Commutativity { a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraReport {
    /// The first [`STORED_ALGEBRA_VIOLATIONS`] violations.
    pub violations: Vec<AlgebraViolation>,
    pub total: usize,
}

pub const STORED_ALGEBRA_VIOLATIONS: usize = 64;

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, v: AlgebraViolation) {
        self.total += 1;
        if self.violations.len() < STORED_ALGEBRA_VIOLATIONS {
            self.violations.push(v);
        }
    }
}

/// Checks the unit, homogeneity, associativity and graded commutativity on
/// all basis tuples.
pub fn validate_algebra<F: Field>(a: &GradedAlgebra<F>) -> AlgebraReport {
    let f = a.field();
    let dim = a.dim();
    let mut report = AlgebraReport::default();
    if a.dim_in(0) != 1 {
        report.push(AlgebraViolation::DegreeZero { dim: a.dim_in(0) });
    }
    let unit = a.unit_index();
    let one = |i: usize| vec![(i, f.one())];
    for x in 0..dim {
        if a.basis_product(unit, x) != one(x) || a.basis_product(x, unit) != one(x) {
            report.push(AlgebraViolation::Unit { label: a.label(x).into() });
        }
    }
    let mut homogeneous = true;
    for x in 0..dim {
        for y in 0..dim {
            let d = a.degree(x) + a.degree(y);
            if a.basis_product(x, y).iter().any(|(p, _)| a.degree(*p) != d) {
                homogeneous = false;
                report.push(AlgebraViolation::Homogeneity { left: a.label(x).into(), right: a.label(y).into() });
            }
        }
    }
    for x in 0..dim {
        for y in 0..dim {
            let dxy = a.degree(x) + a.degree(y);
            if homogeneous && dxy > a.top_degree() {
                continue;
            }
            let xy = a.basis_product(x, y).to_vec();
            for z in 0..dim {
                if homogeneous && dxy + a.degree(z) > a.top_degree() {
                    continue;
                }
                let left = a.mul_sparse(&xy, &one(z));
                let right = a.mul_sparse(&one(x), a.basis_product(y, z));
                if left != right {
                    report.push(AlgebraViolation::Associativity {
                        a: a.label(x).into(),
                        b: a.label(y).into(),
                        c: a.label(z).into(),
                    });
                }
            }
        }
    }
    for x in 0..dim {
        for y in x..dim {
            let sign = f.sign(a.degree(x) % 2 == 1 && a.degree(y) % 2 == 1);
            let swapped: Sparse<F::Elem> =
                a.basis_product(y, x).iter().map(|(p, c)| (*p, f.mul(&sign, c))).collect();
            if a.basis_product(x, y) != swapped.as_slice() {
                report.push(AlgebraViolation::Commutativity { a: a.label(x).into(), b: a.label(y).into() });
            }
        }
    }
    report
}

/// A homogeneous subspace given by a row-reduced spanning set per degree.
type Graded<E> = Vec<Vec<Vec<E>>>;

fn reduce_span<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let pivots = row_reduce(f, &mut rows);
    rows.truncate(pivots.len());
    rows
}

/// Largest `k` with `I^k != 0`, where `I` is a homogeneous ideal contained
/// in positive degrees.
fn nilpotency_length<F: Field>(a: &GradedAlgebra<F>, ideal: &Graded<F::Elem>) -> usize {
    let f = a.field();
    let top = a.top_degree();
    let mut power = ideal.clone();
    let mut k = 0;
    while power.iter().any(|rows| !rows.is_empty()) {
        k += 1;
        let mut next: Graded<F::Elem> = vec![Vec::new(); top + 1];
        for (d1, rows) in power.iter().enumerate() {
            for p in rows {
                let p = a.global(p, d1);
                for (d2, gens) in ideal.iter().enumerate() {
                    if d1 + d2 > top {
                        break;
                    }
                    for g in gens {
                        let prod = a.mul_sparse(&p, &a.global(g, d2));
                        if !prod.is_empty() {
                            next[d1 + d2].push(a.local(&prod, d1 + d2));
                        }
                    }
                }
            }
        }
        power = next.into_iter().map(|rows| reduce_span(f, rows)).collect();
    }
    k
}

fn positive_ideal<F: Field>(a: &GradedAlgebra<F>) -> Graded<F::Elem> {
    let f = a.field();
    (0..=a.top_degree())
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            let n = a.dim_in(d);
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                .collect()
        })
        .collect()
}

/// Largest `k` such that some `k`-fold product of positive-degree elements
/// is nonzero.
pub fn cuplength<F: Field>(a: &GradedAlgebra<F>) -> usize {
    nilpotency_length(a, &positive_ideal(a))
}

/// Graded tensor square with `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`. The basis
/// element `a⊗b` is labelled `"a⊗b"`.
pub fn tensor_square<F: Field>(a: &GradedAlgebra<F>) -> GradedAlgebra<F> {
    tensor_square_inner(a).0
}

fn tensor_square_inner<F: Field>(a: &GradedAlgebra<F>) -> (GradedAlgebra<F>, Vec<(usize, usize)>) {
    let f = a.field().clone();
    let top = 2 * a.top_degree();
    let mut pairs = Vec::new();
    let mut basis = vec![Vec::new(); top + 1];
    for (d, slot) in basis.iter_mut().enumerate() {
        for d1 in 0..=d.min(a.top_degree()) {
            let d2 = d - d1;
            for &x in a.basis_in(d1) {
                for &y in a.basis_in(d2) {
                    slot.push(format!("{}⊗{}", a.label(x), a.label(y)));
                    pairs.push((x, y));
                }
            }
        }
    }
    while basis.len() > 1 && basis.last().is_some_and(Vec::is_empty) {
        basis.pop();
    }
    let dim = pairs.len();
    let position: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut table = vec![Vec::new(); dim * dim];
    for (i, &(x1, y1)) in pairs.iter().enumerate() {
        for (j, &(x2, y2)) in pairs.iter().enumerate() {
            let sign = f.sign(a.degree(y1) % 2 == 1 && a.degree(x2) % 2 == 1);
            let mut terms = BTreeMap::new();
            for (p, c1) in a.basis_product(x1, x2) {
                for (q, c2) in a.basis_product(y1, y2) {
                    let c = f.mul(&sign, &f.mul(c1, c2));
                    terms.insert(position[&(*p, *q)], c);
                }
            }
            table[i * dim + j] = terms.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        }
    }
    let labels: Vec<String> = basis.iter().flatten().cloned().collect();
    let degrees = pairs.iter().map(|&(x, y)| a.degree(x) + a.degree(y)).collect();
    let mut by_degree = vec![Vec::new(); top + 1];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        by_degree[a.degree(x) + a.degree(y)].push(i);
    }
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    (GradedAlgebra { field: f, top_degree: top, labels, degrees, by_degree, index, table }, pairs)
}

/// The kernel of multiplication `A⊗A -> A`, degreewise, inside the tensor
/// square.
#[derive(Debug, Clone)]
pub struct ZeroDivisors<F: Field> {
    pub square: GradedAlgebra<F>,
    ideal: Graded<F::Elem>,
}

impl<F: Field> ZeroDivisors<F> {
    pub fn dim_in(&self, d: usize) -> usize {
        self.ideal.get(d).map_or(0, Vec::len)
    }

    /// Whether `v`, given on the tensor-square basis, lies in the ideal.
    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        let sq = &self.square;
        let mut degrees: Vec<usize> = v.iter().map(|(i, _)| sq.degree(*i)).collect();
        degrees.dedup();
        degrees.iter().all(|&d| {
            let target = sq.local(v, d);
            let rows = &self.ideal[d];
            let cols = rows.len();
            let transposed: Vec<Vec<F::Elem>> =
                (0..target.len()).map(|k| rows.iter().map(|r| r[k].clone()).collect()).collect();
            solve(sq.field(), &transposed, cols, &target).is_some()
        })
    }
}

pub fn zero_divisors<F: Field>(a: &GradedAlgebra<F>, capacity: usize) -> Result<ZeroDivisors<F>> {
    let n = a.dim();
    check_capacity(n.saturating_mul(n).saturating_mul(n).saturating_mul(n), capacity)?;
    let (square, pairs) = tensor_square_inner(a);
    let f = a.field();
    let mut ideal = Vec::with_capacity(square.top_degree() + 1);
    for d in 0..=square.top_degree() {
        let cols = square.basis_in(d);
        let target_dim = a.dim_in(d);
        // multiplication matrix: rows indexed by the degree-d basis of A
        let mut rows = vec![vec![f.zero(); cols.len()]; target_dim];
        for (j, &t) in cols.iter().enumerate() {
            let (x, y) = pairs[t];
            for (p, c) in a.basis_product(x, y) {
                if let Ok(i) = a.basis_in(d).binary_search(p) {
                    rows[i][j] = f.add(&rows[i][j], c);
                }
            }
        }
        ideal.push(reduce_span(f, kernel(f, &rows, cols.len())));
    }
    Ok(ZeroDivisors { square, ideal })
}

/// Nilpotency length of the zero-divisor ideal; a lower bound for `tc`.
pub fn zero_divisor_cuplength<F: Field>(a: &GradedAlgebra<F>) -> Result<usize> {
    zero_divisor_cuplength_with(a, DEFAULT_CAPACITY)
}

/// As [`zero_divisor_cuplength`], refusing algebras whose tensor-square
/// table would exceed `capacity` entries.
pub fn zero_divisor_cuplength_with<F: Field>(a: &GradedAlgebra<F>, capacity: usize) -> Result<usize> {
    let z = zero_divisors(a, capacity)?;
    Ok(nilpotency_length(&z.square, &z.ideal))
}

pub fn delta_correction(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(domain!("delta correction needs n >= 1"));
    }
    Ok(usize::from(matches!(n, 1 | 3 | 7)))
}

/// `tc(RP^n) = imm - δ_n`, for a user-supplied immersion dimension.
pub fn tc_rp(n: usize, imm: usize) -> Result<usize> {
    let delta = delta_correction(n)?;
    if imm < n {
        return Err(domain!("immersion dimension {imm} is below the manifold dimension {n}"));
    }
    Ok(imm - delta)
}

/// `lower <= invariant <= upper`; `upper` is absent when no bound is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub invariant: &'static str,
    pub lower: usize,
    pub lower_source: &'static str,
    pub upper: Option<usize>,
    pub upper_source: Option<&'static str>,
}

impl Bound {
    /// The invariant's value when the bounds meet.
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub cuplength: usize,
    pub zcl: usize,
    pub dim: usize,
    pub cat: Bound,
    pub tc: Bound,
}

/// Externally supplied upper bound for `tc`, e.g. from [`tc_rp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TcData {
    pub upper: usize,
    pub source: &'static str,
}

/// Assembles `cuplength <= cat <= dim` and `zcl <= tc (<= upper)`.
pub fn bounds_report<F: Field>(a: &GradedAlgebra<F>, dim: usize, tc: Option<TcData>) -> Result<BoundsReport> {
    bounds_report_with(a, dim, tc, DEFAULT_CAPACITY)
}

pub fn bounds_report_with<F: Field>(
    a: &GradedAlgebra<F>,
    dim: usize,
    tc: Option<TcData>,
    capacity: usize,
) -> Result<BoundsReport> {
    let top = a.top_nonzero_degree();
    if dim < top {
        return Err(domain!("dimension {dim} is below the top nonzero degree {top}"));
    }
    let cuplength = cuplength(a);
    let zcl = zero_divisor_cuplength_with(a, capacity)?;
    if let Some(t) = tc {
        if t.upper < zcl {
            return Err(invalid!("supplied tc upper bound {} is below zcl = {zcl}", t.upper));
        }
    }
    Ok(BoundsReport {
        cuplength,
        zcl,
        dim,
        cat: Bound {
            invariant: "cat",
            lower: cuplength,
            lower_source: "cuplength",
            upper: Some(dim),
            upper_source: Some("dim"),
        },
        tc: Bound {
            invariant: "tc",
            lower: zcl,
            lower_source: "zcl",
            upper: tc.map(|t| t.upper),
            upper_source: tc.map(|t| t.source),
        },
    })
}

/// `F[x]/(x^{height+1})` with `|x| = degree`; basis `1, x, x^2, ...`.
pub fn truncated_polynomial<F: Field>(field: F, degree: usize, height: usize) -> Result<GradedAlgebra<F>> {
    if degree == 0 {
        return Err(domain!("generator degree must be positive"));
    }
    let name = |k: usize| match k {
        0 => String::from("1"),
        1 => String::from("x"),
        k => format!("x^{k}"),
    };
    let top = degree * height;
    let mut basis = vec![Vec::new(); top + 1];
    for k in 0..=height {
        basis[k * degree].push(name(k));
    }
    let mut products = Vec::new();
    for i in 1..=height {
        for j in 1..=height - i {
            products.push(ProductEntry { left: name(i), right: name(j), result: vec![(name(i + j), field.one())] });
        }
    }
    GradedAlgebra::new(field, top, basis, products)
}

/// Exterior algebra on `k` generators `x1..xk` of degree 1, with basis the
/// increasing monomials such as `x1x3`.
pub fn exterior_algebra<F: Field>(field: F, k: usize) -> Result<GradedAlgebra<F>> {
    exterior_algebra_graded(field, &vec![1; k])
}

/// Exterior algebra on generators of the given odd degrees.
pub fn exterior_algebra_graded<F: Field>(field: F, degrees: &[usize]) -> Result<GradedAlgebra<F>> {
    let k = degrees.len();
    if k > 16 {
        return Err(domain!("exterior algebra on {k} generators is too large"));
    }
    if degrees.iter().any(|d| d % 2 == 0) {
        return Err(domain!("exterior generators must have odd degree"));
    }
    let name = |mask: usize| -> String {
        if mask == 0 {
            return String::from("1");
        }
        (0..k).filter(|i| mask >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect()
    };
    let deg = |mask: usize| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum::<usize>();
    let top = degrees.iter().sum();
    let mut basis = vec![Vec::new(); top + 1];
    for mask in 0..1usize << k {
        basis[deg(mask)].push(name(mask));
    }
    let mut products = Vec::new();
    for a in 1..1usize << k {
        for b in 1..1usize << k {
            if a & b != 0 {
                continue;
            }
            // sign of sorting the concatenated generator lists
            let inversions: usize = (0..k).filter(|i| a >> i & 1 == 1).map(|i| (b & ((1 << i) - 1)).count_ones() as usize).sum();
            products.push(ProductEntry {
                left: name(a),
                right: name(b),
                result: vec![(name(a | b), field.sign(inversions % 2 == 1))],
            });
        }
    }
    GradedAlgebra::new(field, top, basis, products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn s(x: &str) -> String {
        String::from(x)
    }

    #[test]
    fn truncated_polynomials() {
        for n in 0..=10 {
            let a = truncated_polynomial(f2(), 1, n).unwrap();
            assert!(validate_algebra(&a).passed());
            assert_eq!(cuplength(&a), n);
        }
    }

    #[test]
    fn exterior_algebras() {
        for k in 0..=5 {
            let a = exterior_algebra(Rationals, k).unwrap();
            assert!(validate_algebra(&a).passed(), "{:?}", validate_algebra(&a).violations);
            assert_eq!(cuplength(&a), k);
        }
    }

    #[test]
    fn sign_rule_violation() {
        let q = Rationals;
        let basis = vec![vec![s("1")], vec![s("x"), s("y")], vec![s("xy")]];
        let products = vec![
            ProductEntry { left: s("x"), right: s("y"), result: vec![(s("xy"), q.one())] },
            ProductEntry { left: s("y"), right: s("x"), result: vec![(s("xy"), q.one())] },
        ];
        let a = GradedAlgebra::new(q, 2, basis, products).unwrap();
        let report = validate_algebra(&a);
        assert!(report.violations.contains(&AlgebraViolation::Commutativity { a: s("x"), b: s("y") }));
    }

    #[test]
    fn associativity_violation() {
        // x·x = y, x·y = 0, y·x = 0 over F_2 with |x| = 2, |y| = 4: fine.
        // make (x·x)·x = y·x = z but x·(x·x) = x·y = 0.
        let f = f2();
        let basis = vec![vec![s("1")], vec![], vec![s("x")], vec![], vec![s("y")], vec![], vec![s("z")]];
        let products = vec![
            ProductEntry { left: s("x"), right: s("x"), result: vec![(s("y"), 1)] },
            ProductEntry { left: s("y"), right: s("x"), result: vec![(s("z"), 1)] },
        ];
        let a = GradedAlgebra::new(f, 6, basis, products).unwrap();
        let report = validate_algebra(&a);
        assert!(report.violations.iter().any(|v| matches!(v, AlgebraViolation::Associativity { .. })));
    }

    #[test]
    fn trivial_algebra() {
        let a = truncated_polynomial(Rationals, 2, 0).unwrap();
        assert_eq!(cuplength(&a), 0);
        assert_eq!(zero_divisor_cuplength(&a).unwrap(), 0);
    }

    #[test]
    fn koszul_signs() {
        let q = Rationals;
        let a = exterior_algebra(q, 1).unwrap();
        let sq = tensor_square(&a);
        assert!(validate_algebra(&sq).passed());
        let i = |l: &str| sq.index_of(l).unwrap();
        assert_eq!(sq.basis_product(i("x1⊗1"), i("1⊗x1")), [(i("x1⊗x1"), q.one())]);
        assert_eq!(sq.basis_product(i("1⊗x1"), i("x1⊗1")), [(i("x1⊗x1"), q.from_i64(-1))]);
        let b = exterior_algebra(f2(), 1).unwrap();
        let sq2 = tensor_square(&b);
        let j = |l: &str| sq2.index_of(l).unwrap();
        assert_eq!(sq2.basis_product(j("1⊗x1"), j("x1⊗1")), [(j("x1⊗x1"), 1)]);
    }

    #[test]
    fn tensor_dimensions() {
        let a = truncated_polynomial(Rationals, 2, 3).unwrap();
        let sq = tensor_square(&a);
        for k in 0..=12 {
            let expected: usize = (0..=k).map(|i| a.dim_in(i) * a.dim_in(k - i)).sum();
            assert_eq!(sq.dim_in(k), expected);
        }
    }

    #[test]
    fn zero_divisor_examples() {
        let circle = exterior_algebra(Rationals, 1).unwrap();
        assert_eq!(zero_divisor_cuplength(&circle).unwrap(), 1);
        let sphere = truncated_polynomial(Rationals, 2, 1).unwrap();
        assert_eq!(zero_divisor_cuplength(&sphere).unwrap(), 2);
        let rp2 = truncated_polynomial(f2(), 1, 2).unwrap();
        assert_eq!(zero_divisor_cuplength(&rp2).unwrap(), 3);
    }

    /// Independent count for `F_2[x]/(x^{n+1})`: brute-force the nilpotency
    /// of `z = x⊗1 + 1⊗x` by binomial expansion mod 2.
    fn power_of_z_nonzero(n: usize, k: usize) -> bool {
        // z^k = Σ C(k, i) x^i ⊗ x^{k-i}; nonzero iff some odd C(k, i) has i, k-i <= n
        (0..=k).any(|i| i <= n && k - i <= n && (k & i) == i)
    }

    #[test]
    fn zcl_of_truncated_f2_matches_binomial_oracle() {
        for n in 1..=6 {
            let a = truncated_polynomial(f2(), 1, n).unwrap();
            let expected = (1..=2 * n).filter(|&k| power_of_z_nonzero(n, k)).max().unwrap();
            // the zero-divisor ideal over F_2 in one variable is generated by z
            assert_eq!(zero_divisor_cuplength(&a).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn f2_diagonal_classes_are_zero_divisors() {
        let a = truncated_polynomial(f2(), 1, 3).unwrap();
        let z = zero_divisors(&a, DEFAULT_CAPACITY).unwrap();
        for x in ["x", "x^2", "x^3"] {
            let v = vec![(z.square.index_of(&format!("{x}⊗1")).unwrap(), 1), (z.square.index_of(&format!("1⊗{x}")).unwrap(), 1)];
            assert!(z.contains(&v));
        }
        let not = vec![(z.square.index_of("x⊗1").unwrap(), 1)];
        assert!(!z.contains(&not));
    }

    #[test]
    fn tc_and_delta() {
        assert_eq!(delta_correction(3).unwrap(), 1);
        assert_eq!(delta_correction(2).unwrap(), 0);
        assert_eq!(delta_correction(7).unwrap(), 1);
        assert!(delta_correction(0).is_err());
        assert_eq!(tc_rp(1, 2).unwrap(), 1);
        assert_eq!(tc_rp(2, 3).unwrap(), 3);
        assert_eq!(tc_rp(7, 11).unwrap(), 10);
        assert!(tc_rp(3, 2).is_err());
    }

    #[test]
    fn bounds() {
        let rp4 = truncated_polynomial(f2(), 1, 4).unwrap();
        let r = bounds_report(&rp4, 4, None).unwrap();
        assert_eq!(r.cat.exact(), Some(4));
        assert!(bounds_report(&rp4, 3, None).is_err());
        let t3 = exterior_algebra(Rationals, 3).unwrap();
        assert_eq!(bounds_report(&t3, 3, None).unwrap().cat.exact(), Some(3));
        let s2 = truncated_polynomial(Rationals, 2, 1).unwrap();
        let r = bounds_report(&s2, 4, None).unwrap();
        assert_eq!((r.cat.lower, r.cat.upper, r.cat.exact()), (1, Some(4), None));
        let rp2 = truncated_polynomial(f2(), 1, 2).unwrap();
        let tc = TcData { upper: tc_rp(2, 3).unwrap(), source: "tc_rp" };
        assert_eq!(bounds_report(&rp2, 2, Some(tc)).unwrap().tc.exact(), Some(3));
        let bad = TcData { upper: 2, source: "user" };
        assert!(bounds_report(&rp2, 2, Some(bad)).is_err());
    }

    #[test]
    fn cuplength_of_square_doubles() {
        for n in 1..=6 {
            let a = truncated_polynomial(f2(), 1, n).unwrap();
            assert_eq!(cuplength(&tensor_square(&a)), 2 * n);
        }
    }

    proptest! {
        #[test]
        fn zcl_below_square_cuplength(n in 1usize..5, degree in 1usize..3, field in 0usize..2) {
            let (zcl, sq) = if field == 0 {
                let a = truncated_polynomial(f2(), degree, n).unwrap();
                (zero_divisor_cuplength(&a).unwrap(), cuplength(&tensor_square(&a)))
            } else {
                let a = truncated_polynomial(Rationals, 2 * degree, n).unwrap();
                (zero_divisor_cuplength(&a).unwrap(), cuplength(&tensor_square(&a)))
            };
            prop_assert!(zcl <= sq);
        }

        #[test]
        fn zcl_is_basis_order_invariant(k in 1usize..4, seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let a = exterior_algebra(PrimeField::new(3).unwrap(), k).unwrap();
            let mut basis = a.basis_by_degree();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for d in basis.iter_mut().skip(1) {
                d.shuffle(&mut rng);
            }
            let b = GradedAlgebra::new(*a.field(), a.top_degree(), basis, a.product_entries()).unwrap();
            prop_assert!(validate_algebra(&b).passed());
            prop_assert_eq!(zero_divisor_cuplength(&a).unwrap(), zero_divisor_cuplength(&b).unwrap());
        }
    }
}
