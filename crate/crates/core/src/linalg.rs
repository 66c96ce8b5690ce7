//! Dense and sparse exact linear algebra: integer Smith normal form with
//! certificates, integer systems, and elimination over a [`Field`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::field::Field;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<i64>;
pub type BigMatrix = Matrix<BigInt>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, found: r.len() });
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Number of stored entries, for capacity checks.
    pub fn entries(&self) -> usize {
        self.data.len()
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T: Clone + Zero + CheckedMul + CheckedAdd> Matrix<T> {
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&prod).ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(T::zero(), |acc, (a, b)| {
                    a.checked_mul(b).and_then(|p| acc.checked_add(&p)).ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let p = a.checked_mul(other.get(k, l)).ok_or(Error::Overflow("kronecker product"))?;
                        out.set(i * other.rows + k, j * other.cols + l, p);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl IntMatrix {
    pub fn to_big(&self) -> BigMatrix {
        self.map(|&x| BigInt::from(x))
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative.
    pub diagonal: Vec<BigInt>,
    pub u: BigMatrix,
    pub u_inv: BigMatrix,
    pub v: BigMatrix,
    pub v_inv: BigMatrix,
}

struct SmithWork {
    a: BigMatrix,
    u: BigMatrix,
    u_inv: BigMatrix,
    v: BigMatrix,
    v_inv: BigMatrix,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                m.data.swap(i * m.cols + c, j * m.cols + c);
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows {
            ui.data.swap(r * ui.cols + i, r * ui.cols + j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                m.data.swap(r * m.cols + i, r * m.cols + j);
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols {
            vi.data.swap(i * vi.cols + c, j * vi.cols + c);
        }
    }

    /// `row_target += f·row_source`.
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let s = &m.data[source * m.cols + c] * f;
                if !s.is_zero() {
                    m.data[target * m.cols + c] += s;
                }
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows {
            let s = &ui.data[r * ui.cols + target] * f;
            if !s.is_zero() {
                ui.data[r * ui.cols + source] -= s;
            }
        }
    }

    /// `col_target += f·col_source`.
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                let s = &m.data[r * m.cols + source] * f;
                if !s.is_zero() {
                    m.data[r * m.cols + target] += s;
                }
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols {
            let s = &vi.data[target * vi.cols + c] * f;
            if !s.is_zero() {
                vi.data[source * vi.cols + c] -= s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let x = &mut m.data[i * m.cols + c];
                *x = -core::mem::take(x);
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows {
            let x = &mut ui.data[r * ui.cols + i];
            *x = -core::mem::take(x);
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }
}

impl SmithForm {
    pub fn compute(a: &BigMatrix) -> Self {
        let (m, n) = (a.rows, a.cols);
        let mut w = SmithWork {
            a: a.clone(),
            u: BigMatrix::identity(m),
            u_inv: BigMatrix::identity(m),
            v: BigMatrix::identity(n),
            v_inv: BigMatrix::identity(n),
        };
        for t in 0..m.min(n) {
            let Some((i, j)) = w.min_entry(t) else { break };
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            loop {
                let pivot = w.a.get(t, t).clone();
                let mut smaller: Option<(usize, usize)> = None;
                for i in t + 1..m {
                    if w.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = w.a.get(i, t).div_floor(&pivot);
                    w.add_row(i, t, &-q);
                    if !w.a.get(i, t).is_zero() {
                        smaller = Some((i, t));
                    }
                }
                for j in t + 1..n {
                    if w.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = w.a.get(t, j).div_floor(&pivot);
                    w.add_col(j, t, &-q);
                    if !w.a.get(t, j).is_zero() {
                        smaller = Some((t, j));
                    }
                }
                if let Some((i, j)) = smaller {
                    w.swap_rows(t, i);
                    w.swap_cols(t, j);
                    continue;
                }
                let stray = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a.get(i, j).is_multiple_of(&pivot)));
                match stray {
                    Some(i) => w.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if w.a.get(t, t).is_negative() {
                w.negate_row(t);
            }
        }
        let diagonal = (0..m.min(n)).map(|i| w.a.get(i, i).clone()).collect();
        Self { diagonal, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank()]
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors().iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Checks `U·A·V = D`, `U·U⁻¹ = I`, `V·V⁻¹ = I` and the divisibility chain.
    pub fn certify(&self, a: &BigMatrix) -> Result<()> {
        let (m, n) = (a.rows, a.cols);
        if self.u.rows != m || self.v.rows != n || self.diagonal.len() != m.min(n) {
            return Err(invalid!("transform shapes do not match a {m} x {n} matrix"));
        }
        let uav = self.u.mul(a)?.mul(&self.v)?;
        for i in 0..m {
            for j in 0..n {
                let expected = if i == j { self.diagonal[i].clone() } else { BigInt::zero() };
                if *uav.get(i, j) != expected {
                    return Err(invalid!("U·A·V differs from D at ({i}, {j})"));
                }
            }
        }
        if self.u.mul(&self.u_inv)? != BigMatrix::identity(m) {
            return Err(invalid!("U is not invertible over Z"));
        }
        if self.v.mul(&self.v_inv)? != BigMatrix::identity(n) {
            return Err(invalid!("V is not invertible over Z"));
        }
        let r = self.rank();
        if self.diagonal.iter().any(Signed::is_negative) || self.diagonal[r..].iter().any(|d| !d.is_zero()) {
            return Err(invalid!("diagonal must be nonnegative with zeros last"));
        }
        if self.diagonal[..r].windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(invalid!("diagonal violates the divisibility chain"));
        }
        Ok(())
    }
}

/// Sparse integer matrix with sorted rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(invalid!("entry ({i}, {j}) outside a {rows} x {cols} matrix"));
            }
            let slot = acc[i].entry(j).or_insert(0);
            *slot = slot.checked_add(v).ok_or(Error::Overflow("sparse assembly"))?;
        }
        let data = acc.into_iter().map(|row| row.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i].binary_search_by_key(&j, |&(c, _)| c).map_or(0, |k| self.data[i][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let mut triplets = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for &(k, a) in row {
                for &(j, b) in &other.data[k] {
                    triplets.push((i, j, a.checked_mul(b).ok_or(Error::Overflow("sparse product"))?));
                }
            }
        }
        Self::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: v.len() });
        }
        self.data
            .iter()
            .map(|row| {
                row.iter().try_fold(0i64, |acc, &(j, a)| {
                    a.checked_mul(v[j]).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("sparse product"))
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                data[j].push((i, v));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }
}

impl IntMatrix {
    pub fn to_sparse(&self) -> SparseMatrix {
        let data = (0..self.rows)
            .map(|i| self.row(i).iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, &v)| (j, v)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }
}

/// Rank and torsion of the cokernel-relevant part of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerInvariants {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Rank and torsion invariants of `a`.
///
/// Entries `±1` are eliminated first on a sparse copy (each such pivot
/// contributes an invariant factor 1); the residual matrix goes through a
/// certified dense [`SmithForm`].
pub fn integer_invariants(a: &SparseMatrix) -> Result<IntegerInvariants> {
    let mut s = SparseRows::from_sparse(a, |x| Some(BigInt::from(x)));
    let mut pivots = 0;
    while let Some((r, c)) = s.best_pivot(|x| x.abs().is_one()) {
        let u = s.rows[r][&c].clone();
        s.eliminate(r, c, |x| x * &u, |x, y| x - y, |x, f| x * f, &BigInt::zero(), Zero::is_zero);
        pivots += 1;
    }
    let (residual, _) = s.residual();
    let snf = SmithForm::compute(&residual);
    snf.certify(&residual)?;
    Ok(IntegerInvariants { rank: pivots + snf.rank(), torsion: snf.torsion() })
}

/// Sparse active-row store used by the elimination routines.
struct SparseRows<T> {
    rows: Vec<BTreeMap<usize, T>>,
    active: BTreeSet<usize>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl<T: Clone> SparseRows<T> {
    fn from_sparse(a: &SparseMatrix, conv: impl Fn(i64) -> Option<T>) -> Self {
        let mut col_rows = vec![BTreeSet::new(); a.cols];
        let rows = a
            .data
            .iter()
            .enumerate()
            .map(|(i, entries)| {
                let mut row = BTreeMap::new();
                for &(j, v) in entries {
                    if let Some(x) = conv(v) {
                        row.insert(j, x);
                        col_rows[j].insert(i);
                    }
                }
                row
            })
            .collect();
        Self { rows, active: (0..a.rows).collect(), col_rows }
    }

    /// Pivot minimizing a Markowitz-style fill estimate among entries
    /// accepted by `ok`.
    fn best_pivot(&self, ok: impl Fn(&T) -> bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &self.active {
            let len = self.rows[r].len();
            for (&c, x) in &self.rows[r] {
                if !ok(x) {
                    continue;
                }
                let cost = (len - 1) * (self.col_rows[c].len() - 1);
                if cost == 0 {
                    return Some((r, c));
                }
                if best.is_none_or(|(_, _, b)| cost < b) {
                    best = Some((r, c, cost));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// Clears column `c` from every other active row using row `r`, then
    /// retires row `r`. `factor(x)` turns the entry `x` of another row into
    /// the multiple of row `r` to subtract.
    #[allow(clippy::too_many_arguments)]
    fn eliminate(
        &mut self,
        r: usize,
        c: usize,
        factor: impl Fn(&T) -> T,
        sub: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &T) -> T,
        zero: &T,
        is_zero: impl Fn(&T) -> bool,
    ) {
        let pivot_row = core::mem::take(&mut self.rows[r]);
        self.active.remove(&r);
        for &j in pivot_row.keys() {
            self.col_rows[j].remove(&r);
        }
        let others: Vec<usize> = self.col_rows[c].iter().copied().collect();
        for o in others {
            let f = factor(&self.rows[o][&c]);
            for (&j, x) in &pivot_row {
                let delta = scale(x, &f);
                let row = &mut self.rows[o];
                let updated = match row.get(&j) {
                    Some(y) => sub(y, &delta),
                    None => sub(zero, &delta),
                };
                if is_zero(&updated) {
                    row.remove(&j);
                    self.col_rows[j].remove(&o);
                } else {
                    row.insert(j, updated);
                    self.col_rows[j].insert(o);
                }
            }
        }
    }

    /// Dense copy of the remaining nonzero rows and columns, with the
    /// original column indices.
    fn residual(&self) -> (Matrix<T>, Vec<usize>)
    where
        T: Zero,
    {
        let cols: Vec<usize> = (0..self.col_rows.len()).filter(|&j| !self.col_rows[j].is_empty()).collect();
        let rows: Vec<usize> = self.active.iter().copied().filter(|&r| !self.rows[r].is_empty()).collect();
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (jj, &j) in cols.iter().enumerate() {
                if let Some(x) = self.rows[r].get(&j) {
                    out.set(i, jj, x.clone());
                }
            }
        }
        (out, cols)
    }
}

/// Outcome of solving `A·y = b` over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerSolution {
    Solved(Vec<BigInt>),
    /// A functional `φ` with `φ·A ≡ 0` and `φ·b ≢ 0` modulo `modulus`
    /// (exactly, when `modulus` is zero).
    Obstructed { functional: Vec<BigInt>, modulus: BigInt },
}

impl IntegerSolution {
    pub fn is_solved(&self) -> bool {
        matches!(self, Self::Solved(_))
    }

    /// Re-checks the solution or the obstruction against `A` and `b`.
    pub fn verify(&self, a: &BigMatrix, b: &[BigInt]) -> Result<()> {
        match self {
            Self::Solved(y) => {
                if a.mul_vec(y)? != b {
                    return Err(invalid!("A·y != b"));
                }
            }
            Self::Obstructed { functional, modulus } => {
                let reduce = |x: BigInt| if modulus.is_zero() { x } else { x.mod_floor(modulus) };
                let phi = Matrix::from_rows(vec![functional.clone()], a.rows)?;
                let pa = phi.mul(a)?;
                if (0..a.cols).any(|j| !reduce(pa.get(0, j).clone()).is_zero()) {
                    return Err(invalid!("functional does not annihilate the image"));
                }
                let pb = phi.mul_vec(b)?;
                if reduce(pb[0].clone()).is_zero() {
                    return Err(invalid!("functional does not detect b"));
                }
            }
        }
        Ok(())
    }
}

/// Solves `A·y = b` exactly through a certified Smith normal form.
pub fn solve_integer(a: &BigMatrix, b: &[BigInt]) -> Result<IntegerSolution> {
    if b.len() != a.rows {
        return Err(Error::Dimension { expected: a.rows, found: b.len() });
    }
    let snf = SmithForm::compute(a);
    snf.certify(a)?;
    let c = snf.u.mul_vec(b)?;
    let r = snf.rank();
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, ci) in c.iter().enumerate() {
        let modulus = if i < r { snf.diagonal[i].clone() } else { BigInt::zero() };
        let ok = if i < r { ci.is_multiple_of(&modulus) } else { ci.is_zero() };
        if !ok {
            return Ok(IntegerSolution::Obstructed { functional: snf.u.row(i).to_vec(), modulus });
        }
        if i < r {
            z[i] = ci / &modulus;
        }
    }
    Ok(IntegerSolution::Solved(snf.v.mul_vec(&z)?))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !f.is_zero(&m[i][col])) else { continue };
        m.swap(row, p);
        let inv = f.inv(&m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || f.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of the matrix given by `rows`.
pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(f, &mut m).len()
}

/// Basis of `{x : A·x = 0}` for `A` given by rows of width `cols`.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![f.zero(); cols];
            x[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(&m[i][fc]);
            }
            x
        })
        .collect()
}

/// Some `x` with `A·x = b`, if one exists.
pub fn solve<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(f, &mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of an integer matrix reduced into the field `f`, by sparse
/// elimination.
pub fn rank_over<F: Field>(f: &F, a: &SparseMatrix) -> usize {
    let mut s = SparseRows::from_sparse(a, |x| {
        let y = f.from_i64(x);
        (!f.is_zero(&y)).then_some(y)
    });
    let mut rank = 0;
    while let Some((r, c)) = s.best_pivot(|_| true) {
        let inv = f.inv(&s.rows[r][&c]).expect("stored entries are nonzero");
        s.eliminate(r, c, |x| f.mul(x, &inv), |x, y| f.sub(x, y), |x, k| f.mul(x, k), &f.zero(), |x| f.is_zero(x));
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> BigMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols).unwrap().to_big()
    }

    #[test]
    fn smith_of_small_matrices() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = SmithForm::compute(&a);
        s.certify(&a).unwrap();
        assert_eq!(s.diagonal, [2, 6, 12].map(BigInt::from));
        let z = big(&[&[0, 0], &[0, 0]]);
        let s = SmithForm::compute(&z);
        s.certify(&z).unwrap();
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn certify_rejects_tampering() {
        let a = big(&[&[2, 0], &[0, 3]]);
        let mut s = SmithForm::compute(&a);
        assert_eq!(s.diagonal, [1, 6].map(BigInt::from));
        s.diagonal[1] = BigInt::from(5);
        assert!(s.certify(&a).is_err());
    }

    #[test]
    fn invariants_match_dense() {
        let a = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 2, 2], vec![1, 3, 2]], 3).unwrap();
        let inv = integer_invariants(&a.to_sparse()).unwrap();
        assert_eq!(inv, IntegerInvariants { rank: 2, torsion: vec![BigInt::from(2)] });
    }

    #[test]
    fn integer_solve() {
        let a = big(&[&[2, 0], &[0, 3]]);
        let ok = solve_integer(&a, &[BigInt::from(4), BigInt::from(-3)]).unwrap();
        assert_eq!(ok, IntegerSolution::Solved(vec![BigInt::from(2), BigInt::from(-1)]));
        let b = [BigInt::from(1), BigInt::from(0)];
        let bad = solve_integer(&a, &b).unwrap();
        assert!(!bad.is_solved());
        bad.verify(&a, &b).unwrap();
        let tall = big(&[&[1], &[1]]);
        let b = [BigInt::from(1), BigInt::from(2)];
        let bad = solve_integer(&tall, &b).unwrap();
        bad.verify(&tall, &b).unwrap();
    }

    #[test]
    fn field_elimination() {
        let q = Rationals;
        let rows: Vec<Vec<_>> = [[1, 2, 3], [2, 4, 6]].iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        assert_eq!(rank(&q, &rows), 1);
        let k = kernel(&q, &rows, 3);
        assert_eq!(k.len(), 2);
        let f2 = PrimeField::new(2).unwrap();
        let a = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(rank_over(&f2, &a.to_sparse()), 1);
        assert_eq!(rank_over(&Rationals, &a.to_sparse()), 2);
        let rows = vec![vec![1u64, 1], vec![0, 1]];
        assert_eq!(solve(&f2, &rows, 2, &[0, 1]), Some(vec![1, 1]));
        assert_eq!(solve(&f2, &[vec![1u64, 1]], 2, &[1]), Some(vec![1, 0]));
        assert_eq!(solve(&f2, &[vec![0u64, 0]], 2, &[1]), None);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c)
                .prop_map(move |d| IntMatrix::from_rows(d.chunks(c).map(<[i64]>::to_vec).collect(), c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn smith_is_certified(a in small_matrix()) {
            let b = a.to_big();
            let s = SmithForm::compute(&b);
            prop_assert!(s.certify(&b).is_ok());
        }

        #[test]
        fn sparse_and_dense_agree(a in small_matrix()) {
            let dense = SmithForm::compute(&a.to_big());
            let sparse = integer_invariants(&a.to_sparse()).unwrap();
            prop_assert_eq!(sparse.rank, dense.rank());
            prop_assert_eq!(sparse.torsion, dense.torsion());
            let q = rank_over(&Rationals, &a.to_sparse());
            prop_assert_eq!(q, dense.rank());
        }

        #[test]
        fn solutions_verify(a in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 6)) {
            let b = a.to_big();
            let rhs: Vec<BigInt> = (0..b.rows()).map(|i| BigInt::from(seed[i])).collect();
            let sol = solve_integer(&b, &rhs).unwrap();
            prop_assert!(sol.verify(&b, &rhs).is_ok());
        }

        #[test]
        fn sparse_round_trip(a in small_matrix(), c in small_matrix()) {
            let s = a.to_sparse();
            prop_assert_eq!(s.to_dense(), a.clone());
            prop_assert_eq!(s.transpose().to_dense(), a.transpose());
            if a.cols() == c.rows() {
                prop_assert_eq!(s.mul(&c.to_sparse()).unwrap().to_dense(), a.mul(&c).unwrap());
            }
        }
    }
}
