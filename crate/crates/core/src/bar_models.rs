//! Bar models of classifying spaces of finite groups: cell counts, chain and
//! cochain complexes with coefficients in a `G`-module, homology over `Z` and
//! `F_p`, cup products, cohomology rings and Berstein–Švarc powers.
//!
//! Cells of the normalized model in degree `k` are tuples `[g_1|...|g_k]` of
//! non-identity elements, enumerated lexicographically in the group's index
//! order. A chain or cochain coordinate is `tuple_index * rank(M) + i`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{check_capacity, domain, invalid, Error, Result};
use crate::field::PrimeField;
use crate::group::FiniteGroup;
use crate::linalg::{integer_invariants, kernel, rank, rank_over, row_reduce, solve, solve_integer};
use crate::linalg::{IntMatrix, IntegerSolution, SparseMatrix};
use crate::ls_invariants::{GradedAlgebra, ProductEntry};
use crate::DEFAULT_CAPACITY;

/// Nondegenerate cells per degree `0..=n` of `P^n(G)` and of `E^{n+1}(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarCellCounts {
    pub n: usize,
    pub projective: Vec<u128>,
    pub total: Vec<u128>,
}

pub fn bar_cell_counts(g: &FiniteGroup, n: usize) -> Result<BarCellCounts> {
    let order = g.order() as u128;
    let mut projective = Vec::with_capacity(n + 1);
    let mut total = Vec::with_capacity(n + 1);
    let mut p: u128 = 1;
    for k in 0..=n {
        if k > 0 {
            p = p.checked_mul(order - 1).ok_or(Error::Overflow("cell count"))?;
        }
        projective.push(p);
        total.push(p.checked_mul(order).ok_or(Error::Overflow("cell count"))?);
    }
    Ok(BarCellCounts { n, projective, total })
}

/// A free abelian group of finite rank with a left `G`-action by integer
/// matrices, indexed by group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GModule {
    pub fn new(g: &FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != g.order() {
            return Err(domain!("module has {} action matrices for a group of order {}", action.len(), g.order()));
        }
        if action.iter().any(|a| a.rows() != rank || a.cols() != rank) {
            return Err(domain!("action matrices must be {rank} x {rank}"));
        }
        if action[g.unit()] != IntMatrix::identity(rank) {
            return Err(domain!("the unit does not act as the identity"));
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                if action[g.mul(x, y)] != action[x].mul(&action[y])? {
                    return Err(domain!("action is not multiplicative at ({x}, {y})"));
                }
            }
        }
        Ok(Self { rank, action })
    }

    pub fn trivial(g: &FiniteGroup, rank: usize) -> Self {
        Self { rank, action: vec![IntMatrix::identity(rank); g.order()] }
    }

    /// Rank one module with `g` acting by `values[g]`.
    pub fn character(g: &FiniteGroup, values: &[i64]) -> Result<Self> {
        let action = values.iter().map(|&v| IntMatrix::from_rows(vec![vec![v]], 1)).collect::<Result<_>>()?;
        Self::new(g, 1, action)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Diagonal action on the tensor product, basis `i * rank(other) + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.action.len() != other.action.len() {
            return Err(domain!("modules over different groups"));
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.kron(b)).collect::<Result<_>>()?;
        Ok(Self { rank: self.rank * other.rank, action })
    }

    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        let mut out = Self { rank: 1, action: vec![IntMatrix::identity(1); self.action.len()] };
        for _ in 0..n {
            out = out.tensor(self)?;
        }
        Ok(out)
    }
}

/// `I(G)` on the basis `g - e` for `g != e`, in index order.
pub fn augmentation_ideal(g: &FiniteGroup) -> Result<GModule> {
    if g.order() < 2 {
        return Err(domain!("the augmentation ideal of the trivial group is zero"));
    }
    let basis = g.nonidentity();
    let pos = |x: usize| basis.iter().position(|&b| b == x);
    let r = basis.len();
    let action = (0..g.order())
        .map(|x| {
            // x·(h - e) = (xh - e) - (x - e)
            let mut m = IntMatrix::zeros(r, r);
            for (col, &h) in basis.iter().enumerate() {
                if let Some(i) = pos(g.mul(x, h)) {
                    m.set(i, col, m.get(i, col) + 1);
                }
                if let Some(i) = pos(x) {
                    m.set(i, col, m.get(i, col) - 1);
                }
            }
            m
        })
        .collect();
    GModule::new(g, r, action)
}

/// Tuples of group elements of a fixed length, indexed lexicographically.
struct Tuples {
    alphabet: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl Tuples {
    fn new(g: &FiniteGroup, normalized: bool) -> Self {
        let alphabet: Vec<usize> = if normalized { g.nonidentity() } else { (0..g.order()).collect() };
        let mut pos = vec![None; g.order()];
        for (i, &x) in alphabet.iter().enumerate() {
            pos[x] = Some(i);
        }
        Self { alphabet, pos }
    }

    fn count(&self, k: usize) -> Result<usize> {
        let k = u32::try_from(k).map_err(|_| Error::Overflow("tuple length"))?;
        self.alphabet.len().checked_pow(k).ok_or(Error::Overflow("tuple count"))
    }

    fn decode(&self, mut index: usize, k: usize) -> Vec<usize> {
        let a = self.alphabet.len();
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = self.alphabet[index % a];
            index /= a;
        }
        out
    }

    /// `None` when a tuple entry is outside the alphabet.
    fn encode(&self, tuple: &[usize]) -> Option<usize> {
        tuple.iter().try_fold(0usize, |acc, &x| Some(acc * self.alphabet.len() + self.pos[x]?))
    }
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An integer chain complex in degrees `lowest_degree ..`, with
/// `boundary(k) : C_k -> C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    lowest_degree: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[i]` has shape `ranks[i-1] x ranks[i]` (`0 x ranks[0]` for
    /// the lowest degree). Checks `∂∘∂ = 0`.
    pub fn new(lowest_degree: i64, ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(invalid!("{} boundaries for {} degrees", boundaries.len(), ranks.len()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let rows = if i == 0 { 0 } else { ranks[i - 1] };
            if b.rows() != rows || b.cols() != ranks[i] {
                return Err(invalid!("boundary in degree {} has the wrong shape", lowest_degree + i as i64));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i])?.is_zero() {
                return Err(invalid!("∂∘∂ != 0 at degree {}", lowest_degree + i as i64));
            }
        }
        Ok(Self { lowest_degree, ranks, boundaries })
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest_degree
    }

    pub fn top_degree(&self) -> i64 {
        self.lowest_degree + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |i| self.ranks[i])
    }

    pub fn boundary(&self, degree: i64) -> Option<&SparseMatrix> {
        self.slot(degree).map(|i| &self.boundaries[i])
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        usize::try_from(degree - self.lowest_degree).ok().filter(|&i| i < self.ranks.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(i, &r)| sign(i) * r as i64).sum::<i64>() * parity_sign(self.lowest_degree)
    }
}

fn parity_sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// An integer cochain complex in degrees `0..`, with
/// `differential(k) : C^k -> C^{k+1}` (zero out of the top degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    ranks: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn new(ranks: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self> {
        if differentials.len() != ranks.len() {
            return Err(invalid!("{} differentials for {} degrees", differentials.len(), ranks.len()));
        }
        for (k, d) in differentials.iter().enumerate() {
            let rows = ranks.get(k + 1).copied().unwrap_or(0);
            if d.rows() != rows || d.cols() != ranks[k] {
                return Err(invalid!("differential in degree {k} has the wrong shape"));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].mul(&differentials[k - 1])?.is_zero() {
                return Err(invalid!("d∘d != 0 at degree {k}"));
            }
        }
        Ok(Self { ranks, differentials })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, k: usize) -> Option<&SparseMatrix> {
        self.differentials.get(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Prime(PrimeField),
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Self::Prime(PrimeField::new(p)?))
    }
}

/// One homology group: `Z^rank ⊕ ⊕ Z/t` over the integers, or `F_p^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|h| h.degree == degree)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    fn truncate(mut self, top: i64) -> Self {
        self.groups.retain(|h| h.degree <= top);
        self
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { String::from("Z") } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

struct MapInvariants {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn map_invariants(m: &SparseMatrix, coeff: Coefficients) -> Result<MapInvariants> {
    Ok(match coeff {
        Coefficients::Integers => {
            let inv = integer_invariants(m)?;
            MapInvariants { rank: inv.rank, torsion: inv.torsion }
        }
        Coefficients::Prime(f) => MapInvariants { rank: rank_over(&f, m), torsion: Vec::new() },
    })
}

/// Homology of every degree of `c`. The top degree is the kernel of its
/// boundary, since nothing maps into it.
pub fn homology(c: &ChainComplex, coeff: Coefficients) -> Result<HomologyResult> {
    let inv = c.boundaries.iter().map(|b| map_invariants(b, coeff)).collect::<Result<Vec<_>>>()?;
    let groups = (0..c.ranks.len())
        .map(|i| {
            let incoming = inv.get(i + 1);
            HomologyGroup {
                degree: c.lowest_degree + i as i64,
                rank: c.ranks[i] - inv[i].rank - incoming.map_or(0, |m| m.rank),
                torsion: incoming.map_or(Vec::new(), |m| m.torsion.clone()),
            }
        })
        .collect();
    Ok(HomologyResult { coefficients: coeff, groups })
}

/// Cohomology of every degree of `c`.
pub fn cohomology(c: &CochainComplex, coeff: Coefficients) -> Result<HomologyResult> {
    let inv = c.differentials.iter().map(|d| map_invariants(d, coeff)).collect::<Result<Vec<_>>>()?;
    let groups = (0..c.ranks.len())
        .map(|k| {
            let incoming = k.checked_sub(1).map(|j| &inv[j]);
            HomologyGroup {
                degree: k as i64,
                rank: c.ranks[k] - inv[k].rank - incoming.map_or(0, |m| m.rank),
                torsion: incoming.map_or(Vec::new(), |m| m.torsion.clone()),
            }
        })
        .collect();
    Ok(HomologyResult { coefficients: coeff, groups })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarOptions {
    /// Drop tuples containing the unit.
    pub normalized: bool,
    /// Largest number of stored matrix entries allowed.
    pub capacity: usize,
}

impl Default for BarOptions {
    fn default() -> Self {
        Self { normalized: true, capacity: DEFAULT_CAPACITY }
    }
}

fn check_module(g: &FiniteGroup, m: &GModule) -> Result<()> {
    if m.action.len() != g.order() {
        return Err(domain!("module is not over a group of order {}", g.order()));
    }
    Ok(())
}

/// Normalized bar complex `M ⊗_G B(G)` in degrees `0..=n_max`.
pub fn bar_chain_complex(g: &FiniteGroup, m: &GModule, n_max: usize) -> Result<ChainComplex> {
    bar_chain_complex_with(g, m, n_max, BarOptions::default())
}

/// `∂(m⊗[g_1|...|g_k]) = g_1^{-1}m⊗[g_2|...] + Σ (-1)^i m⊗[...|g_i g_{i+1}|...]
/// + (-1)^k m⊗[g_1|...|g_{k-1}]`.
pub fn bar_chain_complex_with(g: &FiniteGroup, m: &GModule, n_max: usize, opts: BarOptions) -> Result<ChainComplex> {
    check_module(g, m)?;
    let r = m.rank;
    let tuples = Tuples::new(g, opts.normalized);
    let mut ranks = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let count = tuples.count(k)?.checked_mul(r).ok_or(Error::Overflow("chain rank"))?;
        check_capacity(count.saturating_mul(r + k), opts.capacity)?;
        ranks.push(count);
    }
    let mut boundaries = vec![SparseMatrix::zeros(0, ranks[0])];
    for k in 1..=n_max {
        let mut triplets = Vec::new();
        for t in 0..tuples.count(k)? {
            let tuple = tuples.decode(t, k);
            let mut push_face = |face: &[usize], block: &dyn Fn(usize, usize) -> i64| {
                if let Some(target) = tuples.encode(face) {
                    for c in 0..r {
                        for i in 0..r {
                            let v = block(i, c);
                            if v != 0 {
                                triplets.push((target * r + i, t * r + c, v));
                            }
                        }
                    }
                }
            };
            let twist = m.action(g.inv(tuple[0]));
            push_face(&tuple[1..], &|i, c| *twist.get(i, c));
            let mut merged = Vec::with_capacity(k - 1);
            for i in 1..k {
                merged.clear();
                merged.extend_from_slice(&tuple[..i - 1]);
                merged.push(g.mul(tuple[i - 1], tuple[i]));
                merged.extend_from_slice(&tuple[i + 1..]);
                push_face(&merged, &|a, b| if a == b { sign(i) } else { 0 });
            }
            push_face(&tuple[..k - 1], &|a, b| if a == b { sign(k) } else { 0 });
        }
        boundaries.push(SparseMatrix::from_triplets(ranks[k - 1], ranks[k], triplets)?);
    }
    ChainComplex::new(0, ranks, boundaries)
}

/// Bar cochain complex `Hom_G(B(G), M)` in degrees `0..=top`.
pub fn bar_cochain_complex(g: &FiniteGroup, m: &GModule, top: usize, opts: BarOptions) -> Result<CochainComplex> {
    check_module(g, m)?;
    let r = m.rank;
    let tuples = Tuples::new(g, opts.normalized);
    let mut ranks = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let count = tuples.count(k)?.checked_mul(r).ok_or(Error::Overflow("cochain rank"))?;
        check_capacity(count.saturating_mul(r + k + 1), opts.capacity)?;
        ranks.push(count);
    }
    let mut differentials = Vec::with_capacity(top + 1);
    for k in 0..top {
        differentials.push(coboundary_matrix(g, m, &tuples, k, ranks[k + 1], ranks[k])?);
    }
    differentials.push(SparseMatrix::zeros(0, ranks[top]));
    CochainComplex::new(ranks, differentials)
}

/// `δf(g_1..g_{k+1}) = g_1·f(g_2..) + Σ_{i=1}^{k} (-1)^i f(..g_i g_{i+1}..)
/// + (-1)^{k+1} f(g_1..g_k)`.
fn coboundary_matrix(g: &FiniteGroup, m: &GModule, tuples: &Tuples, k: usize, rows: usize, cols: usize) -> Result<SparseMatrix> {
    let r = m.rank;
    let mut triplets = Vec::new();
    for t in 0..tuples.count(k + 1)? {
        let tuple = tuples.decode(t, k + 1);
        let mut push_term = |source: &[usize], block: &dyn Fn(usize, usize) -> i64| {
            if let Some(s) = tuples.encode(source) {
                for i in 0..r {
                    for j in 0..r {
                        let v = block(i, j);
                        if v != 0 {
                            triplets.push((t * r + i, s * r + j, v));
                        }
                    }
                }
            }
        };
        let act = m.action(tuple[0]);
        push_term(&tuple[1..], &|i, j| *act.get(i, j));
        let mut merged = Vec::with_capacity(k);
        for i in 1..=k {
            merged.clear();
            merged.extend_from_slice(&tuple[..i - 1]);
            merged.push(g.mul(tuple[i - 1], tuple[i]));
            merged.extend_from_slice(&tuple[i + 1..]);
            push_term(&merged, &|a, b| if a == b { sign(i) } else { 0 });
        }
        push_term(&tuple[..k], &|a, b| if a == b { sign(k + 1) } else { 0 });
    }
    SparseMatrix::from_triplets(rows, cols, triplets)
}

/// `H_k(G; M)` for `k <= n_max`, from the bar complex through `n_max + 1`.
pub fn group_homology(g: &FiniteGroup, m: &GModule, n_max: usize, coeff: Coefficients, opts: BarOptions) -> Result<HomologyResult> {
    let c = bar_chain_complex_with(g, m, n_max + 1, opts)?;
    Ok(homology(&c, coeff)?.truncate(n_max as i64))
}

/// `H^k(G; M)` for `k <= n_max`, from cochains through `n_max + 1`.
pub fn group_cohomology(g: &FiniteGroup, m: &GModule, n_max: usize, coeff: Coefficients, opts: BarOptions) -> Result<HomologyResult> {
    let c = bar_cochain_complex(g, m, n_max + 1, opts)?;
    Ok(cohomology(&c, coeff)?.truncate(n_max as i64))
}

/// Augmented simplicial chain complex of the `(n+1)`-fold join of the
/// discrete set `G`, lowest degree `-1`. A `k`-simplex picks one element in
/// each of `k+1` distinct join factors.
pub fn join_complex(g: &FiniteGroup, n: usize, capacity: usize) -> Result<ChainComplex> {
    let factors = n + 1;
    if factors > 20 {
        return Err(domain!("join of {factors} factors is too large"));
    }
    let order = g.order();
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new(); factors + 1];
    let mut subset_rank = vec![0usize; 1 << factors];
    for (mask, rank) in subset_rank.iter_mut().enumerate() {
        let size = mask.count_ones() as usize;
        *rank = subsets[size].len();
        subsets[size].push(mask);
    }
    let choices = |size: usize| order.checked_pow(size as u32).ok_or(Error::Overflow("join simplices"));
    let mut ranks = Vec::with_capacity(factors + 1);
    for (size, subset) in subsets.iter().enumerate() {
        let count = subset.len().checked_mul(choices(size)?).ok_or(Error::Overflow("join simplices"))?;
        check_capacity(count.saturating_mul(size.max(1)), capacity)?;
        ranks.push(count);
    }
    let mut boundaries = vec![SparseMatrix::zeros(0, 1)];
    for size in 1..=factors {
        let per = choices(size)?;
        let per_face = choices(size - 1)?;
        let mut triplets = Vec::with_capacity(ranks[size] * size);
        for (s_idx, &mask) in subsets[size].iter().enumerate() {
            let bits: Vec<usize> = (0..factors).filter(|b| mask >> b & 1 == 1).collect();
            for code in 0..per {
                let mut digits = vec![0; size];
                let mut c = code;
                for d in digits.iter_mut().rev() {
                    *d = c % order;
                    c /= order;
                }
                let col = s_idx * per + code;
                for (i, bit) in bits.iter().enumerate() {
                    let face_mask = mask & !(1 << bit);
                    let face_code = digits.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |acc, (_, &d)| acc * order + d);
                    triplets.push((subset_rank[face_mask] * per_face + face_code, col, sign(i)));
                }
            }
        }
        boundaries.push(SparseMatrix::from_triplets(ranks[size - 1], ranks[size], triplets)?);
    }
    ChainComplex::new(-1, ranks, boundaries)
}

/// Reduced integral homology of the `(n+1)`-fold join of `G`.
pub fn join_complex_homology(g: &FiniteGroup, n: usize) -> Result<HomologyResult> {
    join_complex_homology_with(g, n, DEFAULT_CAPACITY)
}

pub fn join_complex_homology_with(g: &FiniteGroup, n: usize, capacity: usize) -> Result<HomologyResult> {
    homology(&join_complex(g, n, capacity)?, Coefficients::Integers)
}

/// A normalized cochain of degree `k` with values in a module of rank
/// `rank`: one value vector per non-identity tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub rank: usize,
    pub values: Vec<i64>,
}

impl Cochain {
    pub fn zero(g: &FiniteGroup, degree: usize, rank: usize) -> Result<Self> {
        let n = Tuples::new(g, true).count(degree)?.checked_mul(rank).ok_or(Error::Overflow("cochain size"))?;
        Ok(Self { degree, rank, values: vec![0; n] })
    }

    pub fn from_values(g: &FiniteGroup, degree: usize, rank: usize, values: Vec<i64>) -> Result<Self> {
        let expected = Self::zero(g, degree, rank)?.values.len();
        if values.len() != expected {
            return Err(Error::Dimension { expected, found: values.len() });
        }
        Ok(Self { degree, rank, values })
    }

    /// Value on the tuple with index `t`.
    pub fn value(&self, t: usize) -> &[i64] {
        &self.values[t * self.rank..(t + 1) * self.rank]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// The normalized coboundary `δu` with coefficients in `m`.
pub fn coboundary(g: &FiniteGroup, m: &GModule, u: &Cochain) -> Result<Cochain> {
    check_module(g, m)?;
    if u.rank != m.rank {
        return Err(domain!("cochain rank {} does not match the module rank {}", u.rank, m.rank));
    }
    let tuples = Tuples::new(g, true);
    let rows = tuples.count(u.degree + 1)? * m.rank;
    let d = coboundary_matrix(g, m, &tuples, u.degree, rows, u.values.len())?;
    Ok(Cochain { degree: u.degree + 1, rank: m.rank, values: d.mul_vec(&u.values)? })
}

/// An equivariant bilinear map `M ⊗ N -> P`, as a matrix from the Kronecker
/// basis `i * rank(N) + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    left_rank: usize,
    right_rank: usize,
    matrix: IntMatrix,
}

impl Pairing {
    pub fn new(left: &GModule, right: &GModule, out: &GModule, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != out.rank || matrix.cols() != left.rank * right.rank {
            return Err(domain!("pairing matrix has the wrong shape"));
        }
        let both = left.tensor(right)?;
        if out.action.len() != both.action.len() {
            return Err(domain!("modules over different groups"));
        }
        for (a, c) in both.action.iter().zip(&out.action) {
            if matrix.mul(a)? != c.mul(&matrix)? {
                return Err(domain!("pairing is not equivariant"));
            }
        }
        Ok(Self { left_rank: left.rank, right_rank: right.rank, matrix })
    }

    /// The identity `M ⊗ N -> M ⊗ N`.
    pub fn tensor(left: &GModule, right: &GModule) -> Self {
        let n = left.rank * right.rank;
        Self { left_rank: left.rank, right_rank: right.rank, matrix: IntMatrix::identity(n) }
    }

    pub fn out_rank(&self) -> usize {
        self.matrix.rows()
    }
}

/// Alexander–Whitney cup product
/// `(u⌣v)(g_1..g_{p+q}) = P(u(g_1..g_p) ⊗ (g_1⋯g_p)·v(g_{p+1}..g_{p+q}))`,
/// where `right` is the coefficient module of `v`.
pub fn cup_product(g: &FiniteGroup, u: &Cochain, v: &Cochain, right: &GModule, pairing: &Pairing) -> Result<Cochain> {
    check_module(g, right)?;
    if u.rank != pairing.left_rank || v.rank != pairing.right_rank || right.rank != v.rank {
        return Err(domain!("cochain ranks do not match the pairing"));
    }
    let (p, q) = (u.degree, v.degree);
    let tuples = Tuples::new(g, true);
    let suffixes = tuples.count(q)?;
    let mut out = Cochain::zero(g, p + q, pairing.out_rank())?;
    let ov = |e: Option<i64>| e.ok_or(Error::Overflow("cup product"));
    for t in 0..tuples.count(p + q)? {
        let tuple = tuples.decode(t, p + q);
        let (pre, post) = (t / suffixes, t % suffixes);
        let a = u.value(pre);
        let b = right.action(g.monoid().product(&tuple[..p])).mul_vec(v.value(post))?;
        let mut ab = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in &b {
                ab.push(ov(x.checked_mul(*y))?);
            }
        }
        let value = pairing.matrix.mul_vec(&ab)?;
        out.values[t * out.rank..(t + 1) * out.rank].copy_from_slice(&value);
    }
    Ok(out)
}

/// Mod-`p` cohomology ring through degree `n_max`. Basis labels are `1` and
/// `h{k}_{i}`; products come from cup products of chosen cocycle
/// representatives.
pub fn cohomology_ring(g: &FiniteGroup, p: u64, n_max: usize) -> Result<GradedAlgebra<PrimeField>> {
    cohomology_ring_with(g, p, n_max, DEFAULT_CAPACITY)
}

pub fn cohomology_ring_with(g: &FiniteGroup, p: u64, n_max: usize, capacity: usize) -> Result<GradedAlgebra<PrimeField>> {
    if n_max < 1 {
        return Err(domain!("cohomology ring needs n_max >= 1"));
    }
    let f = PrimeField::new(p)?;
    let trivial = GModule::trivial(g, 1);
    let c = bar_cochain_complex(g, &trivial, n_max + 1, BarOptions { normalized: true, capacity })?;
    let dense = |m: &SparseMatrix| -> Vec<Vec<u64>> {
        (0..m.rows())
            .map(|i| {
                let mut row = vec![0u64; m.cols()];
                for &(j, v) in m.row(i) {
                    row[j] = f.reduce(v);
                }
                row
            })
            .collect()
    };
    // per degree: representatives, then a basis of coboundaries
    let mut reps: Vec<Vec<Vec<u64>>> = Vec::with_capacity(n_max + 1);
    let mut coboundaries: Vec<Vec<Vec<u64>>> = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let dim = c.ranks()[k];
        let cocycles = kernel(&f, &dense(&c.differentials[k]), dim);
        let mut span = match k {
            0 => Vec::new(),
            _ => {
                let mut b = dense(&c.differentials[k - 1].transpose());
                let pivots = row_reduce(&f, &mut b);
                b.truncate(pivots.len());
                b
            }
        };
        coboundaries.push(span.clone());
        let mut chosen = Vec::new();
        for z in cocycles {
            span.push(z.clone());
            if rank(&f, &span) == span.len() {
                chosen.push(z);
            } else {
                span.pop();
            }
        }
        reps.push(chosen);
    }
    let label = |k: usize, i: usize| if k == 0 { String::from("1") } else { format!("h{k}_{i}") };
    let basis: Vec<Vec<String>> = reps.iter().enumerate().map(|(k, r)| (0..r.len()).map(|i| label(k, i)).collect()).collect();
    if basis[0].len() != 1 {
        return Err(invalid!("H^0 is not one-dimensional"));
    }
    let lift = |k: usize, v: &[u64]| Cochain { degree: k, rank: 1, values: v.iter().map(|&x| x as i64).collect() };
    let pairing = Pairing::tensor(&trivial, &trivial);
    let mut products = Vec::new();
    for i in 1..=n_max {
        for j in 1..=n_max - i {
            let k = i + j;
            // columns: representatives, then coboundaries
            let cols: Vec<&Vec<u64>> = reps[k].iter().chain(&coboundaries[k]).collect();
            let system: Vec<Vec<u64>> = (0..c.ranks()[k]).map(|row| cols.iter().map(|col| col[row]).collect()).collect();
            for (a, x) in reps[i].iter().enumerate() {
                for (b, y) in reps[j].iter().enumerate() {
                    let cup = cup_product(g, &lift(i, x), &lift(j, y), &trivial, &pairing)?;
                    let target: Vec<u64> = cup.values.iter().map(|&v| f.reduce(v)).collect();
                    let coords = solve(&f, &system, cols.len(), &target).ok_or_else(|| invalid!("cup product is not a cocycle"))?;
                    let result: Vec<(String, u64)> = coords[..reps[k].len()]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(idx, &c)| (label(k, idx), c))
                        .collect();
                    products.push(ProductEntry { left: label(i, a), right: label(j, b), result });
                }
            }
        }
    }
    GradedAlgebra::new(f, n_max, basis, products)
}

/// `b^n` and the decision whether it is a coboundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BersteinSvarcPower {
    pub n: usize,
    /// `b^n` with values in `I(G)^{⊗n}`.
    pub cochain: Cochain,
    /// A preimage under `δ` when `b^n` vanishes in cohomology, otherwise a
    /// functional detecting it.
    pub witness: IntegerSolution,
}

impl BersteinSvarcPower {
    pub fn nonzero(&self) -> bool {
        !self.witness.is_solved()
    }

    /// Re-checks the witness against the coboundary matrix.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        let module = augmentation_ideal(g)?.tensor_power(self.n)?;
        let tuples = Tuples::new(g, true);
        let cols = tuples.count(self.n - 1)? * module.rank;
        let d = coboundary_matrix(g, &module, &tuples, self.n - 1, self.cochain.values.len(), cols)?;
        let b: Vec<BigInt> = self.cochain.values.iter().map(|&v| BigInt::from(v)).collect();
        self.witness.verify(&d.to_dense().to_big(), &b)
    }
}

/// Cocycle `b(g) = g - e` in `C^1(G; I(G))`.
pub fn berstein_svarc_class(g: &FiniteGroup) -> Result<Cochain> {
    let basis = g.nonidentity();
    let r = basis.len();
    let mut c = Cochain::zero(g, 1, r)?;
    for t in 0..r {
        c.values[t * r + t] = 1;
    }
    Ok(c)
}

pub fn berstein_svarc_power(g: &FiniteGroup, n: usize) -> Result<BersteinSvarcPower> {
    berstein_svarc_power_with(g, n, DEFAULT_CAPACITY)
}

/// Computes `b^n` by iterated cup products and solves `δy = b^n` over `Z`.
pub fn berstein_svarc_power_with(g: &FiniteGroup, n: usize, capacity: usize) -> Result<BersteinSvarcPower> {
    if n < 1 {
        return Err(domain!("Berstein–Švarc power needs n >= 1"));
    }
    let ideal = augmentation_ideal(g)?;
    let tuples = Tuples::new(g, true);
    let r = ideal.rank.checked_pow(n as u32).ok_or(Error::Overflow("module rank"))?;
    let rows = tuples.count(n)?.checked_mul(r).ok_or(Error::Overflow("cochain size"))?;
    let cols = tuples.count(n - 1)?.checked_mul(r).ok_or(Error::Overflow("cochain size"))?;
    check_capacity(rows.saturating_mul(cols), capacity)?;
    let b = berstein_svarc_class(g)?;
    let mut power = b.clone();
    let mut module = ideal.clone();
    for _ in 1..n {
        let pairing = Pairing::tensor(&module, &ideal);
        power = cup_product(g, &power, &b, &ideal, &pairing)?;
        module = module.tensor(&ideal)?;
    }
    let next_rows = tuples.count(n + 1)?.saturating_mul(r);
    check_capacity(next_rows.saturating_mul(r + n + 1), capacity)?;
    let d_next = coboundary_matrix(g, &module, &tuples, n, next_rows, rows)?;
    if d_next.mul_vec(&power.values)?.iter().any(|&v| v != 0) {
        return Err(invalid!("b^{n} is not a cocycle"));
    }
    let d = coboundary_matrix(g, &module, &tuples, n - 1, rows, cols)?.to_dense().to_big();
    let target: Vec<BigInt> = power.values.iter().map(|&v| BigInt::from(v)).collect();
    let witness = solve_integer(&d, &target)?;
    witness.verify(&d, &target)?;
    Ok(BersteinSvarcPower { n, cochain: power, witness })
}
