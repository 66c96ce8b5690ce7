//! Exact verification of the composition identities between degeneracies and
//! face maps.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{boundary_index_sets, BoundaryIndex, FaceMaps, IndexSetKind, PointSampler, StandardMaps};
use crate::error::{domain, Result};
use crate::rational::RationalVector;

/// The three identity tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityTable {
    /// `s_j ∘ ∂_k` on `K(r) x K(s)`.
    AssocFace,
    /// `d_j ∘ δ_k` on `J(r) x K(s)`.
    MultFace,
    /// `d_j ∘ δ` on `K(t) x J(r_1) x ... x J(r_t)`.
    MultJoin,
}

impl IdentityTable {
    pub const ALL: [IdentityTable; 3] =
        [IdentityTable::AssocFace, IdentityTable::MultFace, IdentityTable::MultJoin];

    pub fn name(self) -> &'static str {
        match self {
            IdentityTable::AssocFace => "s_j∘∂_k",
            IdentityTable::MultFace => "d_j∘δ_k",
            IdentityTable::MultJoin => "d_j∘δ",
        }
    }

    /// Human readable condition and right-hand side of each row, 1-based.
    pub fn row_label(self, row: usize) -> &'static str {
        let rows: &[&str] = match self {
            IdentityTable::AssocFace => &[
                "j<k, r>2: ∂_{k-1}(s_j(ρ), σ)",
                "j=1, k=2, r=2: σ",
                "k≤j<k+s, r<n-1: ∂_k(ρ, s_{j-k+1}(σ))",
                "k≤j≤k+1, r=n-1: ρ",
                "k+s≤j≤n, r>2: ∂_k(s_{j-s+1}(ρ), σ)",
                "j=n, k=1, r=2: σ",
            ],
            IdentityTable::MultFace => &[
                "j<k: δ_{k-1}(d_j(ρ), σ)",
                "k≤j<k+s, r<n-1: δ_k(ρ, s_{j-k+1}(σ))",
                "k≤j≤k+1, r=n-1: ρ",
                "k+s≤j≤n: δ_k(d_{j-s+1}(ρ), σ)",
            ],
            IdentityTable::MultJoin => &[
                "r̂_{k-1}<j≤r̂_k, r_k>1: δ(τ; …, d_{j-r̂_{k-1}}(ρ_k), …)",
                "j=r̂_k, r_k=1, t>2: δ(s_k(τ); ρ_1, …, ρ̂_k, …, ρ_t)",
                "j=1, r_1=1, t=2: ρ_2",
                "j=n, r_2=1, t=2: ρ_1",
            ],
        };
        rows.get(row.wrapping_sub(1)).copied().unwrap_or("?")
    }
}

/// A sample on which the two sides differ (or one side failed to evaluate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: BoundaryIndex,
    pub j: usize,
    pub factors: Vec<RationalVector>,
    pub lhs: Result<RationalVector>,
    pub rhs: Result<RationalVector>,
}

/// Aggregate over every `(index, j)` falling under one table row at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub table: IdentityTable,
    pub row: usize,
    pub n: usize,
    pub checks: usize,
    pub mismatches: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn label(&self) -> &'static str {
        self.table.row_label(self.row)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n_max: usize,
    pub samples_per_case: usize,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    /// `(table, n, index, j)` combinations no row applies to.
    pub uncovered: Vec<(IdentityTable, usize, BoundaryIndex, usize)>,
}

impl IdentityReport {
    pub fn total_checks(&self) -> usize {
        self.cases.iter().map(|c| c.checks).sum()
    }

    pub fn total_mismatches(&self) -> usize {
        self.cases.iter().map(|c| c.mismatches).sum()
    }

    pub fn passed(&self) -> bool {
        self.uncovered.is_empty() && self.total_mismatches() == 0
    }
}

/// Checks every row of the three tables for all `n <= n_max`, on
/// `samples_per_case` random factor tuples per `(index, j)`.
pub fn verify_identities(n_max: usize, samples_per_case: usize, seed: u64) -> Result<IdentityReport> {
    verify_identities_with(&StandardMaps, n_max, samples_per_case, seed)
}

/// Like [`verify_identities`] with a caller supplied set of maps.
pub fn verify_identities_with<M: FaceMaps + ?Sized>(
    maps: &M,
    n_max: usize,
    samples_per_case: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if n_max < 3 {
        return Err(domain!("n_max must be at least 3, got {n_max}"));
    }
    if samples_per_case == 0 {
        return Err(domain!("samples_per_case must be positive"));
    }
    let mut sampler = PointSampler::new(seed);
    let mut cases: BTreeMap<(IdentityTable, usize, usize), CaseResult> = BTreeMap::new();
    let mut uncovered = Vec::new();

    for table in IdentityTable::ALL {
        for n in 2..=n_max {
            let family = match table {
                IdentityTable::AssocFace => IndexSetKind::A,
                IdentityTable::MultFace => IndexSetKind::APrime,
                IdentityTable::MultJoin => IndexSetKind::B,
            };
            for index in boundary_index_sets(family, n)? {
                for j in 1..=n {
                    let Some(row) = row_for(table, n, &index, j) else {
                        uncovered.push((table, n, index.clone(), j));
                        continue;
                    };
                    let entry = cases.entry((table, row, n)).or_insert_with(|| CaseResult {
                        table,
                        row,
                        n,
                        checks: 0,
                        mismatches: 0,
                        first_counterexample: None,
                    });
                    for _ in 0..samples_per_case {
                        let factors = sampler.sample_factors(&index)?;
                        let lhs = lhs(maps, table, &index, j, &factors);
                        let rhs = rhs(maps, row, table, &index, j, &factors);
                        entry.checks += 1;
                        let agree = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
                        if !agree {
                            entry.mismatches += 1;
                            if entry.first_counterexample.is_none() {
                                entry.first_counterexample = Some(Counterexample {
                                    index: index.clone(),
                                    j,
                                    factors,
                                    lhs,
                                    rhs,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(IdentityReport {
        n_max,
        samples_per_case,
        seed,
        cases: cases.into_values().collect(),
        uncovered,
    })
}

/// The first table row whose condition holds, 1-based.
pub(crate) fn row_for(table: IdentityTable, n: usize, index: &BoundaryIndex, j: usize) -> Option<usize> {
    rows_for(table, n, index, j).into_iter().next()
}

/// Every row whose condition holds; used to check the rows are disjoint.
pub(crate) fn rows_for(table: IdentityTable, n: usize, index: &BoundaryIndex, j: usize) -> Vec<usize> {
    let mut out = Vec::new();
    match (table, index) {
        (IdentityTable::AssocFace, &BoundaryIndex::Assoc { k, r, s }) => {
            let conds = [
                j < k && r > 2,
                j == 1 && k == 2 && r == 2,
                k <= j && j < k + s && r + 1 < n,
                k <= j && j <= k + 1 && r + 1 == n,
                k + s <= j && j <= n && r > 2,
                j == n && k == 1 && r == 2,
            ];
            out.extend(conds.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i + 1));
        }
        (IdentityTable::MultFace, &BoundaryIndex::MultK { k, r, s }) => {
            let conds = [
                j < k,
                k <= j && j < k + s && r + 1 < n,
                k <= j && j <= k + 1 && r + 1 == n,
                k + s <= j && j <= n,
            ];
            out.extend(conds.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i + 1));
        }
        (IdentityTable::MultJoin, BoundaryIndex::MultJ { blocks }) => {
            let t = blocks.len();
            let (block, _) = locate_block(blocks, j);
            let r_k = blocks[block];
            let conds = [
                r_k > 1,
                r_k == 1 && t > 2,
                j == 1 && blocks[0] == 1 && t == 2,
                j == n && blocks[1] == 1 && t == 2,
            ];
            out.extend(conds.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i + 1));
        }
        _ => {}
    }
    out
}

/// 0-based block containing position `j` (1-based) and the partial sum
/// `r̂_{k-1}` before it.
fn locate_block(blocks: &[usize], j: usize) -> (usize, usize) {
    let mut before = 0;
    for (i, &r) in blocks.iter().enumerate() {
        if j <= before + r {
            return (i, before);
        }
        before += r;
    }
    (blocks.len() - 1, before - blocks[blocks.len() - 1])
}

fn lhs<M: FaceMaps + ?Sized>(
    maps: &M,
    table: IdentityTable,
    index: &BoundaryIndex,
    j: usize,
    factors: &[RationalVector],
) -> Result<RationalVector> {
    let face = maps.apply_boundary(index, factors)?;
    match table {
        IdentityTable::AssocFace => maps.assoc_degeneracy(j, &face),
        IdentityTable::MultFace | IdentityTable::MultJoin => maps.mult_degeneracy(j, &face),
    }
}

fn rhs<M: FaceMaps + ?Sized>(
    maps: &M,
    row: usize,
    table: IdentityTable,
    index: &BoundaryIndex,
    j: usize,
    factors: &[RationalVector],
) -> Result<RationalVector> {
    match (table, index) {
        (IdentityTable::AssocFace, &BoundaryIndex::Assoc { k, s, .. }) => {
            let (rho, sigma) = (&factors[0], &factors[1]);
            match row {
                1 => maps.assoc_boundary(k - 1, &maps.assoc_degeneracy(j, rho)?, sigma),
                2 | 6 => Ok(sigma.clone()),
                3 => maps.assoc_boundary(k, rho, &maps.assoc_degeneracy(j + 1 - k, sigma)?),
                4 => Ok(rho.clone()),
                5 => maps.assoc_boundary(k, &maps.assoc_degeneracy(j + 1 - s, rho)?, sigma),
                _ => unreachable!(),
            }
        }
        (IdentityTable::MultFace, &BoundaryIndex::MultK { k, s, .. }) => {
            let (rho, sigma) = (&factors[0], &factors[1]);
            match row {
                1 => maps.mult_boundary_k(k - 1, &maps.mult_degeneracy(j, rho)?, sigma),
                2 => maps.mult_boundary_k(k, rho, &maps.assoc_degeneracy(j + 1 - k, sigma)?),
                3 => Ok(rho.clone()),
                4 => maps.mult_boundary_k(k, &maps.mult_degeneracy(j + 1 - s, rho)?, sigma),
                _ => unreachable!(),
            }
        }
        (IdentityTable::MultJoin, BoundaryIndex::MultJ { blocks }) => {
            let (tau, rhos) = factors.split_first().unwrap();
            let (block, before) = locate_block(blocks, j);
            match row {
                1 => {
                    let mut rhos = rhos.to_vec();
                    rhos[block] = maps.mult_degeneracy(j - before, &rhos[block])?;
                    maps.mult_boundary_join(tau, &rhos)
                }
                2 => {
                    let mut rhos = rhos.to_vec();
                    rhos.remove(block);
                    maps.mult_boundary_join(&maps.assoc_degeneracy(block + 1, tau)?, &rhos)
                }
                3 => Ok(rhos[1].clone()),
                4 => Ok(rhos[0].clone()),
                _ => unreachable!(),
            }
        }
        _ => unreachable!("table and index family always agree"),
    }
}
