use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::{
    apply_boundary, contains, offset, prime_chart, BoundaryIndex, ChartDirection, PolytopeId,
    PolytopeKind,
};
use crate::error::{domain, Result};
use crate::rational::RationalVector;

/// A boundary cell containing a point, with the factor points mapping to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPreimage {
    pub cell: BoundaryIndex,
    pub factors: Vec<RationalVector>,
}

/// Every boundary cell of `K(n)` or `J(n)` whose image contains `point`.
///
/// Each face map is affine and the factor totals are fixed, so the preimage
/// is unique when it exists. Interior points give an empty list.
pub fn boundary_cell_locate(p: PolytopeId, point: &RationalVector) -> Result<Vec<CellPreimage>> {
    if !contains(p, point)? {
        return Err(domain!("{point} is not in {:?}({})", p.kind(), p.n()));
    }
    let point = match p.kind() {
        PolytopeKind::Assoc | PolytopeKind::Multipl => point.clone(),
        PolytopeKind::AssocPrime | PolytopeKind::MultiplPrime => {
            prime_chart(p, point, ChartDirection::FromPrime)?
        }
        _ => return Err(domain!("{:?} has no boundary cell structure", p.kind())),
    };
    let mut found = Vec::new();
    for cell in p.boundary_cells() {
        if let Some(factors) = preimage(&cell, point.coords()) {
            debug_assert_eq!(apply_boundary(&cell, &factors).ok().as_ref(), Some(&point));
            found.push(CellPreimage { cell, factors });
        }
    }
    Ok(found)
}

fn preimage(cell: &BoundaryIndex, x: &[BigRational]) -> Option<Vec<RationalVector>> {
    match *cell {
        BoundaryIndex::Assoc { k, r, s } => {
            let (outer, inner) = split_insert(k, s, x, &PolytopeId::assoc(s).ok()?.total());
            member(PolytopeId::assoc(r).ok()?, outer)
                .zip(member(PolytopeId::assoc(s).ok()?, inner))
                .map(|(o, i)| alloc::vec![o, i])
        }
        BoundaryIndex::MultK { k, r, s } => {
            let (outer, inner) = split_insert(k, s, x, &PolytopeId::assoc(s).ok()?.total());
            member(PolytopeId::multipl(r).ok()?, outer)
                .zip(member(PolytopeId::assoc(s).ok()?, inner))
                .map(|(o, i)| alloc::vec![o, i])
        }
        BoundaryIndex::MultJ { ref blocks } => {
            let weight = BigRational::one() - offset();
            let mut tau = Vec::with_capacity(blocks.len());
            let mut rhos = Vec::with_capacity(blocks.len() + 1);
            let mut start = 0;
            for &r in blocks {
                let block = &x[start..start + r];
                let total = PolytopeId::multipl(r).ok()?.total();
                let head: BigRational = block[..r - 1].iter().sum();
                let last = total - head;
                tau.push((&block[r - 1] - &last) / &weight);
                let mut rho = block[..r - 1].to_vec();
                rho.push(last);
                rhos.push(member(PolytopeId::multipl(r).ok()?, rho)?);
                start += r;
            }
            let mut factors = alloc::vec![member(PolytopeId::assoc(blocks.len()).ok()?, tau)?];
            factors.extend(rhos);
            Some(factors)
        }
    }
}

/// Inverts the block insertion at position `k` for an inner factor of length
/// `s` whose coordinates sum to `inner_total`.
fn split_insert(
    k: usize,
    s: usize,
    x: &[BigRational],
    inner_total: &BigRational,
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut inner = x[k - 1..k + s - 2].to_vec();
    let head: BigRational = inner.iter().sum();
    let last = inner_total - head;
    let mut outer = x[..k - 1].to_vec();
    outer.push(&x[k + s - 2] - &last);
    outer.extend_from_slice(&x[k + s - 1..]);
    inner.push(last);
    (outer, inner)
}

fn member(p: PolytopeId, coords: Vec<BigRational>) -> Option<RationalVector> {
    let v = RationalVector::new(coords).ok()?;
    contains(p, &v).ok()?.then_some(v)
}
