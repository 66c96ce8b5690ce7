use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};

/// Which index family to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSetKind {
    /// `A(n)`: faces `K(r) x K(s) -> K(n)`.
    A,
    /// `A'(n)`: faces `J(r) x K(s) -> J(n)`.
    APrime,
    /// `B(n)`: faces `K(t) x J(r_1) x ... x J(r_t) -> J(n)`.
    B,
}

/// A boundary cell of `K(n)` or `J(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryIndex {
    /// `(k, r, s)` in `A(n)`.
    Assoc { k: usize, r: usize, s: usize },
    /// `(k, r, s)` in `A'(n)`.
    MultK { k: usize, r: usize, s: usize },
    /// `(t; r_1, ..., r_t)` in `B(n)`; `t` is the number of blocks.
    MultJ { blocks: Vec<usize> },
}

impl BoundaryIndex {
    /// Dimension index of the ambient polytope.
    pub fn n(&self) -> usize {
        match self {
            BoundaryIndex::Assoc { r, s, .. } | BoundaryIndex::MultK { r, s, .. } => r + s - 1,
            BoundaryIndex::MultJ { blocks } => blocks.iter().sum(),
        }
    }

    pub fn family(&self) -> IndexSetKind {
        match self {
            BoundaryIndex::Assoc { .. } => IndexSetKind::A,
            BoundaryIndex::MultK { .. } => IndexSetKind::APrime,
            BoundaryIndex::MultJ { .. } => IndexSetKind::B,
        }
    }

    /// Checks membership in `A(n)`, `A'(n)` or `B(n)`.
    pub fn validate(&self) -> Result<()> {
        match *self {
            BoundaryIndex::Assoc { k, r, s } => {
                let n = (r + s).saturating_sub(1);
                if !(1 <= k && k <= r && 2 <= s && s < n) {
                    return Err(domain!("({k},{r},{s}) is not in A({n})"));
                }
            }
            BoundaryIndex::MultK { k, r, s } => {
                let n = (r + s).saturating_sub(1);
                if !(1 <= k && k <= r && 2 <= s && s <= n) {
                    return Err(domain!("({k},{r},{s}) is not in A'({n})"));
                }
            }
            BoundaryIndex::MultJ { ref blocks } => {
                let n: usize = blocks.iter().sum();
                let t = blocks.len();
                if !(2 <= t && t <= n && blocks.iter().all(|&r| 1 <= r && r < n)) {
                    return Err(domain!("(t={t}; {blocks:?}) is not in B({n})"));
                }
            }
        }
        Ok(())
    }
}

/// Enumerates `A(n)` (`n >= 2`), `A'(n)` or `B(n)` (`n >= 1`).
///
/// `A(n)` and `A'(n)` come ordered by `r`, then `k`; `B(n)` by `t`, then the
/// block sizes lexicographically.
pub fn boundary_index_sets(kind: IndexSetKind, n: usize) -> Result<Vec<BoundaryIndex>> {
    let min = if kind == IndexSetKind::A { 2 } else { 1 };
    if n < min {
        return Err(domain!("{kind:?} index set needs n >= {min}, got {n}"));
    }
    let mut out = Vec::new();
    match kind {
        IndexSetKind::A | IndexSetKind::APrime => {
            let max_s = if kind == IndexSetKind::A { n - 1 } else { n };
            // s = n + 1 - r with 2 <= s <= max_s
            let min_r = n + 1 - max_s;
            for r in min_r..=n.saturating_sub(1) {
                let s = n + 1 - r;
                for k in 1..=r {
                    out.push(match kind {
                        IndexSetKind::A => BoundaryIndex::Assoc { k, r, s },
                        _ => BoundaryIndex::MultK { k, r, s },
                    });
                }
            }
        }
        IndexSetKind::B => {
            for t in 2..=n {
                let mut blocks = vec![0; t];
                compositions(n, 0, &mut blocks, &mut out);
            }
        }
    }
    Ok(out)
}

fn compositions(remaining: usize, pos: usize, blocks: &mut [usize], out: &mut Vec<BoundaryIndex>) {
    let left = blocks.len() - pos;
    if left == 1 {
        blocks[pos] = remaining;
        out.push(BoundaryIndex::MultJ { blocks: blocks.to_vec() });
        return;
    }
    for r in 1..=remaining - (left - 1) {
        blocks[pos] = r;
        compositions(remaining - r, pos + 1, blocks, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: usize, r: usize, s: usize) -> BoundaryIndex {
        BoundaryIndex::Assoc { k, r, s }
    }

    #[test]
    fn a4_in_order() {
        let got = boundary_index_sets(IndexSetKind::A, 4).unwrap();
        assert_eq!(got, [a(1, 2, 3), a(2, 2, 3), a(1, 3, 2), a(2, 3, 2), a(3, 3, 2)]);
    }

    #[test]
    fn small_sets() {
        assert!(boundary_index_sets(IndexSetKind::A, 2).unwrap().is_empty());
        assert_eq!(
            boundary_index_sets(IndexSetKind::B, 2).unwrap(),
            [BoundaryIndex::MultJ { blocks: vec![1, 1] }]
        );
        assert!(boundary_index_sets(IndexSetKind::B, 1).unwrap().is_empty());
        assert!(boundary_index_sets(IndexSetKind::APrime, 1).unwrap().is_empty());
        assert_eq!(
            boundary_index_sets(IndexSetKind::APrime, 2).unwrap(),
            [BoundaryIndex::MultK { k: 1, r: 1, s: 2 }]
        );
        assert!(boundary_index_sets(IndexSetKind::A, 1).is_err());
    }

    #[test]
    fn sizes_match_closed_forms() {
        for n in 2..10usize {
            let expected: usize = (2..n).map(|s| n + 1 - s).sum();
            assert_eq!(boundary_index_sets(IndexSetKind::A, n).unwrap().len(), expected);
            let expected_prime: usize = (2..=n).map(|s| n + 1 - s).sum();
            assert_eq!(boundary_index_sets(IndexSetKind::APrime, n).unwrap().len(), expected_prime);
            // compositions of n into at least two parts
            assert_eq!(boundary_index_sets(IndexSetKind::B, n).unwrap().len(), (1 << (n - 1)) - 1);
        }
    }

    #[test]
    fn every_enumerated_index_validates() {
        for n in 1..8 {
            for kind in [IndexSetKind::A, IndexSetKind::APrime, IndexSetKind::B] {
                for idx in boundary_index_sets(kind, n).unwrap_or_default() {
                    idx.validate().unwrap();
                    assert_eq!(idx.n(), n);
                    assert_eq!(idx.family(), kind);
                }
            }
        }
        assert!(BoundaryIndex::MultK { k: 2, r: 1, s: 2 }.validate().is_err());
        assert!(a(1, 1, 3).validate().is_err());
        assert!(BoundaryIndex::MultJ { blocks: vec![2] }.validate().is_err());
    }
}
