//! Simplices, associahedra and multiplihedra in partial-sum coordinates.
//!
//! `K(n)` is the set of `(t_1, ..., t_n)` with `t_i >= 0`, every partial sum
//! `t_1 + ... + t_i <= i - 1` and total `n - 1`. `J(n)` is the same with the
//! bounds shifted by `a = 1/2`. The primed charts use the partial sums
//! themselves as coordinates.
//!
//! Faces are indexed combinatorially by [`BoundaryIndex`]: in these
//! coordinates `K(4)` is a quadrilateral whose boundary is cut into the five
//! images of the face maps, so geometric facets do not match the cells.

mod identities;
mod index;
mod locate;
mod maps;
mod sample;

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};


pub use identities::{
    verify_identities, verify_identities_with, CaseResult, Counterexample, IdentityReport,
    IdentityTable,
};
pub use index::{boundary_index_sets, BoundaryIndex, IndexSetKind};
pub use locate::{boundary_cell_locate, CellPreimage};
pub use maps::{
    apply_boundary, assoc_boundary, assoc_degeneracy, mult_boundary_join, mult_boundary_k,
    mult_degeneracy, xi, FaceMaps, StandardMaps,
};
pub use sample::{sample_point, PointSampler};

use crate::error::{domain, Error, Result};
use crate::rational::{ratio, RationalVector};

/// The offset `a` in the defining inequalities of the multiplihedron.
pub fn offset() -> BigRational {
    ratio(1, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolytopeKind {
    Simplex,
    SimplexPrime,
    Assoc,
    AssocPrime,
    Multipl,
    MultiplPrime,
}

impl PolytopeKind {
    pub fn is_primed(self) -> bool {
        matches!(
            self,
            PolytopeKind::SimplexPrime | PolytopeKind::AssocPrime | PolytopeKind::MultiplPrime
        )
    }

    /// The partner chart: `Assoc <-> AssocPrime` and so on.
    pub fn chart_partner(self) -> Self {
        use PolytopeKind::*;
        match self {
            Simplex => SimplexPrime,
            SimplexPrime => Simplex,
            Assoc => AssocPrime,
            AssocPrime => Assoc,
            Multipl => MultiplPrime,
            MultiplPrime => Multipl,
        }
    }

    fn min_n(self) -> usize {
        use PolytopeKind::*;
        match self {
            Simplex | SimplexPrime => 0,
            Assoc | AssocPrime => 2,
            Multipl | MultiplPrime => 1,
        }
    }
}

/// A polytope of a given kind; `n` is the tuple length except for simplices,
/// whose points have `n + 1` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolytopeId {
    kind: PolytopeKind,
    n: usize,
}

impl PolytopeId {
    pub fn new(kind: PolytopeKind, n: usize) -> Result<Self> {
        if n < kind.min_n() {
            return Err(domain!("{kind:?} requires n >= {}, got {n}", kind.min_n()));
        }
        Ok(Self { kind, n })
    }

    pub fn simplex(n: usize) -> Self {
        Self { kind: PolytopeKind::Simplex, n }
    }

    pub fn assoc(n: usize) -> Result<Self> {
        Self::new(PolytopeKind::Assoc, n)
    }

    pub fn multipl(n: usize) -> Result<Self> {
        Self::new(PolytopeKind::Multipl, n)
    }

    pub fn kind(self) -> PolytopeKind {
        self.kind
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn point_len(self) -> usize {
        match self.kind {
            PolytopeKind::Simplex | PolytopeKind::SimplexPrime => self.n + 1,
            _ => self.n,
        }
    }

    pub fn chart_partner(self) -> Self {
        Self { kind: self.kind.chart_partner(), n: self.n }
    }

    /// The value every point's coordinates sum to (unprimed charts), or the
    /// final coordinate (primed charts).
    pub fn total(self) -> BigRational {
        use PolytopeKind::*;
        match self.kind {
            Simplex | SimplexPrime => BigRational::one(),
            Assoc | AssocPrime => ratio(self.n as i64 - 1, 1),
            Multipl | MultiplPrime => ratio(self.n as i64 - 1, 1) + offset(),
        }
    }

    /// Upper bound on the `i`-th partial sum (1-based), `None` for simplices.
    fn partial_bound(self, i: usize) -> Option<BigRational> {
        use PolytopeKind::*;
        match self.kind {
            Simplex | SimplexPrime => None,
            Assoc | AssocPrime => Some(ratio(i as i64 - 1, 1)),
            Multipl | MultiplPrime => Some(ratio(i as i64 - 1, 1) + offset()),
        }
    }

    /// The boundary cells of this polytope (unprimed or primed chart alike).
    pub fn boundary_cells(self) -> Vec<BoundaryIndex> {
        use PolytopeKind::*;
        match self.kind {
            Assoc | AssocPrime => boundary_index_sets(IndexSetKind::A, self.n).unwrap_or_default(),
            Multipl | MultiplPrime => {
                let mut cells =
                    boundary_index_sets(IndexSetKind::APrime, self.n).unwrap_or_default();
                cells.extend(boundary_index_sets(IndexSetKind::B, self.n).unwrap_or_default());
                cells
            }
            Simplex | SimplexPrime => Vec::new(),
        }
    }
}

fn check_len(p: PolytopeId, point: &RationalVector) -> Result<()> {
    if point.len() != p.point_len() {
        return Err(Error::Dimension { expected: p.point_len(), found: point.len() });
    }
    Ok(())
}

/// Exact membership test.
pub fn contains(p: PolytopeId, point: &RationalVector) -> Result<bool> {
    PolytopeId::new(p.kind, p.n)?;
    check_len(p, point)?;
    Ok(if p.kind.is_primed() {
        contains_primed(p, point.coords())
    } else {
        contains_unprimed(p, point)
    })
}

fn contains_unprimed(p: PolytopeId, point: &RationalVector) -> bool {
    if !point.is_nonnegative() {
        return false;
    }
    let sums = point.prefix_sums();
    if sums.last() != Some(&p.total()) {
        return false;
    }
    sums.iter()
        .enumerate()
        .all(|(i, s)| p.partial_bound(i + 1).is_none_or(|b| *s <= b))
}

fn contains_primed(p: PolytopeId, u: &[BigRational]) -> bool {
    if u[0].is_negative() || u.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    if u.last() != Some(&p.total()) {
        return false;
    }
    if p.kind == PolytopeKind::AssocPrime && !u[0].is_zero() {
        return false;
    }
    u.iter()
        .enumerate()
        .all(|(i, x)| p.partial_bound(i + 1).is_none_or(|b| *x <= b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartDirection {
    ToPrime,
    FromPrime,
}

/// Converts between the sum chart and the partial-sum chart.
///
/// `ToPrime` expects an unprimed `p`, `FromPrime` a primed one; the output
/// lies in the partner polytope.
pub fn prime_chart(
    p: PolytopeId,
    point: &RationalVector,
    direction: ChartDirection,
) -> Result<RationalVector> {
    match (direction, p.kind.is_primed()) {
        (ChartDirection::ToPrime, false) | (ChartDirection::FromPrime, true) => {}
        _ => return Err(domain!("chart direction {direction:?} does not apply to {:?}", p.kind)),
    }
    if !contains(p, point)? {
        return Err(domain!("{point} is not in {:?}({})", p.kind, p.n));
    }
    Ok(match direction {
        ChartDirection::ToPrime => RationalVector::from_vec_unchecked(point.prefix_sums()),
        ChartDirection::FromPrime => {
            let c = point.coords();
            let mut out = Vec::with_capacity(c.len());
            out.push(c[0].clone());
            out.extend(c.windows(2).map(|w| &w[1] - &w[0]));
            RationalVector::from_vec_unchecked(out)
        }
    })
}

/// True if some non-forced defining inequality is tight.
///
/// Inequalities that hold with equality on the whole polytope (`t_1 = 0` and
/// the total of `K(n)`, the total of `J(n)`) do not count. The point must lie
/// in `p`.
pub fn is_on_boundary(p: PolytopeId, point: &RationalVector) -> Result<bool> {
    if !contains(p, point)? {
        return Err(domain!("{point} is not in {:?}({})", p.kind, p.n));
    }
    if p.kind.is_primed() {
        let unprimed = prime_chart(p, point, ChartDirection::FromPrime)?;
        return is_on_boundary(p.chart_partner(), &unprimed);
    }
    let coords = point.coords();
    let sums = point.prefix_sums();
    let len = coords.len();
    Ok(match p.kind {
        PolytopeKind::Simplex => len > 1 && coords.iter().any(Zero::is_zero),
        PolytopeKind::Assoc => {
            len > 2
                && (coords[1..].iter().any(Zero::is_zero)
                    || (2..len).any(|i| Some(&sums[i - 1]) == p.partial_bound(i).as_ref()))
        }
        PolytopeKind::Multipl => {
            len > 1
                && (coords.iter().any(Zero::is_zero)
                    || (1..len).any(|i| Some(&sums[i - 1]) == p.partial_bound(i).as_ref()))
        }
        _ => unreachable!(),
    })
}

pub(crate) fn ensure_member(p: PolytopeId, point: &RationalVector) -> Result<()> {
    if contains(p, point)? {
        Ok(())
    } else {
        Err(domain!("{point} is not in {:?}({})", p.kind, p.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(s: &str) -> RationalVector {
        RationalVector::parse(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(contains(PolytopeId::assoc(2).unwrap(), &rv("0,1")).unwrap());
        assert!(contains(PolytopeId::assoc(4).unwrap(), &rv("0,1,1,1")).unwrap());
        assert!(!contains(PolytopeId::multipl(2).unwrap(), &rv("1,1/2")).unwrap());
        assert!(contains(PolytopeId::multipl(2).unwrap(), &rv("1/2,1")).unwrap());
        assert!(contains(PolytopeId::simplex(2), &rv("1/3,1/3,1/3")).unwrap());
        assert!(!contains(PolytopeId::simplex(2), &rv("1/2,1/2,1/2")).unwrap());
    }

    #[test]
    fn membership_errors() {
        assert!(matches!(
            contains(PolytopeId::assoc(3).unwrap(), &rv("0,1")),
            Err(Error::Dimension { expected: 3, found: 2 })
        ));
        assert!(PolytopeId::assoc(1).is_err());
        assert!(PolytopeId::multipl(0).is_err());
        assert!(matches!(
            contains(PolytopeId::simplex(1), &rv("1")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn forced_first_coordinate_of_assoc() {
        let k3 = PolytopeId::assoc(3).unwrap();
        assert!(!contains(k3, &rv("1/2,1/2,1")).unwrap());
        assert!(!contains(k3, &rv("0,-1,3")).unwrap());
        assert!(contains(k3, &rv("0,1/2,3/2")).unwrap());
    }

    #[test]
    fn chart_examples() {
        let k3 = PolytopeId::assoc(3).unwrap();
        let up = prime_chart(k3, &rv("0,1/2,3/2"), ChartDirection::ToPrime).unwrap();
        assert_eq!(up, rv("0,1/2,2"));
        assert!(contains(k3.chart_partner(), &up).unwrap());
        let down =
            prime_chart(k3.chart_partner(), &rv("0,1/2,2"), ChartDirection::FromPrime).unwrap();
        assert_eq!(down, rv("0,1/2,3/2"));

        let j1 = PolytopeId::multipl(1).unwrap();
        assert_eq!(prime_chart(j1, &rv("1/2"), ChartDirection::ToPrime).unwrap(), rv("1/2"));
    }

    #[test]
    fn chart_errors() {
        let k3 = PolytopeId::assoc(3).unwrap();
        assert!(prime_chart(k3, &rv("0,1,1"), ChartDirection::FromPrime).is_err());
        assert!(prime_chart(k3, &rv("0,2,0"), ChartDirection::ToPrime).is_err());
    }

    #[test]
    fn boundary_detection_on_k4() {
        let k4 = PolytopeId::assoc(4).unwrap();
        assert!(is_on_boundary(k4, &rv("0,1,1,1")).unwrap());
        assert!(is_on_boundary(k4, &rv("0,0,1,2")).unwrap());
        assert!(!is_on_boundary(k4, &rv("0,1/2,1,3/2")).unwrap());
        let k2 = PolytopeId::assoc(2).unwrap();
        assert!(!is_on_boundary(k2, &rv("0,1")).unwrap());
    }
}
