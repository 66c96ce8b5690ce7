use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    apply_boundary, contains, is_on_boundary, prime_chart, BoundaryIndex, ChartDirection,
    PolytopeId, PolytopeKind,
};
use crate::error::{domain, Result};
use crate::rational::{ratio, RationalVector};

const MAX_WEIGHT: u32 = 8;
const MAX_ATTEMPTS: usize = 20_000;

/// Deterministic rejection sampler for exact rational points.
///
/// Draws nonnegative integer weights, rescales them to the required total and
/// rejects tuples that violate a partial-sum bound. Coordinates forced to zero
/// (the first coordinate of `K(n)`) get weight zero.
#[derive(Debug, Clone)]
pub struct PointSampler {
    rng: ChaCha8Rng,
    interior: bool,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), interior: false }
    }

    /// A sampler that only returns points in the relative interior.
    pub fn interior(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), interior: true }
    }

    pub fn sample(&mut self, p: PolytopeId) -> RationalVector {
        if p.kind().is_primed() {
            let base = self.sample(p.chart_partner());
            return prime_chart(p.chart_partner(), &base, ChartDirection::ToPrime)
                .expect("sampled point lies in its polytope");
        }
        let len = p.point_len();
        let single_point = match p.kind() {
            PolytopeKind::Simplex => len == 1,
            PolytopeKind::Assoc => len == 2,
            _ => len == 1,
        };
        if single_point {
            return fallback(p);
        }
        let free_from = usize::from(p.kind() == PolytopeKind::Assoc);
        let total = p.total();
        let low = u32::from(self.interior);
        for _ in 0..MAX_ATTEMPTS {
            let mut weights: Vec<u32> = (0..len).map(|_| self.rng.random_range(low..=MAX_WEIGHT)).collect();
            for w in &mut weights[..free_from] {
                *w = 0;
            }
            let sum: u32 = weights.iter().sum();
            if sum == 0 {
                continue;
            }
            let scale = &total / BigRational::from_integer(BigInt::from(sum));
            let point = RationalVector::from_vec_unchecked(
                weights
                    .iter()
                    .map(|&w| BigRational::from_integer(BigInt::from(w)) * &scale)
                    .collect(),
            );
            if contains(p, &point).unwrap_or(false)
                && (!self.interior || !is_on_boundary(p, &point).unwrap_or(true))
            {
                return point;
            }
        }
        fallback(p)
    }

    /// Samples factor points for `cell` and returns them with their image.
    pub fn sample_cell(
        &mut self,
        cell: &BoundaryIndex,
    ) -> Result<(Vec<RationalVector>, RationalVector)> {
        cell.validate()?;
        let factors = self.sample_factors(cell)?;
        let image = apply_boundary(cell, &factors)?;
        Ok((factors, image))
    }

    pub fn sample_factors(&mut self, cell: &BoundaryIndex) -> Result<Vec<RationalVector>> {
        Ok(match *cell {
            BoundaryIndex::Assoc { r, s, .. } => {
                alloc::vec![self.sample(PolytopeId::assoc(r)?), self.sample(PolytopeId::assoc(s)?)]
            }
            BoundaryIndex::MultK { r, s, .. } => {
                alloc::vec![self.sample(PolytopeId::multipl(r)?), self.sample(PolytopeId::assoc(s)?)]
            }
            BoundaryIndex::MultJ { ref blocks } => {
                let mut out = Vec::with_capacity(blocks.len() + 1);
                out.push(self.sample(PolytopeId::assoc(blocks.len())?));
                for &r in blocks {
                    out.push(self.sample(PolytopeId::multipl(r)?));
                }
                out
            }
        })
    }

    /// Uniform integer in `0..bound`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// A fixed point of `p`, interior whenever `p` has interior points.
fn fallback(p: PolytopeId) -> RationalVector {
    let len = p.point_len();
    let c: Vec<BigRational> = match p.kind() {
        PolytopeKind::Simplex => (0..len).map(|_| ratio(1, len as i64)).collect(),
        PolytopeKind::Assoc => {
            if len == 2 {
                alloc::vec![ratio(0, 1), ratio(1, 1)]
            } else {
                let mut c = alloc::vec![ratio(1, 1); len];
                c[0] = BigRational::zero();
                c[1] = ratio(1, 2);
                c[len - 1] = ratio(3, 2);
                c
            }
        }
        PolytopeKind::Multipl => {
            if len == 1 {
                alloc::vec![ratio(1, 2)]
            } else {
                let mut c = alloc::vec![ratio(1, 1); len];
                c[0] = ratio(1, 4);
                c[len - 1] = ratio(5, 4);
                c
            }
        }
        _ => unreachable!("primed kinds are sampled through their chart"),
    };
    RationalVector::from_vec_unchecked(c)
}

/// One sample of `p`, or of the boundary cell `cell` of `p`.
pub fn sample_point(p: PolytopeId, seed: u64, cell: Option<&BoundaryIndex>) -> Result<RationalVector> {
    PolytopeId::new(p.kind(), p.n())?;
    let mut sampler = PointSampler::new(seed);
    match cell {
        None => Ok(sampler.sample(p)),
        Some(cell) => {
            if !p.boundary_cells().contains(cell) {
                return Err(domain!("{cell:?} is not a boundary cell of {:?}({})", p.kind(), p.n()));
            }
            let (_, image) = sampler.sample_cell(cell)?;
            if p.kind().is_primed() {
                prime_chart(p.chart_partner(), &image, ChartDirection::ToPrime)
            } else {
                Ok(image)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_polytopes() {
        for seed in 0..5 {
            assert_eq!(
                sample_point(PolytopeId::assoc(2).unwrap(), seed, None).unwrap(),
                RationalVector::from_ints(&[0, 1]).unwrap()
            );
            assert_eq!(
                sample_point(PolytopeId::multipl(1).unwrap(), seed, None).unwrap(),
                RationalVector::from_ratios(&[(1, 2)]).unwrap()
            );
        }
    }

    #[test]
    fn k3_samples_lie_on_the_segment() {
        let k3 = PolytopeId::assoc(3).unwrap();
        for seed in 0..50 {
            let p = sample_point(k3, seed, None).unwrap();
            assert!(p[0].is_zero());
            assert!(p[1] >= ratio(0, 1) && p[1] <= ratio(1, 1));
            assert_eq!(&p[1] + &p[2], ratio(2, 1));
        }
    }

    #[test]
    fn deterministic() {
        let j5 = PolytopeId::multipl(5).unwrap();
        assert_eq!(sample_point(j5, 42, None).unwrap(), sample_point(j5, 42, None).unwrap());
    }

    #[test]
    fn interior_samples() {
        let mut s = PointSampler::interior(3);
        for n in 3..8 {
            let p = PolytopeId::assoc(n).unwrap();
            let x = s.sample(p);
            assert!(!is_on_boundary(p, &x).unwrap(), "{x}");
            let p = PolytopeId::multipl(n).unwrap();
            let x = s.sample(p);
            assert!(!is_on_boundary(p, &x).unwrap(), "{x}");
        }
    }

    #[test]
    fn fallback_points_are_members() {
        for n in 1..9 {
            let j = PolytopeId::multipl(n).unwrap();
            assert!(contains(j, &fallback(j)).unwrap());
            if n >= 2 {
                let k = PolytopeId::assoc(n).unwrap();
                assert!(contains(k, &fallback(k)).unwrap());
            }
            let d = PolytopeId::simplex(n);
            assert!(contains(d, &fallback(d)).unwrap());
        }
    }

    #[test]
    fn cell_sampling_checks_the_cell() {
        let k4 = PolytopeId::assoc(4).unwrap();
        let cell = BoundaryIndex::Assoc { k: 1, r: 2, s: 3 };
        let x = sample_point(k4, 1, Some(&cell)).unwrap();
        assert!(contains(k4, &x).unwrap());
        let wrong = BoundaryIndex::Assoc { k: 1, r: 2, s: 2 };
        assert!(sample_point(k4, 1, Some(&wrong)).is_err());
    }
}
