use lscat_core::polytopes::*;
use lscat_core::rational::ratio;
use lscat_core::RationalVector;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn all_kinds(n: usize) -> Vec<PolytopeId> {
    let mut out = vec![PolytopeId::simplex(n)];
    if n >= 2 {
        out.push(PolytopeId::assoc(n).unwrap());
    }
    if n >= 1 {
        out.push(PolytopeId::multipl(n).unwrap());
    }
    out
}

fn assert_in(p: PolytopeId, v: &RationalVector) {
    assert!(contains(p, v).unwrap(), "{v} not in {:?}({})", p.kind(), p.n());
}

#[test]
fn chart_round_trip_on_1000_samples() {
    for n in 1..=6 {
        for p in all_kinds(n) {
            let mut s = PointSampler::new(n as u64);
            for _ in 0..1000 {
                let x = s.sample(p);
                let primed = prime_chart(p, &x, ChartDirection::ToPrime).unwrap();
                assert!(contains(p.chart_partner(), &primed).unwrap());
                let back = prime_chart(p.chart_partner(), &primed, ChartDirection::FromPrime).unwrap();
                assert_eq!(back, x);
            }
        }
    }
}

#[test]
fn boundary_samples_are_on_the_boundary() {
    for n in 2..=6 {
        for p in [PolytopeId::assoc(n).unwrap(), PolytopeId::multipl(n).unwrap()] {
            for (i, cell) in p.boundary_cells().iter().enumerate() {
                for seed in 0..5 {
                    let x = sample_point(p, seed * 31 + i as u64, Some(cell)).unwrap();
                    assert!(is_on_boundary(p, &x).unwrap(), "{x} from {cell:?}");
                }
            }
        }
    }
}

#[test]
fn interior_samples_of_distinct_cells_differ() {
    for n in 3..=6 {
        for p in [PolytopeId::assoc(n).unwrap(), PolytopeId::multipl(n).unwrap()] {
            let mut sampler = PointSampler::interior(n as u64);
            let images: Vec<(BoundaryIndex, RationalVector)> = p
                .boundary_cells()
                .into_iter()
                .map(|cell| {
                    let (_, image) = sampler.sample_cell(&cell).unwrap();
                    (cell, image)
                })
                .collect();
            for (i, (ci, xi)) in images.iter().enumerate() {
                for (cj, xj) in &images[i + 1..] {
                    assert_ne!(xi, xj, "{ci:?} and {cj:?} share an interior sample");
                }
            }
        }
    }
}

fn sum_eq(v: &RationalVector, expected: &BigRational) -> bool {
    &v.sum() == expected
}

/// One application of each map family at size `n`, checked for closure and
/// the exact total.
fn check_maps(n: usize, seed: u64) -> Result<(), TestCaseError> {
    let half = ratio(1, 2);
    let k_total = BigRational::from_integer((n as i64 - 1).into());
    let j_total = &k_total + &half;
    let one = BigRational::one();
    let mut s = PointSampler::new(seed);
    if n >= 3 {
        let cells = PolytopeId::assoc(n).unwrap().boundary_cells();
        let cell = &cells[s.index(cells.len())];
        let (_, x) = s.sample_cell(cell).unwrap();
        prop_assert!(contains(PolytopeId::assoc(n).unwrap(), &x).unwrap());
        prop_assert!(sum_eq(&x, &k_total));
        let t = s.sample(PolytopeId::assoc(n).unwrap());
        let j = 1 + s.index(n);
        let y = assoc_degeneracy(j, &t).unwrap();
        prop_assert!(contains(PolytopeId::assoc(n - 1).unwrap(), &y).unwrap());
        prop_assert!(sum_eq(&y, &(&k_total - &one)));
    }
    if n >= 2 {
        let p = PolytopeId::multipl(n).unwrap();
        for cell in p.boundary_cells() {
            let (_, x) = s.sample_cell(&cell).unwrap();
            prop_assert!(contains(p, &x).unwrap(), "{x} from {cell:?}");
            prop_assert!(sum_eq(&x, &j_total));
        }
        let t = s.sample(p);
        let j = 1 + s.index(n);
        let y = mult_degeneracy(j, &t).unwrap();
        prop_assert!(contains(PolytopeId::multipl(n - 1).unwrap(), &y).unwrap());
        prop_assert!(sum_eq(&y, &(&j_total - &one)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn maps_are_closed_and_preserve_sums(n in 2usize..=7, seed in any::<u64>()) {
        check_maps(n, seed)?;
    }

    #[test]
    fn xi_is_nonnegative(nums in proptest::collection::vec(0i64..12, 1..8), den in 1i64..5) {
        let t = RationalVector::new(nums.iter().map(|&x| ratio(x, den)).collect()).unwrap();
        let out = xi(&t).unwrap();
        prop_assert_eq!(out.len(), t.len());
        prop_assert!(out.iter().all(|c| *c >= BigRational::zero()));
    }

    #[test]
    fn chart_round_trip(n in 1usize..=7, seed in any::<u64>()) {
        for p in all_kinds(n) {
            let x = sample_point(p, seed, None).unwrap();
            let there = prime_chart(p, &x, ChartDirection::ToPrime).unwrap();
            prop_assert_eq!(prime_chart(p.chart_partner(), &there, ChartDirection::FromPrime).unwrap(), x);
        }
    }

    #[test]
    fn located_cells_reproduce_the_point(n in 3usize..=6, seed in any::<u64>()) {
        let p = PolytopeId::assoc(n).unwrap();
        let cells = p.boundary_cells();
        let mut s = PointSampler::new(seed);
        let cell = cells[s.index(cells.len())].clone();
        let (_, x) = s.sample_cell(&cell).unwrap();
        let found = boundary_cell_locate(p, &x).unwrap();
        prop_assert!(found.iter().any(|c| c.cell == cell));
        for c in found {
            prop_assert_eq!(apply_boundary(&c.cell, &c.factors).unwrap(), x.clone());
        }
    }
}

#[test]
fn single_point_polytopes() {
    assert_in(PolytopeId::assoc(2).unwrap(), &RationalVector::from_ints(&[0, 1]).unwrap());
    assert_in(PolytopeId::multipl(1).unwrap(), &RationalVector::from_ratios(&[(1, 2)]).unwrap());
    let pt = RationalVector::from_ratios(&[(1, 2)]).unwrap();
    let y = assoc_boundary(1, &RationalVector::from_ints(&[0, 1]).unwrap(), &RationalVector::from_ints(&[0, 1]).unwrap()).unwrap();
    assert_in(PolytopeId::assoc(3).unwrap(), &y);
    let joined = mult_boundary_join(&RationalVector::from_ints(&[0, 1]).unwrap(), &[pt.clone(), pt]).unwrap();
    assert_in(PolytopeId::multipl(2).unwrap(), &joined);
}
