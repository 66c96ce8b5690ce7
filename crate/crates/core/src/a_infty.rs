//! A∞-forms on finite monoids and on maps between them, with validators for
//! the boundary and unital axioms.
//!
//! An element tuple `args` of length `n` is evaluated at a point of `K(n)`
//! (forms) or `J(n)` (map forms). A form is only ever evaluated with `n >= 2`;
//! the validators treat `α_1` as the identity.

use alloc::vec::Vec;

use crate::error::{domain, invalid, Result};
use crate::group::{check_homomorphism, FiniteMonoid};
use crate::polytopes::{
    assoc_boundary, assoc_degeneracy, boundary_index_sets, mult_boundary_join, mult_boundary_k,
    mult_degeneracy, BoundaryIndex, IndexSetKind, PointSampler, PolytopeId,
};
use crate::rational::RationalVector;

/// Argument tuples are enumerated exhaustively up to this many.
pub const EXHAUSTIVE_TUPLE_LIMIT: usize = 4096;
/// Random tuples drawn per sampled point when enumeration is too large.
pub const SAMPLED_TUPLES: usize = 256;
/// Violations kept verbatim in a report; the counts are always complete.
pub const STORED_VIOLATIONS: usize = 64;

/// `α_n : K(n) × G^n -> G`.
pub trait AInftyForm {
    fn carrier(&self) -> &FiniteMonoid;
    fn eval(&self, tau: &RationalVector, args: &[usize]) -> usize;
}

/// `β_n : J(n) × G^n -> H` over forms on `G` and `H`.
pub trait AInftyMapForm {
    fn source(&self) -> &dyn AInftyForm;
    fn target(&self) -> &dyn AInftyForm;
    fn eval(&self, tau: &RationalVector, args: &[usize]) -> usize;
}

/// The strict form of an associative monoid: `α_n(τ; g) = g_1⋯g_n`.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    monoid: FiniteMonoid,
}

impl AInftyForm for CanonicalForm {
    fn carrier(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn eval(&self, _tau: &RationalVector, args: &[usize]) -> usize {
        self.monoid.product(args)
    }
}

pub fn canonical_form(monoid: &FiniteMonoid) -> Result<CanonicalForm> {
    if let Some((a, b, c)) = monoid.associativity_failure() {
        let l = monoid.labels();
        return Err(invalid!("monoid is not associative: ({}{}){} != {}({}{})", l[a], l[b], l[c], l[a], l[b], l[c]));
    }
    Ok(CanonicalForm { monoid: monoid.clone() })
}

/// A form given by an arbitrary closure, for synthetic and corrupted forms.
pub struct FnForm<F> {
    carrier: FiniteMonoid,
    eval: F,
}

impl<F: Fn(&RationalVector, &[usize]) -> usize> FnForm<F> {
    pub fn new(carrier: FiniteMonoid, eval: F) -> Self {
        Self { carrier, eval }
    }
}

impl<F: Fn(&RationalVector, &[usize]) -> usize> AInftyForm for FnForm<F> {
    fn carrier(&self) -> &FiniteMonoid {
        &self.carrier
    }

    fn eval(&self, tau: &RationalVector, args: &[usize]) -> usize {
        (self.eval)(tau, args)
    }
}

/// The map form of a homomorphism: `β_n(τ; g) = f(g_1)⋯f(g_n)`.
#[derive(Debug, Clone)]
pub struct HomMapForm<S, T> {
    source: S,
    target: T,
    images: Vec<usize>,
}

impl<S, T> HomMapForm<S, T> {
    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

impl<S: AInftyForm, T: AInftyForm> AInftyMapForm for HomMapForm<S, T> {
    fn source(&self) -> &dyn AInftyForm {
        &self.source
    }

    fn target(&self) -> &dyn AInftyForm {
        &self.target
    }

    fn eval(&self, _tau: &RationalVector, args: &[usize]) -> usize {
        let h = self.target.carrier();
        args.iter().fold(h.unit(), |acc, &g| h.mul(acc, self.images[g]))
    }
}

pub fn hom_map_form<S: AInftyForm, T: AInftyForm>(images: Vec<usize>, src: S, dst: T) -> Result<HomMapForm<S, T>> {
    check_homomorphism(&images, src.carrier(), dst.carrier())?;
    Ok(HomMapForm { source: src, target: dst, images })
}

/// A map form given by a closure.
pub struct FnMapForm<'a, F> {
    source: &'a dyn AInftyForm,
    target: &'a dyn AInftyForm,
    eval: F,
}

impl<'a, F: Fn(&RationalVector, &[usize]) -> usize> FnMapForm<'a, F> {
    pub fn new(source: &'a dyn AInftyForm, target: &'a dyn AInftyForm, eval: F) -> Self {
        Self { source, target, eval }
    }
}

impl<F: Fn(&RationalVector, &[usize]) -> usize> AInftyMapForm for FnMapForm<'_, F> {
    fn source(&self) -> &dyn AInftyForm {
        self.source
    }

    fn target(&self) -> &dyn AInftyForm {
        self.target
    }

    fn eval(&self, tau: &RationalVector, args: &[usize]) -> usize {
        (self.eval)(tau, args)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub n: usize,
    pub cell: Option<BoundaryIndex>,
    /// Position of the unit for the unital axioms.
    pub j: Option<usize>,
    /// Point at which the left-hand side was evaluated.
    pub tau: RationalVector,
    pub args: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomTally {
    pub axiom: u8,
    pub checks: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub tallies: Vec<AxiomTally>,
    /// The first [`STORED_VIOLATIONS`] violations found.
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    fn new(n_max: usize, samples: usize, seed: u64, axioms: &[u8]) -> Self {
        let tallies = axioms.iter().map(|&axiom| AxiomTally { axiom, checks: 0, violations: 0 }).collect();
        Self { n_max, samples, seed, tallies, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.violations == 0)
    }

    pub fn total_violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn violations_of(&self, axiom: u8) -> usize {
        self.tallies.iter().filter(|t| t.axiom == axiom).map(|t| t.violations).sum()
    }

    pub fn checks_of(&self, axiom: u8) -> usize {
        self.tallies.iter().filter(|t| t.axiom == axiom).map(|t| t.checks).sum()
    }

    fn record(&mut self, v: AxiomViolation, ok: bool) {
        let tally = self.tallies.iter_mut().find(|t| t.axiom == v.axiom).expect("axiom registered");
        tally.checks += 1;
        if !ok {
            tally.violations += 1;
            if self.violations.len() < STORED_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

/// Calls `f` on every tuple in `order^len`, or on [`SAMPLED_TUPLES`] random
/// ones when that set exceeds [`EXHAUSTIVE_TUPLE_LIMIT`].
fn for_each_tuple(order: usize, len: usize, sampler: &mut PointSampler, mut f: impl FnMut(&[usize])) {
    let total = (0..len).try_fold(1usize, |acc, _| acc.checked_mul(order).filter(|&t| t <= EXHAUSTIVE_TUPLE_LIMIT));
    let mut tuple = alloc::vec![0usize; len];
    match total {
        Some(total) => {
            for _ in 0..total {
                f(&tuple);
                for slot in tuple.iter_mut().rev() {
                    *slot += 1;
                    if *slot < order {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        None => {
            for _ in 0..SAMPLED_TUPLES {
                for slot in tuple.iter_mut() {
                    *slot = sampler.index(order);
                }
                f(&tuple);
            }
        }
    }
}

/// `α_n` with `α_1` the identity.
fn alpha(form: &dyn AInftyForm, tau: &RationalVector, args: &[usize]) -> usize {
    if args.len() == 1 {
        args[0]
    } else {
        form.eval(tau, args)
    }
}

fn with_unit(args: &[usize], j: usize, unit: usize) -> Vec<usize> {
    let mut full = Vec::with_capacity(args.len() + 1);
    full.extend_from_slice(&args[..j - 1]);
    full.push(unit);
    full.extend_from_slice(&args[j - 1..]);
    full
}

/// Checks the boundary axiom (1) over `A(n)` and the unital axiom (2) for
/// `2 <= n <= n_max`, on `samples` random points per cell and unit position.
pub fn validate_form(form: &dyn AInftyForm, n_max: usize, samples: usize, seed: u64) -> Result<AxiomReport> {
    if n_max < 2 {
        return Err(domain!("validate_form needs n_max >= 2, got {n_max}"));
    }
    let g = form.carrier();
    let order = g.order();
    let mut sampler = PointSampler::new(seed);
    let mut report = AxiomReport::new(n_max, samples, seed, &[1, 2]);

    for n in 3..=n_max {
        for cell in boundary_index_sets(IndexSetKind::A, n)? {
            let BoundaryIndex::Assoc { k, r, s } = cell else { unreachable!() };
            for _ in 0..samples {
                let rho = sampler.sample(PolytopeId::assoc(r)?);
                let sigma = sampler.sample(PolytopeId::assoc(s)?);
                let tau = assoc_boundary(k, &rho, &sigma)?;
                let mut outer = alloc::vec![0usize; r];
                for_each_tuple(order, n, &mut sampler, |args| {
                    let lhs = form.eval(&tau, args);
                    outer[..k - 1].copy_from_slice(&args[..k - 1]);
                    outer[k - 1] = form.eval(&sigma, &args[k - 1..k - 1 + s]);
                    outer[k..].copy_from_slice(&args[k - 1 + s..]);
                    let rhs = alpha(form, &rho, &outer);
                    let v = AxiomViolation {
                        axiom: 1,
                        n,
                        cell: Some(cell.clone()),
                        j: None,
                        tau: tau.clone(),
                        args: args.to_vec(),
                        lhs,
                        rhs,
                    };
                    report.record(v, lhs == rhs);
                });
            }
        }
    }

    for n in 2..=n_max {
        for j in 1..=n {
            for _ in 0..samples {
                let tau = sampler.sample(PolytopeId::assoc(n)?);
                let face = if n >= 3 { Some(assoc_degeneracy(j, &tau)?) } else { None };
                for_each_tuple(order, n - 1, &mut sampler, |rest| {
                    let args = with_unit(rest, j, g.unit());
                    let lhs = form.eval(&tau, &args);
                    let rhs = match &face {
                        Some(face) => alpha(form, face, rest),
                        None => rest[0],
                    };
                    let v = AxiomViolation { axiom: 2, n, cell: None, j: Some(j), tau: tau.clone(), args, lhs, rhs };
                    report.record(v, lhs == rhs);
                });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MapValidationOptions {
    /// Also check the unital axiom at `j = n`.
    pub include_last_unit: bool,
}

pub fn validate_map_form(mf: &dyn AInftyMapForm, n_max: usize, samples: usize, seed: u64) -> Result<AxiomReport> {
    validate_map_form_with(mf, n_max, samples, seed, MapValidationOptions::default())
}

/// Checks the map axioms: (1) `β_n∘δ_k` against insertion of `α^G_s`, (2)
/// `β_n∘δ` against `α^H_t` applied to the block values, and (3) unit
/// deletion through `d_j` for `1 <= j < n`.
pub fn validate_map_form_with(
    mf: &dyn AInftyMapForm,
    n_max: usize,
    samples: usize,
    seed: u64,
    options: MapValidationOptions,
) -> Result<AxiomReport> {
    if n_max < 1 {
        return Err(domain!("validate_map_form needs n_max >= 1"));
    }
    let src = mf.source();
    let dst = mf.target();
    let order = src.carrier().order();
    let unit = src.carrier().unit();
    let mut sampler = PointSampler::new(seed);
    let mut report = AxiomReport::new(n_max, samples, seed, &[1, 2, 3]);

    for n in 2..=n_max {
        for cell in boundary_index_sets(IndexSetKind::APrime, n)? {
            let BoundaryIndex::MultK { k, r, s } = cell else { unreachable!() };
            for _ in 0..samples {
                let rho = sampler.sample(PolytopeId::multipl(r)?);
                let sigma = sampler.sample(PolytopeId::assoc(s)?);
                let tau = mult_boundary_k(k, &rho, &sigma)?;
                let mut outer = alloc::vec![0usize; r];
                for_each_tuple(order, n, &mut sampler, |args| {
                    let lhs = mf.eval(&tau, args);
                    outer[..k - 1].copy_from_slice(&args[..k - 1]);
                    outer[k - 1] = src.eval(&sigma, &args[k - 1..k - 1 + s]);
                    outer[k..].copy_from_slice(&args[k - 1 + s..]);
                    let rhs = mf.eval(&rho, &outer);
                    let v = AxiomViolation {
                        axiom: 1,
                        n,
                        cell: Some(cell.clone()),
                        j: None,
                        tau: tau.clone(),
                        args: args.to_vec(),
                        lhs,
                        rhs,
                    };
                    report.record(v, lhs == rhs);
                });
            }
        }

        for cell in boundary_index_sets(IndexSetKind::B, n)? {
            let BoundaryIndex::MultJ { ref blocks } = cell else { unreachable!() };
            for _ in 0..samples {
                let outer_tau = sampler.sample(PolytopeId::assoc(blocks.len())?);
                let rhos = blocks
                    .iter()
                    .map(|&r| Ok(sampler.sample(PolytopeId::multipl(r)?)))
                    .collect::<Result<Vec<_>>>()?;
                let tau = mult_boundary_join(&outer_tau, &rhos)?;
                let mut values = alloc::vec![0usize; blocks.len()];
                for_each_tuple(order, n, &mut sampler, |args| {
                    let lhs = mf.eval(&tau, args);
                    let mut start = 0;
                    for (i, (&r, rho)) in blocks.iter().zip(&rhos).enumerate() {
                        values[i] = mf.eval(rho, &args[start..start + r]);
                        start += r;
                    }
                    let rhs = dst.eval(&outer_tau, &values);
                    let v = AxiomViolation {
                        axiom: 2,
                        n,
                        cell: Some(cell.clone()),
                        j: None,
                        tau: tau.clone(),
                        args: args.to_vec(),
                        lhs,
                        rhs,
                    };
                    report.record(v, lhs == rhs);
                });
            }
        }

        let last = if options.include_last_unit { n } else { n - 1 };
        for j in 1..=last {
            for _ in 0..samples {
                let tau = sampler.sample(PolytopeId::multipl(n)?);
                let face = mult_degeneracy(j, &tau)?;
                for_each_tuple(order, n - 1, &mut sampler, |rest| {
                    let args = with_unit(rest, j, unit);
                    let lhs = mf.eval(&tau, &args);
                    let rhs = mf.eval(&face, rest);
                    let v = AxiomViolation { axiom: 3, n, cell: None, j: Some(j), tau: tau.clone(), args, lhs, rhs };
                    report.record(v, lhs == rhs);
                });
            }
        }
    }
    Ok(report)
}
