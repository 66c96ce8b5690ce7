//! Face maps, degeneracies and the normalization `xi`.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ensure_member, offset, BoundaryIndex, PolytopeId};
use crate::error::{domain, Result};
use crate::rational::RationalVector;

/// `xi(t)_1 = max{0, t_1 - 1}` and for `k > 1`
/// `xi(t)_k = min{ t_k, max_{j<=k} sum_{i<=j}(t_i - 1) - sum_{i<k}(xi(t)_i - 1) }`.
///
/// Intermediate brackets may be negative; the result is not.
pub fn xi(t: &RationalVector) -> Result<RationalVector> {
    if !t.is_nonnegative() {
        return Err(domain!("xi needs nonnegative coordinates, got {t}"));
    }
    Ok(RationalVector::from_vec_unchecked(xi_raw(t.coords())))
}

fn xi_raw(t: &[BigRational]) -> Vec<BigRational> {
    let one = BigRational::one();
    let mut out: Vec<BigRational> = Vec::with_capacity(t.len());
    let mut running = BigRational::zero();
    let mut best = BigRational::zero();
    let mut primed_excess = BigRational::zero();
    for (idx, tk) in t.iter().enumerate() {
        running += tk - &one;
        if idx == 0 || running > best {
            best = running.clone();
        }
        let value = if idx == 0 {
            (tk - &one).max(BigRational::zero())
        } else {
            tk.clone().min(&best - &primed_excess)
        };
        primed_excess += &value - &one;
        out.push(value);
    }
    debug_assert!(out.iter().all(|x| !x.is_negative()), "xi produced a negative value");
    out
}

/// Head/tail rule shared by `s_j` and `d_j`.
fn degenerate(j: usize, t: &RationalVector) -> Result<RationalVector> {
    let n = t.len();
    if j < 1 || j > n {
        return Err(domain!("degeneracy index {j} outside 1..={n}"));
    }
    let c = t.coords();
    let out = if j == 1 {
        let full = xi_raw(c);
        if !full[0].is_zero() {
            return Err(domain!("xi{t} does not start with 0"));
        }
        full[1..].to_vec()
    } else {
        let tail = xi_raw(&c[j - 1..]);
        let mut out = Vec::with_capacity(n - 1);
        out.extend_from_slice(&c[..j - 2]);
        out.push(&c[j - 2] + &tail[0]);
        out.extend_from_slice(&tail[1..]);
        out
    };
    Ok(RationalVector::from_vec_unchecked(out))
}

fn insert_block(k: usize, outer: &[BigRational], inner: &[BigRational]) -> RationalVector {
    let s = inner.len();
    let mut out = Vec::with_capacity(outer.len() + s - 1);
    out.extend_from_slice(&outer[..k - 1]);
    out.extend_from_slice(&inner[..s - 1]);
    out.push(&inner[s - 1] + &outer[k - 1]);
    out.extend_from_slice(&outer[k..]);
    RationalVector::from_vec_unchecked(out)
}

/// `∂_k : K(r) x K(s) -> K(n)`, `n = r + s - 1`.
pub fn assoc_boundary(k: usize, rho: &RationalVector, sigma: &RationalVector) -> Result<RationalVector> {
    let (r, s) = (rho.len(), sigma.len());
    BoundaryIndex::Assoc { k, r, s }.validate()?;
    ensure_member(PolytopeId::assoc(r)?, rho)?;
    ensure_member(PolytopeId::assoc(s)?, sigma)?;
    Ok(insert_block(k, rho.coords(), sigma.coords()))
}

/// `s_j : K(n) -> K(n-1)` for `n >= 3`, `1 <= j <= n`.
pub fn assoc_degeneracy(j: usize, t: &RationalVector) -> Result<RationalVector> {
    let n = t.len();
    if n < 3 {
        return Err(domain!("s_j is defined on K(n) for n >= 3, got n = {n}"));
    }
    ensure_member(PolytopeId::assoc(n)?, t)?;
    degenerate(j, t)
}

/// `δ_k : J(r) x K(s) -> J(n)`, `n = r + s - 1`.
pub fn mult_boundary_k(k: usize, rho: &RationalVector, sigma: &RationalVector) -> Result<RationalVector> {
    let (r, s) = (rho.len(), sigma.len());
    BoundaryIndex::MultK { k, r, s }.validate()?;
    ensure_member(PolytopeId::multipl(r)?, rho)?;
    ensure_member(PolytopeId::assoc(s)?, sigma)?;
    Ok(insert_block(k, rho.coords(), sigma.coords()))
}

/// `δ : K(t) x J(r_1) x ... x J(r_t) -> J(n)`.
///
/// Concatenates the blocks and adds `(1 - a) u_i` to the last coordinate of
/// block `i`, where `tau = (u_1, ..., u_t)`.
pub fn mult_boundary_join(tau: &RationalVector, rhos: &[RationalVector]) -> Result<RationalVector> {
    let blocks: Vec<usize> = rhos.iter().map(RationalVector::len).collect();
    if tau.len() != blocks.len() {
        return Err(domain!("tau has {} coordinates but {} blocks were given", tau.len(), blocks.len()));
    }
    BoundaryIndex::MultJ { blocks }.validate()?;
    ensure_member(PolytopeId::assoc(tau.len())?, tau)?;
    for rho in rhos {
        ensure_member(PolytopeId::multipl(rho.len())?, rho)?;
    }
    let weight = BigRational::one() - offset();
    let mut out = Vec::with_capacity(rhos.iter().map(RationalVector::len).sum());
    for (u, rho) in tau.iter().zip(rhos) {
        let c = rho.coords();
        out.extend_from_slice(&c[..c.len() - 1]);
        out.push(&c[c.len() - 1] + &weight * u);
    }
    Ok(RationalVector::from_vec_unchecked(out))
}

/// `d_j : J(n) -> J(n-1)` for `n >= 2`, `1 <= j <= n`.
pub fn mult_degeneracy(j: usize, t: &RationalVector) -> Result<RationalVector> {
    let n = t.len();
    if n < 2 {
        return Err(domain!("d_j is defined on J(n) for n >= 2, got n = {n}"));
    }
    ensure_member(PolytopeId::multipl(n)?, t)?;
    degenerate(j, t)
}

/// Applies the face map named by `index` to its factor points.
///
/// Factors are `[rho, sigma]` for `Assoc`/`MultK` and `[tau, rho_1, ..., rho_t]`
/// for `MultJ`.
pub fn apply_boundary(index: &BoundaryIndex, factors: &[RationalVector]) -> Result<RationalVector> {
    StandardMaps.apply_boundary(index, factors)
}

/// The five maps of the polytope calculus.
///
/// Every method defaults to the standard definition; overriding one gives a
/// modified calculus for negative testing of the identity checker.
pub trait FaceMaps {
    fn assoc_boundary(&self, k: usize, rho: &RationalVector, sigma: &RationalVector) -> Result<RationalVector> {
        assoc_boundary(k, rho, sigma)
    }

    fn assoc_degeneracy(&self, j: usize, t: &RationalVector) -> Result<RationalVector> {
        assoc_degeneracy(j, t)
    }

    fn mult_boundary_k(&self, k: usize, rho: &RationalVector, sigma: &RationalVector) -> Result<RationalVector> {
        mult_boundary_k(k, rho, sigma)
    }

    fn mult_boundary_join(&self, tau: &RationalVector, rhos: &[RationalVector]) -> Result<RationalVector> {
        mult_boundary_join(tau, rhos)
    }

    fn mult_degeneracy(&self, j: usize, t: &RationalVector) -> Result<RationalVector> {
        mult_degeneracy(j, t)
    }

    fn apply_boundary(&self, index: &BoundaryIndex, factors: &[RationalVector]) -> Result<RationalVector> {
        index.validate()?;
        match *index {
            BoundaryIndex::Assoc { k, r, s } | BoundaryIndex::MultK { k, r, s } => {
                let [rho, sigma] = factors else {
                    return Err(domain!("expected 2 factors, got {}", factors.len()));
                };
                if rho.len() != r || sigma.len() != s {
                    return Err(domain!(
                        "factor lengths ({}, {}) do not match ({r}, {s})",
                        rho.len(),
                        sigma.len()
                    ));
                }
                if matches!(index, BoundaryIndex::Assoc { .. }) {
                    self.assoc_boundary(k, rho, sigma)
                } else {
                    self.mult_boundary_k(k, rho, sigma)
                }
            }
            BoundaryIndex::MultJ { ref blocks } => {
                if factors.len() != blocks.len() + 1 {
                    return Err(domain!("expected {} factors, got {}", blocks.len() + 1, factors.len()));
                }
                let (tau, rhos) = factors.split_first().unwrap();
                for (i, (rho, &r)) in rhos.iter().zip(blocks).enumerate() {
                    if rho.len() != r {
                        return Err(domain!("block {} has length {}, index requires {r}", i + 1, rho.len()));
                    }
                }
                self.mult_boundary_join(tau, rhos)
            }
        }
    }
}

/// The maps exactly as defined.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardMaps;

impl FaceMaps for StandardMaps {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rv(s: &str) -> RationalVector {
        RationalVector::parse(s).unwrap()
    }

    #[test]
    fn assoc_boundary_examples() {
        assert_eq!(assoc_boundary(1, &rv("0,1"), &rv("0,1,1")).unwrap(), rv("0,1,1,1"));
        assert_eq!(assoc_boundary(2, &rv("0,1"), &rv("0,1,1")).unwrap(), rv("0,0,1,2"));
        assert_eq!(assoc_boundary(3, &rv("0,1/2,3/2"), &rv("0,1")).unwrap(), rv("0,1/2,0,5/2"));
    }

    #[test]
    fn assoc_boundary_errors() {
        // (3, 2, 3): k > r
        assert!(assoc_boundary(3, &rv("0,1"), &rv("0,1,1")).is_err());
        // (1, 2, 2) is in A(3); (1, 1, ...) never is
        assert!(assoc_boundary(1, &rv("0,1"), &rv("0,1")).is_ok());
        assert!(assoc_boundary(1, &rv("0,1"), &rv("0,2,0")).is_err());
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(&rv("0,1,1,1")).unwrap(), rv("0,0,1,1"));
        assert_eq!(xi(&rv("0,0,1,2")).unwrap(), rv("0,0,1,1"));
        assert_eq!(xi(&rv("1,1,1")).unwrap(), rv("0,1,1"));
        assert!(xi(&rv("0,-1,2")).is_err());
    }

    #[test]
    fn assoc_degeneracy_examples() {
        assert_eq!(assoc_degeneracy(1, &rv("0,1,1,1")).unwrap(), rv("0,1,1"));
        assert_eq!(assoc_degeneracy(2, &rv("0,1,1,1")).unwrap(), rv("0,1,1"));
        let face = assoc_boundary(2, &rv("0,1"), &rv("0,1,1")).unwrap();
        assert_eq!(assoc_degeneracy(1, &face).unwrap(), rv("0,1,1"));
        assert!(assoc_degeneracy(5, &rv("0,1,1,1")).is_err());
        assert!(assoc_degeneracy(1, &rv("0,1")).is_err());
    }

    #[test]
    fn mult_boundary_examples() {
        assert_eq!(mult_boundary_k(1, &rv("1/2"), &rv("0,1")).unwrap(), rv("0,3/2"));
        assert_eq!(mult_boundary_k(1, &rv("1/2"), &rv("0,1,1")).unwrap(), rv("0,1,3/2"));
        assert!(mult_boundary_k(2, &rv("1/2"), &rv("0,1")).is_err());

        assert_eq!(mult_boundary_join(&rv("0,1"), &[rv("1/2"), rv("1/2")]).unwrap(), rv("1/2,1"));
        assert_eq!(
            mult_boundary_join(&rv("0,1"), &[rv("1/2"), rv("0,3/2")]).unwrap(),
            rv("1/2,0,2")
        );
    }

    #[test]
    fn join_block_mismatch() {
        let index = BoundaryIndex::MultJ { blocks: vec![1, 1] };
        let err = apply_boundary(&index, &[rv("0,1"), rv("1/2"), rv("1/2,1")]);
        assert!(err.is_err());
        assert_eq!(
            apply_boundary(&index, &[rv("0,1"), rv("1/2"), rv("1/2")]).unwrap(),
            rv("1/2,1")
        );
    }

    #[test]
    fn mult_degeneracy_examples() {
        let face = mult_boundary_k(1, &rv("1/2"), &rv("0,1")).unwrap();
        assert_eq!(mult_degeneracy(1, &face).unwrap(), rv("1/2"));
        assert_eq!(mult_degeneracy(2, &rv("1/2,1")).unwrap(), rv("1/2"));
        assert!(mult_degeneracy(3, &rv("1/2,1")).is_err());
        assert!(mult_degeneracy(1, &rv("1/2")).is_err());
    }
}
