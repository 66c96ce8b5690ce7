//! Exact rational tuples.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

/// Shorthand for the rational `num / den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| domain!("malformed rational {s:?}"))?;
    let den = BigInt::from_str(den).map_err(|_| domain!("malformed rational {s:?}"))?;
    if den.is_zero() {
        return Err(domain!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form `"p/q"`: lowest terms, `q > 0`, always with a denominator.
pub fn format_rational(q: &BigRational) -> alloc::string::String {
    let mut out = q.numer().to_string();
    out.push('/');
    out.push_str(&q.denom().to_string());
    out
}

/// A nonempty tuple of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        Ok(Self(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Result<Self> {
        if coords.iter().any(|&(_, d)| d == 0) {
            return Err(domain!("zero denominator"));
        }
        Self::new(coords.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    /// Parses a comma separated list such as `"0, 1/2, 3/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<BigRational>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigRational> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, BigRational> {
        self.0.iter()
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Running sums `t_1, t_1 + t_2, ...`.
    pub fn prefix_sums(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        self.0
            .iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// The coordinates as canonical `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<alloc::string::String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a RationalVector {
    type Item = &'a BigRational;
    type IntoIter = core::slice::Iter<'a, BigRational>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if x.denom().is_one() {
                write!(f, "{}", x.numer())?;
            } else {
                write!(f, "{}/{}", x.numer(), x.denom())?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let v = RationalVector::parse("0, 1/2, 6/4, -3").unwrap();
        assert_eq!(v.coords()[2], ratio(3, 2));
        assert_eq!(v.to_strings(), ["0/1", "1/2", "3/2", "-3/1"]);
        assert_eq!(alloc::format!("{v}"), "(0, 1/2, 3/2, -3)");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(RationalVector::new(Vec::new()).is_err());
        assert_eq!(format_rational(&ratio(2, -4)), "-1/2");
    }

    #[test]
    fn prefix_sums() {
        let v = RationalVector::from_ratios(&[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(v.prefix_sums(), [ratio(0, 1), ratio(1, 2), ratio(2, 1)]);
        assert_eq!(v.sum(), ratio(2, 1));
    }
}
