//! Exact scalars: rationals, rational points, real quadratic fields and
//! continued fractions.

mod contfrac;
mod quad;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use contfrac::ContinuedFraction;
pub use num_bigint::BigInt;
pub use quad::{group_z_plus_z_equal, QuadExt};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, including `q = 1`.
pub fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// A point with rational coordinates. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint(pub Vec<Rational>);

impl RatPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RatPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RatPoint(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn from_pairs(coords: &[(i64, i64)]) -> Self {
        RatPoint(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn zero(n: usize) -> Self {
        RatPoint(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative() && *c <= Rational::one())
    }

    pub fn sub(&self, other: &RatPoint) -> Vec<Rational> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// Parses a comma-separated coordinate list such as `1/2,1/3`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Invalid("empty point".into()));
        }
        Ok(RatPoint(coords))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rat).collect()
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Least common denominator of the coordinates of `p`.
pub fn den(p: &RatPoint) -> BigInt {
    p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// The mediant `(p+r)/(q+s)`, reduced.
pub fn farey_mediant(x: &Rational, y: &Rational) -> Rational {
    Rational::new(x.numer() + y.numer(), x.denom() + y.denom())
}

/// Euler's totient by trial division; small arguments only.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
