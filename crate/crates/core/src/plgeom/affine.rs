use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, QuadExt, RatPoint, Rational};

/// An affine functional `x ↦ c·x + k` with integer coefficients. Used both
/// as the linear piece of a PL function and as a slicing hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntAffine {
    pub coeffs: Vec<BigInt>,
    pub offset: BigInt,
}

impl IntAffine {
    pub fn new(coeffs: Vec<BigInt>, offset: BigInt) -> Self {
        IntAffine { coeffs, offset }
    }

    pub fn from_ints(coeffs: &[i64], offset: i64) -> Self {
        IntAffine { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(), offset: BigInt::from(offset) }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        IntAffine { coeffs: vec![BigInt::zero(); n], offset: c.into() }
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i] = BigInt::one();
        IntAffine { coeffs, offset: BigInt::zero() }
    }

    /// Clears denominators of a rational functional, scaling by the least
    /// positive integer that makes every coefficient integral. Positivity
    /// sets are preserved.
    pub fn from_rational(coeffs: &[Rational], offset: &Rational) -> Self {
        let l = coeffs.iter().chain(std::iter::once(offset)).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = |r: &Rational| r.numer() * (&l / r.denom());
        IntAffine { coeffs: coeffs.iter().map(scale).collect(), offset: scale(offset) }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.offset.is_zero()
    }

    pub fn eval(&self, p: &RatPoint) -> Rational {
        let mut acc = Rational::from_integer(self.offset.clone());
        for (c, x) in self.coeffs.iter().zip(p.coords()) {
            if !c.is_zero() {
                acc += x * c;
            }
        }
        acc
    }

    pub fn eval_quad(&self, p: &[QuadExt]) -> QuadExt {
        let d = p.first().map_or(2, QuadExt::base);
        let mut acc = QuadExt::rational(Rational::from_integer(self.offset.clone()), d);
        for (c, x) in self.coeffs.iter().zip(p) {
            acc = &acc + &x.scale(&Rational::from_integer(c.clone()));
        }
        acc
    }

    pub fn add(&self, other: &IntAffine) -> IntAffine {
        IntAffine {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            offset: &self.offset + &other.offset,
        }
    }

    pub fn sub(&self, other: &IntAffine) -> IntAffine {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntAffine {
        IntAffine { coeffs: self.coeffs.iter().map(|c| -c).collect(), offset: -&self.offset }
    }

    pub fn scale(&self, k: &BigInt) -> IntAffine {
        IntAffine { coeffs: self.coeffs.iter().map(|c| c * k).collect(), offset: &self.offset * k }
    }

    /// `self ∘ map`.
    pub fn compose(&self, map: &AffineMap) -> IntAffine {
        let n = map.domain_dim();
        let mut coeffs = vec![BigInt::zero(); n];
        let mut offset = self.offset.clone();
        for (c, (row, off)) in self.coeffs.iter().zip(map.matrix.iter().zip(&map.offset)) {
            for (acc, m) in coeffs.iter_mut().zip(row) {
                *acc += c * m;
            }
            offset += c * off;
        }
        IntAffine { coeffs, offset }
    }

    /// Divides out the gcd of all coefficients (the sign is kept).
    pub fn primitive(&self) -> IntAffine {
        let g = self.coeffs.iter().fold(self.offset.abs(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntAffine { coeffs: self.coeffs.iter().map(|c| c / &g).collect(), offset: &self.offset / &g }
    }
}

impl fmt::Display for IntAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{}", i + 1);
            terms.push(if c.is_one() {
                var
            } else if *c == -BigInt::one() {
                format!("-{var}")
            } else {
                format!("{c}{var}")
            });
        }
        if !self.offset.is_zero() || terms.is_empty() {
            terms.push(self.offset.to_string());
        }
        let s = terms.join(" + ").replace("+ -", "- ");
        write!(f, "{s}")
    }
}

/// An affine functional with rational coefficients, used for half-space
/// descriptions `f(x) ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatAffine {
    pub coeffs: Vec<Rational>,
    pub offset: Rational,
}

impl RatAffine {
    pub fn eval(&self, p: &RatPoint) -> Rational {
        let mut acc = self.offset.clone();
        for (c, x) in self.coeffs.iter().zip(p.coords()) {
            if !c.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn eval_quad(&self, p: &[QuadExt]) -> QuadExt {
        let d = p.first().map_or(2, QuadExt::base);
        let mut acc = QuadExt::rational(self.offset.clone(), d);
        for (c, x) in self.coeffs.iter().zip(p) {
            acc = &acc + &x.scale(c);
        }
        acc
    }

    pub fn from_int(h: &IntAffine) -> Self {
        RatAffine {
            coeffs: h.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(),
            offset: Rational::from_integer(h.offset.clone()),
        }
    }

    /// Pulls the functional back along `x ↦ map(x)`.
    pub fn pullback(&self, map: &AffineMap) -> RatAffine {
        let n = map.domain_dim();
        let mut coeffs = vec![Rational::zero(); n];
        let mut offset = self.offset.clone();
        for (c, (row, off)) in self.coeffs.iter().zip(map.matrix.iter().zip(&map.offset)) {
            if c.is_zero() {
                continue;
            }
            for (acc, m) in coeffs.iter_mut().zip(row) {
                *acc += c * m;
            }
            offset += c * off;
        }
        RatAffine { coeffs, offset }
    }

    pub fn is_trivially_nonneg(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.offset.is_negative()
    }
}

/// An integer affine map `x ↦ M x + b` from `R^n` to `R^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub matrix: Vec<Vec<BigInt>>,
    pub offset: Vec<BigInt>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<BigInt>>, offset: Vec<BigInt>) -> Result<Self> {
        if matrix.len() != offset.len() {
            return Err(Error::Dimension("matrix rows and offset length differ".into()));
        }
        if let Some(first) = matrix.first() {
            if matrix.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Dimension("ragged matrix".into()));
            }
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn from_ints(matrix: &[&[i64]], offset: &[i64]) -> Result<Self> {
        Self::new(
            matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            offset.iter().map(|&v| BigInt::from(v)).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let matrix =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        AffineMap { matrix, offset: vec![BigInt::zero(); n] }
    }

    pub fn from_rows(rows: &[IntAffine]) -> Self {
        AffineMap {
            matrix: rows.iter().map(|r| r.coeffs.clone()).collect(),
            offset: rows.iter().map(|r| r.offset.clone()).collect(),
        }
    }

    pub fn rows(&self) -> Vec<IntAffine> {
        self.matrix.iter().zip(&self.offset).map(|(r, o)| IntAffine::new(r.clone(), o.clone())).collect()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, p: &RatPoint) -> RatPoint {
        RatPoint::new(self.rows().iter().map(|r| r.eval(p)).collect())
    }

    pub fn apply_quad(&self, p: &[QuadExt]) -> Vec<QuadExt> {
        self.rows().iter().map(|r| r.eval_quad(p)).collect()
    }
}
