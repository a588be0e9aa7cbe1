use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{parse_rat, BigInt, Rational};
use crate::error::{Error, Result};

/// An element `a + b*sqrt(D)` of the real quadratic field `Q(sqrt D)`.
///
/// `D` is square-free and at least 2. Values from different fields never
/// interoperate: binary operators panic on a field mismatch, and the
/// fallible entry points report [`Error::FieldMismatch`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::Invalid(format!("sqrt base {d} is not square-free and >= 2")));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rational, d: u64) -> Self {
        QuadExt { a, b: Rational::zero(), d }
    }

    /// `(√5 − 1)/2`.
    pub fn golden_conjugate() -> Self {
        QuadExt { a: super::rat(-1, 2), b: super::rat(1, 2), d: 5 }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn base(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn zero_in(d: u64) -> Self {
        Self::rational(Rational::zero(), d)
    }

    pub fn one_in(d: u64) -> Self {
        Self::rational(Rational::one(), d)
    }

    pub fn same_field(&self, other: &QuadExt) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.d, other.d))
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − b²D`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadExt { a: &self.a + r, b: self.b.clone(), d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Option<Self> {
        rhs.inverse().map(|inv| self * &inv)
    }

    /// Exact sign of `a + b√D`, decided by comparing `a²` with `b²D`
    /// when the two terms have opposite signs.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.add_rational(&-r).sign().cmp(&0)
    }

    /// Floor as an integer, decided exactly.
    pub fn floor(&self) -> BigInt {
        // Start from a float estimate then correct by exact comparisons.
        let approx = self.to_f64().floor();
        let mut k = if approx.is_finite() { BigInt::from(approx as i64) } else { BigInt::zero() };
        while self.cmp_rational(&Rational::from_integer(k.clone())) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&k + 1)) != Ordering::Less {
            k += 1;
        }
        k
    }

    /// Approximate value, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Parses `a+b*sqrt(D)` (also `a-b*sqrt(D)`, `b*sqrt(D)`), rationals in
    /// `p/q` or integer form.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("not a quadratic number: {s:?}"));
        let idx = s.find("sqrt(").ok_or_else(bad)?;
        let tail = &s[idx + 5..];
        let d_str = tail.strip_suffix(')').ok_or_else(bad)?;
        let d: u64 = d_str.parse().map_err(|_| bad())?;
        let mut head = &s[..idx];
        head = head.strip_suffix('*').unwrap_or(head);
        // split `head` into the rational part and the coefficient of sqrt(D)
        let split = head
            .char_indices()
            .skip(1)
            .find(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with(['+', '-']))
            .map(|(i, _)| i);
        let (a, b) = match split {
            Some(i) => {
                let a = parse_rat(&head[..i])?;
                let rest = &head[i..];
                let rest = rest.strip_prefix('+').unwrap_or(rest);
                (a, parse_coeff(rest).ok_or_else(bad)?)
            }
            None => (Rational::zero(), parse_coeff(head).ok_or_else(bad)?),
        };
        QuadExt::new(a, b, d)
    }
}

fn parse_coeff(s: &str) -> Option<Rational> {
    match s {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_rat(s).ok(),
    }
}

fn sgn(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadExt {
    /// `a+b*sqrt(D)`, dropping a zero part; rational values print as `a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".into()
        } else {
            format!("{}*", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else {
            let sep = if self.b.is_negative() { "" } else { "+" };
            write!(f, "{}{sep}{b}sqrt({})", self.a, self.d)
        }
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        Some((self - other).sign().cmp(&0))
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mixed quadratic fields");
        QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mixed quadratic fields");
        QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mixed quadratic fields");
        let d = Rational::from_integer(BigInt::from(self.d));
        QuadExt { a: &self.a * &rhs.a + &self.b * &rhs.b * d, b: &self.a * &rhs.b + &self.b * &rhs.a, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        &self + &rhs
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        &self - &rhs
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        &self * &rhs
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// Decides `Za + Z = Zb + Z` for irrational `a, b` in `(0,1)`: the two
/// groups coincide exactly when `b = a` or `b = 1 − a`.
pub fn group_z_plus_z_equal(a: &QuadExt, b: &QuadExt) -> Result<bool> {
    a.same_field(b)?;
    for x in [a, b] {
        if x.is_rational() {
            return Err(Error::Invalid(format!("{x} is rational; the criterion needs irrationals")));
        }
        if x.sign() <= 0 || x.cmp_rational(&Rational::one()) != Ordering::Less {
            return Err(Error::OutOfRange(format!("{x} is not in (0,1)")));
        }
    }
    let one = QuadExt::one_in(a.base());
    Ok(a == b || *b == &one - a)
}
