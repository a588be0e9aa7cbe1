use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, QuadExt, Rational};

/// How the irrational `θ ∈ (0,1)` is given: exactly, or as a prefix of its
/// continued fraction expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theta {
    Quad(QuadExt),
    Prefix(Vec<BigInt>),
}

impl Theta {
    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Theta::Quad(QuadExt::golden_conjugate())
    }

    pub fn quad(theta: QuadExt) -> Result<Self> {
        if theta.is_rational() {
            return Err(Error::Invalid(format!("{theta} is rational")));
        }
        if !theta.is_positive() || theta >= QuadExt::one_in(theta.base()) {
            return Err(Error::OutOfRange(format!("{theta} is outside (0,1)")));
        }
        Ok(Theta::Quad(theta))
    }

    /// Quotients `[0; a1, …, ak]` of an irrational in `(0,1)`.
    pub fn prefix(quotients: Vec<BigInt>) -> Result<Self> {
        if quotients.first().is_none_or(|a| !a.is_zero()) {
            return Err(Error::Invalid("a prefix for θ in (0,1) starts with 0".into()));
        }
        if quotients[1..].iter().any(|a| !a.is_positive()) {
            return Err(Error::Invalid("partial quotients after the first must be >= 1".into()));
        }
        Ok(Theta::Prefix(quotients))
    }

    /// Open interval known to contain `θ` for a prefix: between the last
    /// convergent and its mediant with the one before.
    fn bracket(quotients: &[BigInt]) -> (Rational, Rational) {
        let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
        let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
        for a in quotients {
            let pn = a * &p + &p_prev;
            let qn = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, pn);
            q_prev = std::mem::replace(&mut q, qn);
        }
        let last = Rational::new(p.clone(), q.clone());
        let med = Rational::new(&p + &p_prev, &q + &q_prev);
        if last < med {
            (last, med)
        } else {
            (med, last)
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Quad(q) => write!(f, "{q}"),
            Theta::Prefix(a) => {
                let tail: Vec<String> = a[1..].iter().map(ToString::to_string).collect();
                write!(f, "[{}; {}, ...]", a[0], tail.join(", "))
            }
        }
    }
}

/// Sign of `a + bθ`, or `Undecided` when a continued fraction prefix is
/// too short to settle it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    Zero,
    Negative,
    Undecided,
}

impl Positivity {
    fn from_sign(s: i8) -> Self {
        match s.cmp(&0) {
            Ordering::Greater => Positivity::Positive,
            Ordering::Less => Positivity::Negative,
            Ordering::Equal => Positivity::Zero,
        }
    }
}

/// The totally ordered group `Z + Zθ` with unit `1`, elements `(a, b)`
/// standing for `a + bθ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffrosShenGroup {
    theta: Theta,
}

pub type EsElement = (BigInt, BigInt);

impl EffrosShenGroup {
    pub fn new(theta: Theta) -> Self {
        EffrosShenGroup { theta }
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    pub fn unit(&self) -> EsElement {
        (BigInt::one(), BigInt::zero())
    }

    pub fn positivity(&self, x: &EsElement) -> Positivity {
        let (a, b) = x;
        if b.is_zero() {
            return Positivity::from_sign(sign_of(a));
        }
        match &self.theta {
            Theta::Quad(t) => {
                let v = t.scale(&Rational::from_integer(b.clone())).add_rational(&Rational::from_integer(a.clone()));
                Positivity::from_sign(v.sign())
            }
            Theta::Prefix(qs) => {
                let (lo, hi) = Theta::bracket(qs);
                let at = |t: &Rational| Rational::from_integer(a.clone()) + Rational::from_integer(b.clone()) * t;
                let (s0, s1) = (sign_of_rat(&at(&lo)), sign_of_rat(&at(&hi)));
                // θ is strictly inside the bracket and b ≠ 0, so a zero at
                // one end is settled by the other end
                match (s0, s1) {
                    (x, y) if x == y => Positivity::from_sign(x),
                    (0, y) | (y, 0) => Positivity::from_sign(y),
                    _ => Positivity::Undecided,
                }
            }
        }
    }

    /// `a + bθ ≥ 0`, `None` when undecided.
    pub fn es_positive(&self, x: &EsElement) -> Option<bool> {
        match self.positivity(x) {
            Positivity::Positive | Positivity::Zero => Some(true),
            Positivity::Negative => Some(false),
            Positivity::Undecided => None,
        }
    }

    pub fn cmp(&self, x: &EsElement, y: &EsElement) -> Option<Ordering> {
        match self.positivity(&self.sub(x, y)) {
            Positivity::Positive => Some(Ordering::Greater),
            Positivity::Zero => Some(Ordering::Equal),
            Positivity::Negative => Some(Ordering::Less),
            Positivity::Undecided => None,
        }
    }

    pub fn add(&self, x: &EsElement, y: &EsElement) -> EsElement {
        (&x.0 + &y.0, &x.1 + &y.1)
    }

    pub fn sub(&self, x: &EsElement, y: &EsElement) -> EsElement {
        (&x.0 - &y.0, &x.1 - &y.1)
    }

    pub fn neg(&self, x: &EsElement) -> EsElement {
        (-&x.0, -&x.1)
    }

    pub fn join(&self, x: &EsElement, y: &EsElement) -> Option<EsElement> {
        Some(if self.cmp(x, y)? == Ordering::Less { y.clone() } else { x.clone() })
    }

    pub fn meet(&self, x: &EsElement, y: &EsElement) -> Option<EsElement> {
        Some(if self.cmp(x, y)? == Ordering::Greater { y.clone() } else { x.clone() })
    }
}

fn sign_of(a: &BigInt) -> i8 {
    if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_of_rat(a: &Rational) -> i8 {
    if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EsElement {
        (BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn golden_signs() {
        let g = EffrosShenGroup::new(Theta::golden());
        assert_eq!(g.positivity(&e(-1, 2)), Positivity::Positive);
        assert_eq!(g.positivity(&e(0, 0)), Positivity::Zero);
        assert_eq!(g.positivity(&e(2, -3)), Positivity::Positive);
        assert_eq!(g.positivity(&e(7, -3)), Positivity::Positive);
        assert_eq!(g.positivity(&e(1, -2)), Positivity::Negative);
        assert_eq!(g.join(&e(1, 0), &e(0, 2)).unwrap(), e(0, 2));
        assert_eq!(g.meet(&e(1, 0), &e(0, 2)).unwrap(), e(1, 0));
    }

    #[test]
    fn prefixes() {
        let ones = |k: usize| {
            let mut v = vec![BigInt::zero()];
            v.extend(std::iter::repeat_n(BigInt::one(), k));
            v
        };
        let short = EffrosShenGroup::new(Theta::prefix(ones(2)).unwrap());
        assert_eq!(short.positivity(&e(-3, 5)), Positivity::Undecided);
        let long = EffrosShenGroup::new(Theta::prefix(ones(12)).unwrap());
        assert_eq!(long.positivity(&e(-3, 5)), Positivity::Positive);
        assert_eq!(long.positivity(&e(-1, 2)), Positivity::Positive);
        assert_eq!(long.positivity(&e(2, -3)), Positivity::Positive);
        assert!(Theta::prefix(vec![BigInt::one()]).is_err());
        assert!(Theta::quad(QuadExt::one_in(5)).is_err());
    }
}
