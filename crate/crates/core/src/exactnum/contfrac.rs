use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BigInt, QuadExt, Rational};
use crate::error::{Error, Result};

/// A simple continued fraction `[a0; a1, a2, ...]` with an optional purely
/// periodic tail repeated forever after the finite head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    head: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Every quotient after the first must be at least 1.
    pub fn new(head: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        let first_ok = head.first().or(period.first()).is_some();
        if !first_ok {
            return Err(Error::Invalid("empty continued fraction".into()));
        }
        let rest = head.iter().chain(period.iter()).skip(1);
        if rest.clone().any(|a| !a.is_positive()) {
            return Err(Error::Invalid("partial quotients after the first must be >= 1".into()));
        }
        if head.is_empty() && !period[0].is_positive() {
            // the first term repeats, so it must also be positive
            return Err(Error::Invalid("periodic quotients must be >= 1".into()));
        }
        Ok(ContinuedFraction { head, period })
    }

    pub fn finite(quotients: &[i64]) -> Result<Self> {
        Self::new(quotients.iter().map(|&q| BigInt::from(q)).collect(), vec![])
    }

    pub fn periodic(head: &[i64], period: &[i64]) -> Result<Self> {
        Self::new(head.iter().map(|&q| BigInt::from(q)).collect(), period.iter().map(|&q| BigInt::from(q)).collect())
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// The `i`-th partial quotient, expanding the periodic tail.
    pub fn quotient(&self, i: usize) -> Option<&BigInt> {
        if i < self.head.len() {
            Some(&self.head[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(&self.period[(i - self.head.len()) % self.period.len()])
        }
    }

    /// The first `k` convergents `p_i/q_i`.
    pub fn convergents(&self, k: usize) -> Result<Vec<Rational>> {
        if k == 0 {
            return Err(Error::Invalid("need at least one convergent".into()));
        }
        let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
        let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let a = self
                .quotient(i)
                .ok_or_else(|| Error::OutOfRange(format!("only {} partial quotients available", self.head.len())))?;
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push(Rational::new(p.clone(), q.clone()));
        }
        Ok(out)
    }

    /// Expansion of a quadratic number. Irrational inputs always yield an
    /// eventually periodic expansion; rational inputs a finite one.
    pub fn from_quad(x: &QuadExt) -> Self {
        if let Some(r) = x.to_rational() {
            return Self::from_rational(&r);
        }
        // Write x = (P + sqrt(N)) / Q with Q | N - P^2.
        let a = x.a();
        let b = x.b();
        let c = a.denom().lcm(b.denom());
        let big_a = a.numer() * (&c / a.denom());
        let big_b = b.numer() * (&c / b.denom());
        let mut n = &big_b * &big_b * BigInt::from(x.base());
        let (mut p, mut q) = if big_b.is_negative() { (-big_a, -c) } else { (big_a, c) };
        if !((&n - &p * &p) % &q).is_zero() {
            let qa = q.abs();
            p *= &qa;
            n = &n * &qa * &qa;
            q *= &qa;
        }
        let root = n.sqrt();
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut quotients = Vec::new();
        loop {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = quotients.split_off(start);
                return ContinuedFraction { head: quotients, period };
            }
            seen.insert((p.clone(), q.clone()), quotients.len());
            let a_k = if q.is_positive() { (&p + &root).div_floor(&q) } else { -((&p + &root).div_floor(&-&q)) - 1 };
            let p_next = &a_k * &q - &p;
            let q_next = (&n - &p_next * &p_next) / &q;
            quotients.push(a_k);
            p = p_next;
            q = q_next;
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
        let mut head = Vec::new();
        while !den.is_zero() {
            let (a, rem) = num.div_mod_floor(&den);
            head.push(a);
            num = std::mem::replace(&mut den, rem);
        }
        ContinuedFraction { head, period: vec![] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn convergent_examples() {
        let golden = ContinuedFraction::periodic(&[0], &[1]).unwrap();
        assert_eq!(golden.convergents(4).unwrap(), vec![int(0), int(1), rat(1, 2), rat(2, 3)]);
        assert_eq!(ContinuedFraction::finite(&[2]).unwrap().convergents(1).unwrap(), vec![int(2)]);
        let silver = ContinuedFraction::periodic(&[0], &[2]).unwrap();
        assert_eq!(silver.convergents(3).unwrap(), vec![int(0), rat(1, 2), rat(2, 5)]);
    }

    #[test]
    fn finite_runs_out() {
        let cf = ContinuedFraction::finite(&[1, 2]).unwrap();
        assert!(cf.convergents(3).is_err());
        assert!(cf.convergents(0).is_err());
    }

    #[test]
    fn validation() {
        assert!(ContinuedFraction::finite(&[0, 0]).is_err());
        assert!(ContinuedFraction::finite(&[]).is_err());
        assert!(ContinuedFraction::periodic(&[], &[0]).is_err());
        assert!(ContinuedFraction::finite(&[-3, 2]).is_ok());
    }

    #[test]
    fn quadratic_expansions() {
        let g = QuadExt::golden_conjugate();
        let cf = ContinuedFraction::from_quad(&g);
        assert_eq!(cf, ContinuedFraction::periodic(&[0], &[1]).unwrap());
        let sqrt2 = QuadExt::new(int(0), int(1), 2).unwrap();
        assert_eq!(ContinuedFraction::from_quad(&sqrt2), ContinuedFraction::periodic(&[1], &[2]).unwrap());
        let sqrt7 = QuadExt::new(int(0), int(1), 7).unwrap();
        assert_eq!(ContinuedFraction::from_quad(&sqrt7), ContinuedFraction::periodic(&[2], &[1, 1, 1, 4]).unwrap());
        // (3 - sqrt 5)/2 = [0; 2, 1, 1, ...]
        let x = QuadExt::new(rat(3, 2), rat(-1, 2), 5).unwrap();
        assert_eq!(ContinuedFraction::from_quad(&x), ContinuedFraction::periodic(&[0, 2], &[1]).unwrap());
        // -sqrt 2 = [-2; 1, 1, 2, 2, ...]
        let y = QuadExt::new(int(0), int(-1), 2).unwrap();
        assert_eq!(ContinuedFraction::from_quad(&y), ContinuedFraction::periodic(&[-2, 1, 1], &[2]).unwrap());
    }

    #[test]
    fn rational_expansion() {
        assert_eq!(ContinuedFraction::from_rational(&rat(2, 5)), ContinuedFraction::finite(&[0, 2, 2]).unwrap());
        assert_eq!(ContinuedFraction::from_rational(&rat(-7, 3)).convergents(3).unwrap().last(), Some(&rat(-7, 3)));
    }

    #[test]
    fn convergents_alternate_around_quadratic() {
        for x in [
            QuadExt::golden_conjugate(),
            QuadExt::new(int(0), int(1), 2).unwrap(),
            QuadExt::new(rat(1, 3), rat(2, 7), 13).unwrap(),
        ] {
            let cs = ContinuedFraction::from_quad(&x).convergents(12).unwrap();
            for (i, c) in cs.iter().enumerate() {
                let ord = x.cmp_rational(c);
                if i % 2 == 0 {
                    assert_eq!(ord, std::cmp::Ordering::Greater, "{x} vs {c}");
                } else {
                    assert_eq!(ord, std::cmp::Ordering::Less, "{x} vs {c}");
                }
            }
            for w in cs.windows(2).skip(1) {
                assert!(w[1].denom() > w[0].denom());
            }
        }
    }
}
