use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mv::MvAlgebra;

/// The finite MV-chain `Ł_{d+1} = {0, 1/d, …, 1}`, elements encoded as
/// the numerators `0..=d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MVChain {
    d: u64,
}

impl MVChain {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("a chain needs d ≥ 1".into()));
        }
        Ok(MVChain { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.d + 1
    }

    pub fn check(&self, x: u64) -> Result<u64> {
        if x > self.d {
            return Err(Error::OutOfRange(format!("{x}/{} is not in the chain", self.d)));
        }
        Ok(x)
    }

    pub fn checked_oplus(&self, x: u64, y: u64) -> Result<u64> {
        Ok(self.oplus(&self.check(x)?, &self.check(y)?))
    }

    pub fn checked_neg(&self, x: u64) -> Result<u64> {
        Ok(self.neg(&self.check(x)?))
    }
}

impl MvAlgebra for MVChain {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn neg(&self, x: &u64) -> u64 {
        self.d - x
    }

    fn oplus(&self, x: &u64, y: &u64) -> u64 {
        (x + y).min(self.d)
    }

    fn equal(&self, x: &u64, y: &u64) -> bool {
        x == y
    }
}

impl fmt::Display for MVChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.d + 1)
    }
}

/// A finite product of MV-chains with componentwise operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMV {
    factors: Vec<MVChain>,
}

impl FiniteMV {
    pub fn new(factors: Vec<MVChain>) -> Self {
        FiniteMV { factors }
    }

    /// Product of chains `Ł_{d+1}` for the given `d`s.
    pub fn from_ds(ds: &[u64]) -> Result<Self> {
        Ok(FiniteMV { factors: ds.iter().map(|&d| MVChain::new(d)).collect::<Result<_>>()? })
    }

    /// Parses `"L3xL2"` (factor sizes `d+1`, separated by `x`).
    pub fn parse(src: &str) -> Result<Self> {
        let factors = src
            .split(['x', '×', '*'])
            .map(|part| {
                let part = part.trim();
                let digits = part.strip_prefix('L').or_else(|| part.strip_prefix('Ł')).unwrap_or(part);
                let size: u64 =
                    digits.parse().map_err(|_| Error::Invalid(format!("bad chain '{part}', expected e.g. L3")))?;
                if size < 2 {
                    return Err(Error::Invalid(format!("chain '{part}' needs at least two elements")));
                }
                MVChain::new(size - 1)
            })
            .collect::<Result<_>>()?;
        Ok(FiniteMV { factors })
    }

    pub fn factors(&self) -> &[MVChain] {
        &self.factors
    }

    /// Number of elements (saturating).
    pub fn size(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, c| acc.saturating_mul(c.size()))
    }

    pub fn check(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.factors.len() {
            return Err(Error::Dimension(format!("{} components for {} factors", x.len(), self.factors.len())));
        }
        for (c, &xi) in self.factors.iter().zip(x) {
            c.check(xi)?;
        }
        Ok(())
    }

    /// Mixed-radix index of an element, first factor most significant.
    pub fn index_of(&self, x: &[u64]) -> usize {
        self.factors.iter().zip(x).fold(0usize, |acc, (c, &xi)| acc * c.size() as usize + xi as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, c) in out.iter_mut().zip(&self.factors).rev() {
            let s = c.size() as usize;
            *slot = (idx % s) as u64;
            idx /= s;
        }
        out
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.size() as usize).map(|i| self.element_at(i)).collect()
    }

    pub fn checked_oplus(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.oplus(&x.to_vec(), &y.to_vec()))
    }

    pub fn checked_neg(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.check(x)?;
        Ok(self.neg(&x.to_vec()))
    }
}

impl MvAlgebra for FiniteMV {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    fn neg(&self, x: &Vec<u64>) -> Vec<u64> {
        self.factors.iter().zip(x).map(|(c, xi)| c.neg(xi)).collect()
    }

    fn oplus(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        self.factors.iter().zip(x.iter().zip(y)).map(|(c, (a, b))| c.oplus(a, b)).collect()
    }

    fn equal(&self, x: &Vec<u64>, y: &Vec<u64>) -> bool {
        x == y
    }
}

impl fmt::Display for FiniteMV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A homomorphism between finite MV-algebras, stored as a full table
/// indexed by [`FiniteMV::index_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHom {
    domain: FiniteMV,
    codomain: FiniteMV,
    table: Vec<Vec<u64>>,
}

impl FiniteHom {
    /// Verifies exhaustively that the table preserves `0`, `¬` and `⊕`.
    pub fn new(domain: FiniteMV, codomain: FiniteMV, table: Vec<Vec<u64>>) -> Result<Self> {
        if table.len() as u64 != domain.size() {
            return Err(Error::Invalid(format!("table has {} rows for {} elements", table.len(), domain.size())));
        }
        for y in &table {
            codomain.check(y)?;
        }
        let h = FiniteHom { domain, codomain, table };
        if !h.is_homomorphism() {
            return Err(Error::Invalid("table does not preserve the MV operations".into()));
        }
        Ok(h)
    }

    fn is_homomorphism(&self) -> bool {
        let (a, b) = (&self.domain, &self.codomain);
        if self.table[0] != b.zero() {
            return false;
        }
        let elems = a.elements();
        for x in &elems {
            let hx = &self.table[a.index_of(x)];
            if self.table[a.index_of(&a.neg(x))] != b.neg(hx) {
                return false;
            }
            for y in &elems {
                let hy = &self.table[a.index_of(y)];
                if self.table[a.index_of(&a.oplus(x, y))] != b.oplus(hx, hy) {
                    return false;
                }
            }
        }
        true
    }

    pub fn domain(&self) -> &FiniteMV {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteMV {
        &self.codomain
    }

    pub fn apply(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.domain.check(x)?;
        Ok(self.table[self.domain.index_of(x)].clone())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<usize> = self.table.iter().map(|y| self.codomain.index_of(y)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size() as usize];
        for y in &self.table {
            hit[self.codomain.index_of(y)] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.table.iter().enumerate().all(|(i, y)| self.domain.index_of(y) == i)
    }
}

/// Default cap on the number of elements for exhaustive searches.
pub const DEFAULT_SIZE_BOUND: u64 = 64;

/// All homomorphisms from `a` into a single chain. A homomorphism is fixed
/// by the images `y_i` of the generators `e_i` (`1/d_i` in slot `i`):
/// every element is the disjoint sum `⊕ x_i e_i`, so `h(x) = min(b, Σ x_i y_i)`.
/// Each candidate is then verified on all pairs.
fn homs_into_chain(a: &FiniteMV, c: MVChain) -> Vec<Vec<u64>> {
    let k = a.factors().len();
    let elems = a.elements();
    let mut out = Vec::new();
    let mut ys = vec![0u64; k];
    loop {
        let table: Vec<u64> =
            elems.iter().map(|x| x.iter().zip(&ys).map(|(xi, yi)| xi * yi).sum::<u64>().min(c.d())).collect();
        let ok = elems.iter().enumerate().all(|(ix, x)| {
            table[a.index_of(&a.neg(x))] == c.neg(&table[ix])
                && elems
                    .iter()
                    .enumerate()
                    .all(|(iy, y)| table[a.index_of(&a.oplus(x, y))] == c.oplus(&table[ix], &table[iy]))
        });
        if ok {
            out.push(table);
        }
        // next generator assignment
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            if ys[pos] < c.d() {
                ys[pos] += 1;
                break;
            }
            ys[pos] = 0;
            pos += 1;
        }
    }
}

/// Every homomorphism `a → b`. A map into a product is a tuple of maps
/// into the factor chains, so the result is a cartesian product.
pub fn enumerate_homomorphisms(a: &FiniteMV, b: &FiniteMV, bound: u64) -> Result<Vec<FiniteHom>> {
    for alg in [a, b] {
        if alg.size() > bound {
            return Err(Error::TooLarge { size: alg.size(), bound });
        }
    }
    let per_factor: Vec<Vec<Vec<u64>>> = b.factors().iter().map(|&c| homs_into_chain(a, c)).collect();
    let n = a.size() as usize;
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_factor.len()];
    if per_factor.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let table: Vec<Vec<u64>> =
            (0..n).map(|ix| choice.iter().zip(&per_factor).map(|(&ci, f)| f[ci][ix]).collect()).collect();
        out.push(FiniteHom { domain: a.clone(), codomain: b.clone(), table });
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if choice[pos] + 1 < per_factor[pos].len() {
                choice[pos] += 1;
                break;
            }
            choice[pos] = 0;
        }
    }
}

pub fn enumerate_endomorphisms(a: &FiniteMV) -> Result<Vec<FiniteHom>> {
    enumerate_homomorphisms(a, a, DEFAULT_SIZE_BOUND)
}

/// Summary of an exhaustive hopficity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfianReport {
    pub algebra: String,
    pub endo_count: usize,
    pub surjective_count: usize,
    pub hopfian: bool,
}

/// True iff every surjective endomorphism is injective.
pub fn is_hopfian_finite(a: &FiniteMV) -> Result<bool> {
    Ok(hopfian_report(a)?.hopfian)
}

pub fn hopfian_report(a: &FiniteMV) -> Result<HopfianReport> {
    let endos = enumerate_endomorphisms(a)?;
    let surjective: Vec<&FiniteHom> = endos.iter().filter(|h| h.is_surjective()).collect();
    Ok(HopfianReport {
        algebra: a.to_string(),
        endo_count: endos.len(),
        surjective_count: surjective.len(),
        hopfian: surjective.iter().all(|h| h.is_injective()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_ops() {
        let l3 = MVChain::new(2).unwrap();
        assert_eq!(l3.checked_oplus(1, 1).unwrap(), 2);
        let l4 = MVChain::new(3).unwrap();
        assert_eq!(l4.checked_neg(1).unwrap(), 2);
        let l6 = MVChain::new(5).unwrap();
        assert_eq!(l6.checked_oplus(2, 2).unwrap(), 4);
        assert!(l3.checked_oplus(3, 0).is_err());
        assert!(MVChain::new(0).is_err());
    }

    #[test]
    fn product_indexing() {
        let a = FiniteMV::parse("L3xL2").unwrap();
        assert_eq!(a.size(), 6);
        for (i, x) in a.elements().iter().enumerate() {
            assert_eq!(a.index_of(x), i);
        }
        assert_eq!(a.to_string(), "L3xL2");
        assert!(FiniteMV::parse("L1").is_err());
        assert!(a.checked_oplus(&[1, 1], &[2]).is_err());
    }

    #[test]
    fn endomorphism_counts() {
        let count = |s: &str| enumerate_endomorphisms(&FiniteMV::parse(s).unwrap()).unwrap();
        let e = count("L2");
        assert_eq!(e.len(), 1);
        assert!(e[0].is_identity());
        let e = count("L3");
        assert_eq!(e.len(), 1);
        assert!(e[0].is_identity());
        assert_eq!(count("L2xL2").len(), 4);
        // L3 → L2 has no homomorphism, L2 → L3 has one
        assert_eq!(count("L3xL2").len(), 2);
        assert!(hopfian_report(&FiniteMV::parse("L2xL2").unwrap()).unwrap().hopfian);
    }

    #[test]
    fn size_bound() {
        let big = FiniteMV::from_ds(&[64]).unwrap();
        assert!(matches!(enumerate_endomorphisms(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn hom_validation() {
        let l2 = FiniteMV::parse("L2").unwrap();
        let l3 = FiniteMV::parse("L3").unwrap();
        assert!(FiniteHom::new(l2.clone(), l3.clone(), vec![vec![0], vec![2]]).is_ok());
        assert!(FiniteHom::new(l2, l3, vec![vec![0], vec![1]]).is_err());
    }
}
