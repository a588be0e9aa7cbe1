use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::germs::{Germ2DAlgebra, LexElement};
use crate::error::{Error, Result};
use crate::exactnum::BigInt;
use crate::finitemv::{Chang, FiniteMV, MVChain};
use crate::mcnaughton::{cube, LGroupFunction, McNAlgebra};
use crate::mv::MvAlgebra;

/// A lattice-ordered abelian group with a strong order unit.
pub trait UnitalLGroup {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// `|x| = x ∨ −x`
    fn abs(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.neg(x))
    }

    fn le(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.equal(&self.meet(x, y), x)
    }
}

/// The unit interval `Γ(G, u) = [0, u]` with `x ⊕ y = (x + y) ∧ u` and
/// `¬x = u − x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma<G>(pub G);

impl<G: UnitalLGroup> MvAlgebra for Gamma<G> {
    type Elem = G::Elem;

    fn zero(&self) -> G::Elem {
        self.0.zero()
    }

    fn neg(&self, x: &G::Elem) -> G::Elem {
        self.0.sub(&self.0.unit(), x)
    }

    fn oplus(&self, x: &G::Elem, y: &G::Elem) -> G::Elem {
        self.0.meet(&self.0.add(x, y), &self.0.unit())
    }

    fn equal(&self, x: &G::Elem, y: &G::Elem) -> bool {
        self.0.equal(x, y)
    }
}

impl<G: UnitalLGroup> Gamma<G> {
    /// Whether `x` lies in `[0, u]`.
    pub fn contains(&self, x: &G::Elem) -> bool {
        let g = &self.0;
        g.le(&g.zero(), x) && g.le(x, &g.unit())
    }
}

/// `(Z^k, u)` with the componentwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZProduct {
    pub units: Vec<BigInt>,
}

impl ZProduct {
    pub fn new(units: Vec<BigInt>) -> Result<Self> {
        if units.is_empty() || units.iter().any(|u| !u.is_positive()) {
            return Err(Error::Invalid("units must be positive integers".into()));
        }
        Ok(ZProduct { units })
    }
}

impl UnitalLGroup for ZProduct {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.units.len()]
    }

    fn unit(&self) -> Vec<BigInt> {
        self.units.clone()
    }

    fn add(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    fn neg(&self, x: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().map(|a| -a).collect()
    }

    fn join(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().zip(y).map(|(a, b)| a.max(b).clone()).collect()
    }

    fn meet(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().zip(y).map(|(a, b)| a.min(b).clone()).collect()
    }

    fn equal(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> bool {
        x == y
    }
}

/// `Z ×_lex Z` with unit `(1, 0)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZLexZ;

impl UnitalLGroup for ZLexZ {
    type Elem = (BigInt, BigInt);

    fn zero(&self) -> (BigInt, BigInt) {
        (BigInt::zero(), BigInt::zero())
    }

    fn unit(&self) -> (BigInt, BigInt) {
        (BigInt::one(), BigInt::zero())
    }

    fn add(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (&x.0 + &y.0, &x.1 + &y.1)
    }

    fn neg(&self, x: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (-&x.0, -&x.1)
    }

    fn join(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        x.max(y).clone()
    }

    fn meet(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        x.min(y).clone()
    }

    fn equal(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> bool {
        x == y
    }
}

/// The free unital l-group `(M_n, 1)` of PL functions on `[0,1]^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PLGroup {
    pub n: usize,
}

impl UnitalLGroup for PLGroup {
    type Elem = LGroupFunction;

    fn zero(&self) -> LGroupFunction {
        LGroupFunction::constant_on(cube(self.n).expect("supported arity"), 0)
    }

    fn unit(&self) -> LGroupFunction {
        LGroupFunction::constant_on(cube(self.n).expect("supported arity"), 1)
    }

    fn add(&self, x: &LGroupFunction, y: &LGroupFunction) -> LGroupFunction {
        x.add(y).expect("cube carrier")
    }

    fn neg(&self, x: &LGroupFunction) -> LGroupFunction {
        x.neg()
    }

    fn join(&self, x: &LGroupFunction, y: &LGroupFunction) -> LGroupFunction {
        x.join(y).expect("cube carrier")
    }

    fn meet(&self, x: &LGroupFunction, y: &LGroupFunction) -> LGroupFunction {
        x.meet(y).expect("cube carrier")
    }

    fn equal(&self, x: &LGroupFunction, y: &LGroupFunction) -> bool {
        x.equal(y).expect("cube carrier")
    }
}

/// `Z ×_lex H` with unit `1`, `H` the homogeneous PL functions on the
/// first quadrant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadrantLex;

impl UnitalLGroup for QuadrantLex {
    type Elem = LexElement;

    fn zero(&self) -> LexElement {
        LexElement::zero()
    }

    fn unit(&self) -> LexElement {
        LexElement::unit()
    }

    fn add(&self, x: &LexElement, y: &LexElement) -> LexElement {
        x.add(y)
    }

    fn neg(&self, x: &LexElement) -> LexElement {
        x.neg()
    }

    fn join(&self, x: &LexElement, y: &LexElement) -> LexElement {
        x.join(y)
    }

    fn meet(&self, x: &LexElement, y: &LexElement) -> LexElement {
        x.meet(y)
    }

    fn equal(&self, x: &LexElement, y: &LexElement) -> bool {
        x == y
    }
}

/// The unital l-groups the Γ functor is implemented for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitalLGroupDescriptor {
    ZWithUnit(u64),
    ZProduct(Vec<u64>),
    ZLexZ,
    PLGroup(usize),
    QuadrantLex,
}

/// The MV-algebra `Γ(G, u)` in its native representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaHandle {
    Chain(MVChain),
    Product(FiniteMV),
    Chang(Chang),
    McN(McNAlgebra),
    Germs(Germ2DAlgebra),
}

pub fn gamma(g: &UnitalLGroupDescriptor) -> Result<GammaHandle> {
    use UnitalLGroupDescriptor as D;
    match g {
        D::ZWithUnit(u) => Ok(GammaHandle::Chain(MVChain::new(*u)?)),
        D::ZProduct(us) => Ok(GammaHandle::Product(FiniteMV::from_ds(us)?)),
        D::ZLexZ => Ok(GammaHandle::Chang(Chang)),
        D::PLGroup(n) if (1..=3).contains(n) => Ok(GammaHandle::McN(McNAlgebra { n: *n })),
        D::PLGroup(n) => Err(Error::Unsupported(format!("(M_{n}, 1) is supported for n in 1..=3"))),
        D::QuadrantLex => Ok(GammaHandle::Germs(Germ2DAlgebra)),
    }
}

/// Ideals of the finite-type MV-algebras: for a product of chains, the
/// factors kept in full (chains are simple, so these are all ideals);
/// for the Chang algebra, `{0}`, the infinitesimals, or everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MvIdeal {
    Product { algebra: FiniteMV, full: Vec<bool> },
    Chang(ChangIdeal),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChangIdeal {
    Zero,
    Infinitesimal,
    Whole,
}

/// l-ideals of the matching unital groups: coordinate subgroups of
/// `(Z^k, u)`, and `{0}`, `{0} × Z`, or all of `Z ×_lex Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LGroupIdeal {
    Product { units: Vec<BigInt>, full: Vec<bool> },
    Lex(ChangIdeal),
}

impl MvIdeal {
    pub fn contains_product(&self, x: &[u64]) -> bool {
        match self {
            MvIdeal::Product { full, .. } => x.iter().zip(full).all(|(xi, f)| *f || *xi == 0),
            MvIdeal::Chang(_) => false,
        }
    }

    pub fn contains_chang(&self, m: u8, k: i64) -> bool {
        match self {
            MvIdeal::Chang(ChangIdeal::Zero) => m == 0 && k == 0,
            MvIdeal::Chang(ChangIdeal::Infinitesimal) => m == 0,
            MvIdeal::Chang(ChangIdeal::Whole) => true,
            MvIdeal::Product { .. } => false,
        }
    }
}

impl LGroupIdeal {
    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self {
            LGroupIdeal::Product { full, .. } => x.iter().zip(full).all(|(xi, f)| *f || xi.is_zero()),
            LGroupIdeal::Lex(ChangIdeal::Zero) => x.iter().all(Zero::is_zero),
            LGroupIdeal::Lex(ChangIdeal::Infinitesimal) => x[0].is_zero(),
            LGroupIdeal::Lex(ChangIdeal::Whole) => true,
        }
    }
}

/// `φ(i) = {x ∈ G : |x| ∧ u ∈ i}`.
pub fn ideal_correspondence(i: &MvIdeal) -> LGroupIdeal {
    match i {
        MvIdeal::Product { algebra, full } => LGroupIdeal::Product {
            units: algebra.factors().iter().map(|c| BigInt::from(c.d())).collect(),
            full: full.clone(),
        },
        MvIdeal::Chang(c) => LGroupIdeal::Lex(*c),
    }
}

/// `ψ(j) = j ∩ [0, u]`.
pub fn ideal_correspondence_inverse(j: &LGroupIdeal) -> Result<MvIdeal> {
    match j {
        LGroupIdeal::Product { units, full } => {
            let ds = units
                .iter()
                .map(|u| u64::try_from(u).map_err(|_| Error::Unsupported(format!("unit {u} exceeds 64 bits"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(MvIdeal::Product { algebra: FiniteMV::from_ds(&ds)?, full: full.clone() })
        }
        LGroupIdeal::Lex(c) => Ok(MvIdeal::Chang(*c)),
    }
}

/// Checks `φ` against its defining formula on all group elements with
/// coordinates in `[-window, window]`, and `ψ` against `j ∩ [0, u]`.
pub fn check_correspondence(i: &MvIdeal, window: i64) -> Result<bool> {
    let j = ideal_correspondence(i);
    if ideal_correspondence_inverse(&j)? != *i {
        return Ok(false);
    }
    let range = || (-window..=window).map(BigInt::from);
    match i {
        MvIdeal::Product { algebra, .. } => {
            let g = ZProduct::new(algebra.factors().iter().map(|c| BigInt::from(c.d())).collect())?;
            let k = g.units.len();
            let mut points: Vec<Vec<BigInt>> = vec![vec![]];
            for _ in 0..k {
                points = points.into_iter().flat_map(|p| range().map(move |v| [p.clone(), vec![v]].concat())).collect();
            }
            for x in &points {
                let t = g.meet(&g.abs(x), &g.unit());
                let t64: Vec<u64> = t.iter().map(|v| u64::try_from(v).expect("in [0, u]")).collect();
                if j.contains(x) != i.contains_product(&t64) {
                    return Ok(false);
                }
            }
            Ok(algebra.elements().iter().all(|x| {
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                i.contains_product(x) == j.contains(&xb)
            }))
        }
        MvIdeal::Chang(_) => {
            let g = ZLexZ;
            for a in range() {
                for b in range() {
                    let x = (a.clone(), b);
                    let t = g.meet(&g.abs(&x), &g.unit());
                    let m = if t.0.is_zero() { 0 } else { 1 };
                    let k = i64::try_from(&t.1).expect("window fits");
                    if j.contains(&[x.0.clone(), x.1.clone()]) != i.contains_chang(m, k) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_descriptors() {
        assert_eq!(gamma(&UnitalLGroupDescriptor::ZWithUnit(3)).unwrap(), GammaHandle::Chain(MVChain::new(3).unwrap()));
        assert_eq!(gamma(&UnitalLGroupDescriptor::ZLexZ).unwrap(), GammaHandle::Chang(Chang));
        assert_eq!(gamma(&UnitalLGroupDescriptor::PLGroup(1)).unwrap(), GammaHandle::McN(McNAlgebra { n: 1 }));
        assert!(gamma(&UnitalLGroupDescriptor::PLGroup(4)).is_err());
        assert!(gamma(&UnitalLGroupDescriptor::ZWithUnit(0)).is_err());
    }

    #[test]
    fn gamma_of_integers_is_the_chain() {
        for d in 1..=12u64 {
            let g = Gamma(ZProduct::new(vec![BigInt::from(d)]).unwrap());
            let c = MVChain::new(d).unwrap();
            for x in 0..=d {
                let bx = vec![BigInt::from(x)];
                assert_eq!(g.neg(&bx), vec![BigInt::from(c.neg(&x))]);
                for y in 0..=d {
                    assert_eq!(g.oplus(&bx, &vec![BigInt::from(y)]), vec![BigInt::from(c.oplus(&x, &y))]);
                }
            }
        }
    }

    #[test]
    fn correspondence_examples() {
        let i = MvIdeal::Chang(ChangIdeal::Infinitesimal);
        assert_eq!(ideal_correspondence(&i), LGroupIdeal::Lex(ChangIdeal::Infinitesimal));
        assert!(check_correspondence(&i, 6).unwrap());
        let l4 = FiniteMV::from_ds(&[3]).unwrap();
        let zero = MvIdeal::Product { algebra: l4, full: vec![false] };
        assert_eq!(
            ideal_correspondence(&zero),
            LGroupIdeal::Product { units: vec![BigInt::from(3)], full: vec![false] }
        );
        let a = FiniteMV::parse("L2xL3").unwrap();
        let i = MvIdeal::Product { algebra: a, full: vec![true, false] };
        assert_eq!(
            ideal_correspondence(&i),
            LGroupIdeal::Product { units: vec![BigInt::from(1), BigInt::from(2)], full: vec![true, false] }
        );
        assert!(check_correspondence(&i, 4).unwrap());
    }
}
