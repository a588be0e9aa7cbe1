use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::homog::{angle_cmp, ray, HomogPL, Ray, Sector};
use crate::error::{Error, Result};
use crate::exactnum::{BigInt, RatPoint};
use crate::finitemv::ChangElement;
use crate::mcnaughton::McNFunction;
use crate::mv::MvAlgebra;

/// The germ at `0` of a McNaughton function on `[0,1]`: its value and
/// right derivative there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Germ1D {
    value: u8,
    slope: BigInt,
}

impl Germ1D {
    pub fn new(value: u8, slope: impl Into<BigInt>) -> Result<Self> {
        let slope = slope.into();
        let ok = match value {
            0 => !slope.is_negative(),
            1 => !slope.is_positive(),
            _ => false,
        };
        if !ok {
            return Err(Error::OutOfRange(format!("({value}, {slope}) is not a germ of a McNaughton function")));
        }
        Ok(Germ1D { value, slope })
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn slope(&self) -> &BigInt {
        &self.slope
    }
}

impl fmt::Display for Germ1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.value, self.slope)
    }
}

/// Germs at `0` of `McN([0,1])`, isomorphic to the Chang algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Germ1DAlgebra;

impl MvAlgebra for Germ1DAlgebra {
    type Elem = Germ1D;

    fn zero(&self) -> Germ1D {
        Germ1D { value: 0, slope: BigInt::zero() }
    }

    fn neg(&self, x: &Germ1D) -> Germ1D {
        Germ1D { value: 1 - x.value, slope: -&x.slope }
    }

    fn oplus(&self, x: &Germ1D, y: &Germ1D) -> Germ1D {
        let slope = &x.slope + &y.slope;
        match x.value + y.value {
            0 => Germ1D { value: 0, slope },
            1 => Germ1D { value: 1, slope: slope.min(BigInt::zero()) },
            _ => Germ1D { value: 1, slope: BigInt::zero() },
        }
    }

    fn equal(&self, x: &Germ1D, y: &Germ1D) -> bool {
        x == y
    }
}

/// Value and right derivative at `0`.
pub fn germ_at_zero_1d(f: &McNFunction) -> Result<Germ1D> {
    if f.arity() != 1 {
        return Err(Error::Dimension("germ_at_zero_1d needs a function on [0,1]".into()));
    }
    let origin = RatPoint::from_ints(&[0]);
    let cell = f
        .domain()
        .simplices()
        .iter()
        .position(|s| s.has_vertex(&origin))
        .ok_or_else(|| Error::OutsideCarrier("0".into()))?;
    let piece = &f.pieces()[cell];
    let value = if piece.offset.is_zero() { 0 } else { 1 };
    Germ1D::new(value, piece.coeffs[0].clone())
}

/// `γ: C → germs`, `(m, k) ↦ (m, k)`.
pub fn chang_to_germ(e: &ChangElement) -> Germ1D {
    Germ1D { value: e.m(), slope: BigInt::from(e.k()) }
}

pub fn germ_to_chang(g: &Germ1D) -> Result<ChangElement> {
    let k = i64::try_from(&g.slope).map_err(|_| Error::OutOfRange("slope exceeds 64 bits".into()))?;
    ChangElement::new(g.value, k)
}

/// Checks that `γ` is a bijective homomorphism on all elements with
/// `|k| ≤ bound`.
pub fn chang_iso_check(bound: u32) -> bool {
    use crate::finitemv::Chang;
    let elems: Vec<ChangElement> =
        (0..=bound).map(ChangElement::infinitesimal).chain((0..=bound).map(ChangElement::co_infinitesimal)).collect();
    let (c, g) = (Chang, Germ1DAlgebra);
    elems.iter().all(|a| {
        let ga = chang_to_germ(a);
        germ_to_chang(&ga).as_ref() == Ok(a)
            && chang_to_germ(&c.neg(a)) == g.neg(&ga)
            && elems.iter().all(|b| chang_to_germ(&c.oplus(a, b)) == g.oplus(&ga, &chang_to_germ(b)))
    })
}

/// The germ at the origin of a McNaughton function on `[0,1]^2`: the value
/// `v` and a nonnegative homogeneous profile `p`, where the function is
/// `p` near the origin when `v = 0` and `1 − p` when `v = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Germ2D {
    value: u8,
    profile: HomogPL,
}

impl Germ2D {
    pub fn new(value: u8, profile: HomogPL) -> Result<Self> {
        if value > 1 {
            return Err(Error::OutOfRange(format!("germ value {value}")));
        }
        if profile.sector() != Sector::Quadrant || !profile.is_nonnegative() {
            return Err(Error::OutOfRange("the profile must be a nonnegative quadrant function".into()));
        }
        Ok(Germ2D { value, profile })
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn profile(&self) -> &HomogPL {
        &self.profile
    }
}

impl fmt::Display for Germ2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            0 => write!(f, "{}", self.profile),
            _ => write!(f, "1 - ({})", self.profile),
        }
    }
}

/// Germs at the origin of `McN([0,1]^2)`, the free product `C ∐ C`.
/// The sum is the truncation at the unit `(1, 0)` of `Z ×_lex H`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Germ2DAlgebra;

impl MvAlgebra for Germ2DAlgebra {
    type Elem = Germ2D;

    fn zero(&self) -> Germ2D {
        Germ2D { value: 0, profile: HomogPL::zero(Sector::Quadrant) }
    }

    fn neg(&self, x: &Germ2D) -> Germ2D {
        Germ2D { value: 1 - x.value, profile: x.profile.clone() }
    }

    fn oplus(&self, x: &Germ2D, y: &Germ2D) -> Germ2D {
        let fans = "quadrant fans share a sector";
        match (x.value, y.value) {
            (0, 0) => Germ2D { value: 0, profile: x.profile.add(&y.profile).expect(fans) },
            (0, 1) | (1, 0) => {
                let (low, high) = if x.value == 0 { (x, y) } else { (y, x) };
                let p = high.profile.sub(&low.profile).expect(fans).join(&HomogPL::zero(Sector::Quadrant)).expect(fans);
                Germ2D { value: 1, profile: p }
            }
            _ => Germ2D { value: 1, profile: HomogPL::zero(Sector::Quadrant) },
        }
    }

    fn equal(&self, x: &Germ2D, y: &Germ2D) -> bool {
        x == y
    }
}

/// Reads the germ at the origin off the cells of `f` incident to it. In
/// a simplicial complex the origin is a vertex, so its star is already a
/// fan of cones spanned by the edges leaving it.
pub fn germ_at_origin_2d(f: &McNFunction) -> Result<Germ2D> {
    if f.arity() != 2 {
        return Err(Error::Dimension("germ_at_origin_2d needs a function on [0,1]^2".into()));
    }
    let origin = RatPoint::from_ints(&[0, 0]);
    let mut cones: Vec<(Ray, Ray, [BigInt; 2])> = Vec::new();
    let mut value = None;
    for (s, p) in f.domain().simplices().iter().zip(f.pieces()) {
        if !s.has_vertex(&origin) {
            continue;
        }
        let mut edges: Vec<Ray> = s.vertices().iter().filter(|v| **v != origin).map(direction).collect();
        edges.sort_by(angle_cmp);
        let v = if p.offset.is_zero() { 0u8 } else { 1 };
        value = Some(v);
        let form = [p.coeffs[0].clone(), p.coeffs[1].clone()];
        let form = if v == 0 { form } else { [-&form[0], -&form[1]] };
        cones.push((edges[0].clone(), edges[1].clone(), form));
    }
    let value = value.ok_or_else(|| Error::OutsideCarrier("the origin".into()))?;
    cones.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let mut rays: Vec<Ray> = cones.iter().map(|c| c.0.clone()).collect();
    let tiles = cones.windows(2).all(|w| w[0].1 == w[1].0)
        && cones.first().map(|c| &c.0) == Some(&ray(1, 0))
        && cones.last().map(|c| &c.1) == Some(&ray(0, 1));
    if !tiles {
        return Err(Error::Unsupported("the domain does not cover a neighbourhood of the origin".into()));
    }
    rays.push(ray(0, 1));
    let pieces = cones.into_iter().map(|c| c.2).collect();
    Germ2D::new(value, HomogPL::new(Sector::Quadrant, rays, pieces)?)
}

fn direction(p: &RatPoint) -> Ray {
    let l = p.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v =
        [p.coords()[0].numer() * (&l / p.coords()[0].denom()), p.coords()[1].numer() * (&l / p.coords()[1].denom())];
    let g = v[0].gcd(&v[1]);
    [&v[0] / &g, &v[1] / &g]
}

/// An element `m + h` of `Z ×_lex H`, with `H` the homogeneous PL
/// functions on the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexElement {
    pub m: BigInt,
    pub h: HomogPL,
}

impl LexElement {
    pub fn new(m: impl Into<BigInt>, h: HomogPL) -> Result<Self> {
        if h.sector() != Sector::Quadrant {
            return Err(Error::Unsupported("lexicographic elements live on the quadrant".into()));
        }
        Ok(LexElement { m: m.into(), h })
    }

    pub fn unit() -> Self {
        LexElement { m: BigInt::one(), h: HomogPL::zero(Sector::Quadrant) }
    }

    pub fn zero() -> Self {
        LexElement { m: BigInt::zero(), h: HomogPL::zero(Sector::Quadrant) }
    }

    pub fn add(&self, other: &Self) -> Self {
        LexElement { m: &self.m + &other.m, h: self.h.add(&other.h).expect("quadrant fans") }
    }

    pub fn neg(&self) -> Self {
        LexElement { m: -&self.m, h: self.h.neg() }
    }

    fn select(&self, other: &Self, take_max: bool) -> Self {
        match self.m.cmp(&other.m) {
            Ordering::Equal => {
                let h = if take_max { self.h.join(&other.h) } else { self.h.meet(&other.h) };
                LexElement { m: self.m.clone(), h: h.expect("quadrant fans") }
            }
            ord => {
                if (ord == Ordering::Greater) == take_max {
                    self.clone()
                } else {
                    other.clone()
                }
            }
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        self.select(other, true)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.select(other, false)
    }

    /// `0 ≤ self` in the lexicographic order.
    pub fn is_nonnegative(&self) -> bool {
        self.m.is_positive() || (self.m.is_zero() && self.h.is_nonnegative())
    }
}

impl fmt::Display for LexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + [{}]", self.m, self.h)
    }
}

/// The shear `q(x, y) = (x, y + x)` of the first quadrant.
pub const QUADRANT_SHEAR: [[i64; 2]; 2] = [[1, 0], [1, 1]];

/// `σ(m + h) = m + h ∘ q`, the non-hopfian endomorphism of `Z ×_lex H`.
pub fn quadrant_sigma(l: &LexElement) -> LexElement {
    LexElement {
        m: l.m.clone(),
        h: l.h.compose_linear(QUADRANT_SHEAR).expect("the shear maps the quadrant into itself"),
    }
}

/// Membership of `h ≥ 0` (with `m = 0`) in the ideal of functions vanishing
/// on the quadrant: on this quadrant representation that is `h = 0`.
pub fn quadrant_ideal_member(l: &LexElement) -> Result<bool> {
    if !l.m.is_zero() || !l.h.is_nonnegative() {
        return Err(Error::Invalid("expected m = 0 and h ≥ 0".into()));
    }
    Ok(l.h.is_zero())
}

/// `q(x, y) = 0 ∨ −x ∨ −y` on the whole plane.
pub fn ambient_q() -> HomogPL {
    HomogPL::zero(Sector::Plane)
        .join(&HomogPL::linear(Sector::Plane, -1, 0))
        .and_then(|h| h.join(&HomogPL::linear(Sector::Plane, 0, -1)))
        .expect("plane fans")
}

/// The least `m ≥ 0` with `m·q ≥ l` on the plane, if any. Both sides are
/// linear on the cones of the merged fan, so rays suffice: rays where
/// `q = 0` need `l ≤ 0`, the others bound `m` from below.
pub fn ambient_dominance(l: &HomogPL) -> Result<Option<BigInt>> {
    if l.sector() != Sector::Plane {
        return Err(Error::Unsupported("the ambient check takes a plane fan".into()));
    }
    let q = ambient_q();
    let mut rays: Vec<Ray> = l.rays().iter().chain(q.rays()).cloned().collect();
    rays.sort_by(angle_cmp);
    rays.dedup();
    let mut m = BigInt::zero();
    for r in &rays {
        let (lv, qv) = (l.eval(r)?, q.eval(r)?);
        if qv.is_zero() {
            if lv.is_positive() {
                return Ok(None);
            }
        } else {
            m = m.max(Integer::div_ceil(&lv, &qv));
        }
    }
    Ok(Some(m))
}

/// `l ∈ q̂` in the ambient reading: some multiple of `q` dominates `l`.
pub fn quadrant_ideal_member_ambient(l: &HomogPL) -> Result<bool> {
    Ok(ambient_dominance(l)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcnaughton::{from_term, parse_term};

    fn lin(ax: i64, ay: i64) -> HomogPL {
        HomogPL::linear(Sector::Quadrant, ax, ay)
    }

    #[test]
    fn one_dimensional_germs() {
        let x = McNFunction::var(1, 1).unwrap();
        assert_eq!(germ_at_zero_1d(&x).unwrap(), Germ1D::new(0, 1).unwrap());
        assert_eq!(germ_at_zero_1d(&McNFunction::zero(1).unwrap()).unwrap(), Germ1D::new(0, 0).unwrap());
        let f = from_term(&parse_term("~(x1 (+) x1)", 1).unwrap(), 1).unwrap();
        assert_eq!(germ_at_zero_1d(&f).unwrap(), Germ1D::new(1, -2).unwrap());
        assert!(Germ1D::new(0, -1).is_err());
    }

    #[test]
    fn chang_isomorphism() {
        assert_eq!(chang_to_germ(&ChangElement::infinitesimal(1)), Germ1D::new(0, 1).unwrap());
        let g = Germ1DAlgebra;
        assert_eq!(g.oplus(&Germ1D::new(0, 2).unwrap(), &Germ1D::new(0, 3).unwrap()), Germ1D::new(0, 5).unwrap());
        assert!(chang_iso_check(10));
    }

    #[test]
    fn two_dimensional_germs() {
        let f = from_term(&parse_term("x1 (+) x2", 2).unwrap(), 2).unwrap();
        let g = germ_at_origin_2d(&f).unwrap();
        assert_eq!((g.value(), g.profile()), (0, &lin(1, 1)));
        let one = germ_at_origin_2d(&McNFunction::one(2).unwrap()).unwrap();
        assert_eq!((one.value(), one.profile()), (1, &HomogPL::zero(Sector::Quadrant)));
        let f = from_term(&parse_term("x1 (-) x2", 2).unwrap(), 2).unwrap();
        let g = germ_at_origin_2d(&f).unwrap();
        assert_eq!(g.profile(), &lin(1, -1).join(&lin(0, 0)).unwrap());
        assert_eq!(g.profile().rays(), &[ray(1, 0), ray(1, 1), ray(0, 1)]);
    }

    #[test]
    fn germ_sum_matches_function_sum() {
        let alg = Germ2DAlgebra;
        let x1 = McNFunction::var(2, 1).unwrap();
        let x2 = McNFunction::var(2, 2).unwrap();
        let sum = germ_at_origin_2d(&x1.mv_plus(&x2).unwrap()).unwrap();
        let via = alg.oplus(&germ_at_origin_2d(&x1).unwrap(), &germ_at_origin_2d(&x2).unwrap());
        assert_eq!(sum, via);
        let p = germ_at_origin_2d(&x1).unwrap();
        assert_eq!(alg.neg(&alg.neg(&p)), p);
        assert_eq!(alg.oplus(&p, &alg.zero()), p);
    }

    #[test]
    fn sigma_examples() {
        let k = LexElement::new(0, lin(1, -1).join(&lin(0, 0)).unwrap()).unwrap();
        assert_eq!(quadrant_sigma(&k), LexElement::zero());
        let x = LexElement::new(0, lin(1, 0)).unwrap();
        assert_eq!(quadrant_sigma(&x), x);
        let yx = LexElement::new(0, lin(-1, 1).join(&lin(0, 0)).unwrap()).unwrap();
        assert_eq!(quadrant_sigma(&yx), LexElement::new(0, lin(0, 1)).unwrap());
        assert_eq!(quadrant_sigma(&LexElement::unit()), LexElement::unit());
    }

    #[test]
    fn ideal_membership() {
        assert!(quadrant_ideal_member(&LexElement::zero()).unwrap());
        let k = LexElement::new(0, lin(1, -1).join(&lin(0, 0)).unwrap()).unwrap();
        assert!(!quadrant_ideal_member(&k).unwrap());
        assert!(quadrant_ideal_member(&LexElement::new(0, lin(-1, 0)).unwrap()).is_err());
        assert_eq!(ambient_dominance(&ambient_q()).unwrap(), Some(BigInt::from(1)));
        let twice = ambient_q().scale(&BigInt::from(3));
        assert_eq!(ambient_dominance(&twice).unwrap(), Some(BigInt::from(3)));
        // positive somewhere on the quadrant: never dominated
        assert_eq!(
            ambient_dominance(&HomogPL::linear(Sector::Plane, 1, 0).join(&HomogPL::zero(Sector::Plane)).unwrap())
                .unwrap(),
            None
        );
    }
}
