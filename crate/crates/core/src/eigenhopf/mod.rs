//! The non-hopfian algebra of functions on an irrational eigen-segment.

mod segment;

pub use segment::{restrict_to_ray, Linear, Provenance, SegmentFunction};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, QuadExt, RatPoint, Rational};
use crate::finitemv::{determinant, QuadSegment};
use crate::mcnaughton::{hat_function, McNFunction};
use crate::plgeom::IntAffine;

/// A square integer matrix with determinant `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl UnimodularMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("a nonempty square matrix is required".into()));
        }
        let det = determinant(&rows);
        if !det.abs().is_one() {
            return Err(Error::Invalid(format!("determinant {det} is not ±1")));
        }
        Ok(UnimodularMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(k: usize) -> Self {
        let rows = (0..k).map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
        UnimodularMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.rows)
    }

    pub fn apply_quad(&self, v: &[QuadExt]) -> Result<Vec<QuadExt>> {
        if v.len() != self.size() {
            return Err(Error::Dimension(format!("matrix of size {} applied to R^{}", self.size(), v.len())));
        }
        let d = v[0].base();
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(QuadExt::zero_in(d), |acc, (m, x)| &acc + &x.scale(&Rational::from_integer(m.clone())))
            })
            .collect())
    }

    pub fn apply(&self, p: &RatPoint) -> Result<RatPoint> {
        if p.dim() != self.size() {
            return Err(Error::Dimension(format!("matrix of size {} applied to R^{}", self.size(), p.dim())));
        }
        Ok(RatPoint::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(p.coords()).map(|(m, x)| Rational::from_integer(m.clone()) * x).sum())
                .collect(),
        ))
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// The segment `{t·w : t ∈ [0,1]}` with `w ∈ [0,1/2]^n` nonzero and in the
/// open unit cube, coordinates in `Q(√D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSegment {
    w: Vec<QuadExt>,
}

impl EigenSegment {
    pub fn new(w: Vec<QuadExt>) -> Result<Self> {
        let Some(first) = w.first() else {
            return Err(Error::Dimension("empty endpoint".into()));
        };
        let d = first.base();
        if let Some(c) = w.iter().find(|c| c.base() != d) {
            return Err(Error::FieldMismatch(d, c.base()));
        }
        let half = QuadExt::rational(Rational::new(1.into(), 2.into()), d);
        if let Some(c) = w.iter().find(|c| c.is_negative() || **c > half) {
            return Err(Error::OutOfRange(format!("coordinate {c} is outside [0,1/2]")));
        }
        Ok(EigenSegment { w })
    }

    pub fn endpoint(&self) -> &[QuadExt] {
        &self.w
    }

    pub fn base(&self) -> u64 {
        self.w[0].base()
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// The nonzero end lies in the open cube `(0,1)^n`.
    pub fn is_interior(&self) -> bool {
        self.w.iter().all(QuadExt::is_positive)
    }

    pub fn to_quad_segment(&self) -> QuadSegment {
        QuadSegment { start: vec![QuadExt::zero_in(self.base()); self.dim()], end: self.w.clone() }
    }
}

/// The data of the eigen construction: `L·w = λ·w` with `0 < λ < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub l: UnimodularMatrix,
    pub lambda: QuadExt,
    pub w: EigenSegment,
}

/// `L = [[1,-1],[-1,2]]` (the inverse of `[[2,1],[1,1]]`), `λ = (3-√5)/2`,
/// `w = (1/2, (√5-1)/4)`.
pub fn build_figure1() -> EigenData {
    let q = |a: (i64, i64), b: (i64, i64)| {
        QuadExt::new(Rational::new(a.0.into(), a.1.into()), Rational::new(b.0.into(), b.1.into()), 5)
            .expect("5 is square-free")
    };
    let l = UnimodularMatrix::from_ints(&[&[1, -1], &[-1, 2]]).expect("determinant 1");
    let lambda = q((3, 2), (-1, 2));
    let w = EigenSegment::new(vec![q((1, 2), (0, 1)), q((-1, 4), (1, 4))]).expect("inside [0,1/2]^2");
    let data = EigenData { l, lambda, w };
    debug_assert!(verify_eigen(&data.l, &data.lambda, &data.w).unwrap_or(false));
    data
}

/// Checks `L·w = λ·w`, `0 < λ < 1` and that `w` is interior.
pub fn verify_eigen(l: &UnimodularMatrix, lambda: &QuadExt, w: &EigenSegment) -> Result<bool> {
    if l.size() != w.dim() {
        return Err(Error::Dimension(format!("matrix of size {} and segment in R^{}", l.size(), w.dim())));
    }
    if lambda.base() != w.base() {
        return Err(Error::FieldMismatch(lambda.base(), w.base()));
    }
    let lw = l.apply_quad(w.endpoint())?;
    let eigen = lw.iter().zip(w.endpoint()).all(|(a, b)| *a == lambda * b);
    let contracting = lambda.is_positive() && *lambda < QuadExt::one_in(lambda.base());
    Ok(eigen && contracting && w.is_interior())
}

/// Whether the origin is the only rational point of the segment, i.e.
/// whether some coordinate ratio of `w` is irrational.
pub fn no_nonzero_rational_on_segment(w: &EigenSegment) -> Result<bool> {
    let Some(pivot) = w.endpoint().iter().find(|c| !c.is_zero()) else {
        return Err(Error::Invalid("the segment is a single point".into()));
    };
    Ok(w.endpoint().iter().any(|c| !c.checked_div(pivot).expect("nonzero pivot").is_rational()))
}

/// `t ↦ f(t·w)`.
pub fn restrict(f: &McNFunction, w: &EigenSegment) -> Result<SegmentFunction> {
    restrict_to_ray(f, w.endpoint())
}

/// The action of `σ(f) = f∘l` on restrictions: `t ↦ s(λt)`.
pub fn sigma_eigen(s: &SegmentFunction, lambda: &QuadExt) -> Result<SegmentFunction> {
    s.substitute_scale(lambda)
}

/// Smallest-denominator rational strictly between `lo` and `hi`.
fn simplest_between(lo: &QuadExt, hi: &QuadExt) -> Result<Rational> {
    if lo >= hi {
        return Err(Error::Invalid(format!("empty interval ({lo}, {hi})")));
    }
    let mut q = BigInt::one();
    loop {
        let p = lo.scale(&Rational::from_integer(q.clone())).floor() + 1;
        let c = Rational::new(p, q.clone());
        if hi.cmp_rational(&c).is_gt() {
            return Ok(c);
        }
        q += 1;
    }
}

/// A function vanishing on `λE′` but not on `E′`: the hat of the strip
/// `{x_i > c}`.
#[derive(Clone, Debug)]
pub struct KernelWitness {
    /// 1-based coordinate of the strip.
    pub coordinate: usize,
    pub threshold: Rational,
    pub function: McNFunction,
    pub restricted: SegmentFunction,
    pub sigma_image: SegmentFunction,
    pub value_at_w: QuadExt,
}

impl KernelWitness {
    pub fn holds(&self) -> bool {
        !self.restricted.is_zero() && self.sigma_image.is_zero() && self.value_at_w.is_positive()
    }
}

/// The strip witness for a chosen coordinate and threshold; it certifies
/// a kernel element exactly when `λ·w_i ≤ c < w_i`.
pub fn strip_witness(data: &EigenData, coordinate: usize, threshold: Rational) -> Result<KernelWitness> {
    let n = data.w.dim();
    if coordinate == 0 || coordinate > n {
        return Err(Error::VariableOutOfRange { index: coordinate, arity: n });
    }
    let denom = threshold.denom().clone();
    let mut coeffs = vec![BigInt::zero(); n];
    coeffs[coordinate - 1] = denom;
    let function = hat_function(n, &[IntAffine::new(coeffs, -threshold.numer().clone())])?;
    let restricted = restrict(&function, &data.w)?;
    let sigma_image = sigma_eigen(&restricted, &data.lambda)?;
    let value_at_w = restricted.eval(&QuadExt::one_in(data.w.base()))?;
    Ok(KernelWitness { coordinate, threshold, function, restricted, sigma_image, value_at_w })
}

/// Picks the coordinate with largest `w_i` and the simplest rational `c`
/// with `λ·w_i < c < w_i`.
pub fn kernel_witness(data: &EigenData) -> Result<KernelWitness> {
    let (i, wi) =
        data.w.endpoint().iter().enumerate().max_by(|a, b| a.1.partial_cmp(b.1).expect("one field")).expect("nonempty");
    if !wi.is_positive() {
        return Err(Error::Invalid("the segment is a single point".into()));
    }
    let c = simplest_between(&(&data.lambda * wi), wi)?;
    strip_witness(data, i + 1, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::finitemv::{is_residually_finite, Carrier};

    #[test]
    fn figure1_is_an_eigenpair() {
        let f = build_figure1();
        assert_eq!(f.l.determinant(), BigInt::from(1));
        let lw = f.l.apply_quad(f.w.endpoint()).unwrap();
        assert_eq!(lw[0], QuadExt::new(rat(3, 4), rat(-1, 4), 5).unwrap());
        assert_eq!(lw[1], QuadExt::new(rat(-1, 1), rat(1, 2), 5).unwrap());
        assert!(verify_eigen(&f.l, &f.lambda, &f.w).unwrap());
        assert!(!verify_eigen(&UnimodularMatrix::identity(2), &QuadExt::one_in(5), &f.w).unwrap());
        let other = QuadExt::new(rat(3, 2), rat(1, 2), 5).unwrap();
        assert!(!verify_eigen(&f.l, &other, &f.w).unwrap());
        assert!(UnimodularMatrix::from_ints(&[&[2, 0], &[0, 1]]).is_err());
    }

    #[test]
    fn rational_points_on_segments() {
        let f = build_figure1();
        assert!(no_nonzero_rational_on_segment(&f.w).unwrap());
        let r = EigenSegment::new(vec![QuadExt::rational(rat(1, 2), 5), QuadExt::rational(rat(1, 4), 5)]).unwrap();
        assert!(!no_nonzero_rational_on_segment(&r).unwrap());
        let s2 =
            EigenSegment::new(vec![QuadExt::rational(rat(1, 3), 2), QuadExt::new(rat(0, 1), rat(1, 6), 2).unwrap()])
                .unwrap();
        assert!(no_nonzero_rational_on_segment(&s2).unwrap());
        let z = EigenSegment::new(vec![QuadExt::zero_in(5); 2]).unwrap();
        assert!(no_nonzero_rational_on_segment(&z).is_err());
        assert!(!is_residually_finite(&Carrier::QuadSegment(f.w.to_quad_segment())).unwrap().residually_finite);
    }

    #[test]
    fn witness_and_negative_control() {
        let f = build_figure1();
        let k = kernel_witness(&f).unwrap();
        assert_eq!(k.coordinate, 1);
        assert_eq!(k.threshold, rat(1, 3));
        assert!(k.holds());
        let bad = strip_witness(&f, 1, rat(1, 10)).unwrap();
        assert!(!bad.sigma_image.is_zero());
        assert!(!bad.holds());
        assert!(strip_witness(&f, 1, rat(2, 5)).unwrap().holds());
    }

    #[test]
    fn sigma_on_coordinates() {
        let f = build_figure1();
        let x1 = restrict(&McNFunction::var(2, 1).unwrap(), &f.w).unwrap();
        let s = sigma_eigen(&x1, &f.lambda).unwrap();
        assert_eq!(s.pieces()[0].slope, &f.lambda * &QuadExt::rational(rat(1, 2), 5));
        let one = restrict(&McNFunction::one(2).unwrap(), &f.w).unwrap();
        assert_eq!(sigma_eigen(&one, &f.lambda).unwrap(), one);
        assert_eq!(s.provenance().unwrap().sigma_power, 1);
    }

    #[test]
    fn unimodular_preserves_denominators() {
        let l = build_figure1().l;
        let p = RatPoint::from_pairs(&[(1, 3), (2, 5)]);
        assert_eq!(crate::exactnum::den(&l.apply(&p).unwrap()), crate::exactnum::den(&p));
    }
}
