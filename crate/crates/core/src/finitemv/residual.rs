use num_traits::{Signed, Zero};

use super::algebra::MVChain;
use crate::error::{Error, Result};
use crate::exactnum::{den, BigInt, QuadExt, RatPoint, Rational};
use crate::mcnaughton::McNFunction;
use crate::plgeom::{linalg, SimplicialComplex};

/// A homomorphism `McN(K) → Ł_{d+1}` given by evaluation at a rational
/// point `r` with `den(r) = d`, together with the image `f(r)·d` of the
/// separated element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub point: RatPoint,
    pub d: BigInt,
    pub image: BigInt,
}

impl Separation {
    /// The target chain when `d` fits in a machine word.
    pub fn chain(&self) -> Option<MVChain> {
        u64::try_from(&self.d).ok().and_then(|d| MVChain::new(d).ok())
    }
}

/// Finds a finite quotient in which `f` survives: among the domain
/// vertices where `f > 0`, the one with least denominator (ties broken
/// lexicographically). An affine piece that is nonzero on a simplex is
/// nonzero at some vertex, so a nonzero `f` always has one.
pub fn separate(f: &McNFunction) -> Result<Separation> {
    let best = f
        .as_lgroup()
        .vertex_values()
        .into_iter()
        .filter(|(_, v)| v.is_positive())
        .min_by(|(p, _), (q, _)| den(p).cmp(&den(q)).then_with(|| p.cmp(q)));
    let Some((point, value)) = best else {
        return Err(Error::ZeroFunction);
    };
    let d = den(&point);
    let image = (value * Rational::from_integer(d.clone())).to_integer();
    Ok(Separation { point, d, image })
}

/// A closed segment whose endpoints have coordinates in one real
/// quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSegment {
    pub start: Vec<QuadExt>,
    pub end: Vec<QuadExt>,
}

/// Carriers for which residual finiteness of `McN(X)` is decided.
#[derive(Clone, Debug)]
pub enum Carrier {
    RationalComplex(SimplicialComplex),
    QuadSegment(QuadSegment),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualFiniteness {
    pub residually_finite: bool,
    pub witness: String,
}

fn split(v: &[QuadExt]) -> (Vec<Rational>, Vec<Rational>) {
    (v.iter().map(|x| x.a().clone()).collect(), v.iter().map(|x| x.b().clone()).collect())
}

/// Whether `McN(X)` is residually finite, i.e. whether the rational points
/// of `X` are dense in `X`.
pub fn is_residually_finite(x: &Carrier) -> Result<ResidualFiniteness> {
    match x {
        Carrier::RationalComplex(k) => {
            if k.is_empty() {
                return Err(Error::Unsupported("empty carrier".into()));
            }
            Ok(ResidualFiniteness {
                residually_finite: true,
                witness: "every cell has rational vertices, so rational points are dense".into(),
            })
        }
        Carrier::QuadSegment(seg) => {
            let n = seg.start.len();
            if n == 0 || seg.end.len() != n {
                return Err(Error::Dimension("segment endpoints of different dimensions".into()));
            }
            let d = seg.start[0].base();
            if seg.start.iter().chain(&seg.end).any(|c| c.base() != d) {
                return Err(Error::Unsupported("endpoints in different quadratic fields".into()));
            }
            let dir: Vec<QuadExt> = seg.end.iter().zip(&seg.start).map(|(e, s)| e - s).collect();
            let (vr, vi) = split(&dir);
            let is_rational = |p: &[QuadExt]| p.iter().all(QuadExt::is_rational);
            if dir.iter().all(QuadExt::is_zero) {
                let rational = is_rational(&seg.start);
                return Ok(ResidualFiniteness {
                    residually_finite: rational,
                    witness: if rational {
                        "a single rational point".into()
                    } else {
                        "a single irrational point".into()
                    },
                });
            }
            // The line is rational iff its direction is a multiple of a
            // rational vector r and it passes through a rational point.
            let r = if vr.iter().all(Zero::is_zero) { vi.clone() } else { vr.clone() };
            let dependent = linalg::rank(&[vr.clone(), vi.clone()]) <= 1;
            let (_, si) = split(&seg.start);
            let through_rational = si.iter().all(Zero::is_zero) || linalg::coordinates_in_span(&[r], &si).is_some();
            if dependent && through_rational {
                return Ok(ResidualFiniteness {
                    residually_finite: true,
                    witness: "the segment lies on a rational line, so rational points are dense".into(),
                });
            }
            let endpoint = if is_rational(&seg.start) {
                Some(&seg.start)
            } else if is_rational(&seg.end) {
                Some(&seg.end)
            } else {
                None
            };
            let witness = match endpoint {
                Some(p) => {
                    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                    format!("only rational point is the endpoint ({})", coords.join(", "))
                }
                None => "at most one rational point, and it is not dense".into(),
            };
            Ok(ResidualFiniteness { residually_finite: false, witness })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::mcnaughton::{from_term, hat_function, parse_term};
    use crate::plgeom::{triangulate_cube, IntAffine, RationalSimplex};

    #[test]
    fn separation_examples() {
        let f = from_term(&parse_term("x1 (-) ~x1", 1).unwrap(), 1).unwrap();
        let s = separate(&f).unwrap();
        assert_eq!((s.point, s.d, s.image), (RatPoint::from_ints(&[1]), BigInt::from(1), BigInt::from(1)));
        let one = McNFunction::one(1).unwrap();
        assert_eq!(separate(&one).unwrap().image, BigInt::from(1));
        let hat = hat_function(1, &[IntAffine::from_ints(&[3], -1), IntAffine::from_ints(&[-3], 2)]).unwrap();
        let s = separate(&hat).unwrap();
        assert_eq!(s.point, RatPoint::from_pairs(&[(1, 2)]));
        assert_eq!((s.d, s.image), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(separate(&McNFunction::zero(2).unwrap()), Err(Error::ZeroFunction));
    }

    #[test]
    fn residual_finiteness() {
        let unit = Carrier::RationalComplex(triangulate_cube(1).unwrap());
        assert!(is_residually_finite(&unit).unwrap().residually_finite);
        let point =
            SimplicialComplex::new(1, vec![RationalSimplex::new(vec![RatPoint::from_pairs(&[(1, 3)])]).unwrap()])
                .unwrap();
        assert!(is_residually_finite(&Carrier::RationalComplex(point)).unwrap().residually_finite);
        let q = |a: Rational, b: Rational| QuadExt::new(a, b, 5).unwrap();
        let eigen = QuadSegment {
            start: vec![q(int(0), int(0)), q(int(0), int(0))],
            end: vec![q(rat(1, 2), int(0)), q(rat(-1, 4), rat(1, 4))],
        };
        let r = is_residually_finite(&Carrier::QuadSegment(eigen)).unwrap();
        assert!(!r.residually_finite);
        assert!(r.witness.contains("endpoint"));
        // a rational line shifted by an irrational multiple of its direction
        let shifted = QuadSegment {
            start: vec![q(int(0), rat(1, 10)), q(int(0), rat(1, 10))],
            end: vec![q(rat(1, 2), rat(1, 10)), q(rat(1, 2), rat(1, 10))],
        };
        assert!(is_residually_finite(&Carrier::QuadSegment(shifted)).unwrap().residually_finite);
        let off = QuadSegment {
            start: vec![q(int(0), rat(1, 10)), q(int(0), int(0))],
            end: vec![q(rat(1, 2), rat(1, 10)), q(rat(1, 2), int(0))],
        };
        assert!(!is_residually_finite(&Carrier::QuadSegment(off)).unwrap().residually_finite);
    }
}
