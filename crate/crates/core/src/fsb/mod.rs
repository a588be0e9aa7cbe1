//! The Farey–Stern–Brocot Bratteli diagram, its ideals, and the dimension
//! groups of its primitive quotients.

mod diagram;
mod effros;

pub use diagram::{
    ideal_of_diagram_at, vertex_for_fraction, BratteliDiagram, DiagramJson, DiagramVertex, FareyVertex, MAX_DEPTH,
};
pub use effros::{EffrosShenGroup, EsElement, Positivity, Theta};

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, QuadExt, RatPoint, Rational};
use crate::finitemv::separate;
use crate::mcnaughton::McNFunction;

/// A point of `[0,1]`, rational or quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho {
    Rational(Rational),
    Quad(QuadExt),
}

/// The primitive quotient at a point of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitiveQuotientDescriptor {
    /// `q × q` matrices, dimension group `(Z, q)`.
    FiniteDim(BigInt),
    EffrosShen(Theta),
    /// Reserved for the lexicographic quotients with two prime ideals; no
    /// arithmetic is provided.
    BehnkeLeptin {
        k: u64,
        q: u64,
    },
}

impl fmt::Display for PrimitiveQuotientDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitiveQuotientDescriptor::FiniteDim(q) => write!(f, "FiniteDim({q})"),
            PrimitiveQuotientDescriptor::EffrosShen(t) => write!(f, "EffrosShen({t})"),
            PrimitiveQuotientDescriptor::BehnkeLeptin { k, q } => write!(f, "BehnkeLeptin({k}, {q})"),
        }
    }
}

pub fn primitive_quotient(rho: &Rho) -> Result<PrimitiveQuotientDescriptor> {
    match rho {
        Rho::Rational(r) => {
            if r.is_negative() || *r > Rational::one() {
                return Err(Error::OutOfRange(format!("{r} is outside [0,1]")));
            }
            Ok(PrimitiveQuotientDescriptor::FiniteDim(r.denom().clone()))
        }
        Rho::Quad(t) => Ok(PrimitiveQuotientDescriptor::EffrosShen(Theta::quad(t.clone())?)),
    }
}

pub fn prime_ideal_count(qd: &PrimitiveQuotientDescriptor) -> u32 {
    match qd {
        PrimitiveQuotientDescriptor::FiniteDim(_) | PrimitiveQuotientDescriptor::EffrosShen(_) => 1,
        PrimitiveQuotientDescriptor::BehnkeLeptin { .. } => 2,
    }
}

/// A finite-dimensional representation in which a nonzero `f` on `[0,1]`
/// survives: a rational `p/q` with `f(p/q) ≠ 0`, and the matrix size `q`.
pub fn residual_fd_witness(f: &McNFunction) -> Result<(Rational, BigInt)> {
    if f.arity() != 1 {
        return Err(Error::Dimension(format!("expected a function on [0,1], got arity {}", f.arity())));
    }
    let s = separate(f)?;
    let RatPoint(coords) = s.point;
    Ok((coords[0].clone(), s.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::mcnaughton::{from_term, hat_function, parse_term};
    use crate::plgeom::IntAffine;

    #[test]
    fn quotients() {
        assert_eq!(
            primitive_quotient(&Rho::Rational(rat(1, 2))).unwrap(),
            PrimitiveQuotientDescriptor::FiniteDim(BigInt::from(2))
        );
        assert_eq!(
            primitive_quotient(&Rho::Rational(rat(0, 1))).unwrap(),
            PrimitiveQuotientDescriptor::FiniteDim(BigInt::from(1))
        );
        let g = primitive_quotient(&Rho::Quad(QuadExt::golden_conjugate())).unwrap();
        assert_eq!(g, PrimitiveQuotientDescriptor::EffrosShen(Theta::golden()));
        assert!(primitive_quotient(&Rho::Quad(QuadExt::rational(rat(1, 2), 5))).is_err());
        assert_eq!(prime_ideal_count(&PrimitiveQuotientDescriptor::FiniteDim(BigInt::from(3))), 1);
        assert_eq!(prime_ideal_count(&g), 1);
    }

    #[test]
    fn fd_witnesses() {
        let f = from_term(&parse_term("x1 (+) x1", 1).unwrap(), 1).unwrap();
        let f = f.mv_times(&McNFunction::var(1, 1).unwrap()).unwrap();
        assert_eq!(residual_fd_witness(&f).unwrap(), (rat(1, 1), BigInt::from(1)));
        assert_eq!(residual_fd_witness(&McNFunction::one(1).unwrap()).unwrap().1, BigInt::from(1));
        let hat = hat_function(1, &[IntAffine::from_ints(&[3], -1), IntAffine::from_ints(&[-3], 2)]).unwrap();
        assert_eq!(residual_fd_witness(&hat).unwrap(), (rat(1, 2), BigInt::from(2)));
        assert!(residual_fd_witness(&McNFunction::zero(1).unwrap()).is_err());
    }
}
