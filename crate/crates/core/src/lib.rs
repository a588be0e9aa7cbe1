//! Exact computation with finitely generated MV-algebras and unital
//! lattice-ordered abelian groups.
//!
//! Elements of free and semisimple MV-algebras are modelled as McNaughton
//! functions: continuous piecewise-linear maps with integer-coefficient
//! affine pieces over rational simplicial complexes in `[0,1]^n`. All
//! arithmetic is exact (arbitrary-precision rationals and real quadratic
//! fields); there is no floating point in any decision procedure.
//!
//! Module map:
//!
//! * [`exactnum`]: rationals, rational points, `Q(sqrt D)`, continued fractions.
//! * [`plgeom`]: rational simplices and complexes, refinement, slicing, censuses.
//! * [`mcnaughton`]: MV terms, McNaughton and l-group functions, Z-maps.
//! * [`finitemv`]: finite MV-chains and products, the Chang algebra,
//!   endomorphism enumeration, separation by finite quotients, Smith form.
//! * [`gammagerms`]: the Γ functor, ideal correspondence, germ algebras and
//!   the quadrant endomorphism.
//! * [`eigenhopf`]: the eigen-segment construction over `Q(sqrt 5)`.
//! * [`fsb`]: the Farey–Stern–Brocot Bratteli diagram and Effros–Shen groups.

pub mod eigenhopf;
pub mod error;
pub mod exactnum;
pub mod finitemv;
pub mod fsb;
pub mod gammagerms;
pub mod mcnaughton;
pub mod mv;
pub mod plgeom;

pub use error::{Error, Result};
pub use exactnum::{den, BigInt, ContinuedFraction, QuadExt, RatPoint, Rational};
pub use mcnaughton::{LGroupFunction, McNFunction, MvTerm, ZMapFn};
pub use mv::MvAlgebra;
pub use plgeom::{AffineMap, IntAffine, RationalSimplex, SimplicialComplex};
