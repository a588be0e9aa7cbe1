//! Finite MV-algebras, the Chang algebra, exhaustive endomorphism search,
//! separation by finite quotients and the Smith normal form check.

mod algebra;
mod chang;
mod residual;
mod smith;

pub use algebra::{
    enumerate_endomorphisms, enumerate_homomorphisms, hopfian_report, is_hopfian_finite, FiniteHom, FiniteMV,
    HopfianReport, MVChain, DEFAULT_SIZE_BOUND,
};
pub use chang::{Chang, ChangElement};
pub use residual::{is_residually_finite, separate, Carrier, QuadSegment, ResidualFiniteness, Separation};
pub use smith::{determinant, smith_invariants, znk_surjective_implies_injective, ZnkReport, MAX_ZNK_RANK};
