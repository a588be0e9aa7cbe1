//! Rational polyhedral geometry in `[0,1]^n` for `n ≤ 3`: simplices,
//! simplicial complexes, common refinement, hyperplane slicing and
//! denominator censuses.

mod affine;
mod complex;
pub mod linalg;
mod polytope;
mod simplex;

pub use affine::{AffineMap, IntAffine, RatAffine};
pub use complex::{
    common_refinement, denominator_census, rational_points_with_denominator, subdivide_by_hyperplane, triangulate_cube,
    ComplexJson, SimplicialComplex,
};
#[allow(unused_imports)]
pub(crate) use complex::{refine_pair, split_cells, CellGrid};
pub use polytope::{enumerate_vertices, extreme_points, slice_simplex, triangulate_convex};
pub use simplex::{image_of_simplex, RationalSimplex, SimplexImage};
