//! The Γ functor, the ideal correspondence, germ algebras at rational
//! points and the quadrant endomorphism of `Z ×_lex H`.

mod gamma;
mod germs;
mod homog;

pub use gamma::{
    check_correspondence, gamma, ideal_correspondence, ideal_correspondence_inverse, ChangIdeal, Gamma, GammaHandle,
    LGroupIdeal, MvIdeal, PLGroup, QuadrantLex, UnitalLGroup, UnitalLGroupDescriptor, ZLexZ, ZProduct,
};
pub use germs::{
    ambient_dominance, ambient_q, chang_iso_check, chang_to_germ, germ_at_origin_2d, germ_at_zero_1d, germ_to_chang,
    quadrant_ideal_member, quadrant_ideal_member_ambient, quadrant_sigma, Germ1D, Germ1DAlgebra, Germ2D, Germ2DAlgebra,
    LexElement, QUADRANT_SHEAR,
};
pub use homog::{angle_cmp, ray, HomogJson, HomogPL, PieceForm, Ray, Sector};
