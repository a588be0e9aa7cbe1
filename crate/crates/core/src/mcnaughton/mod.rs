//! McNaughton functions and l-group PL functions, MV terms, Z-maps.

mod function;
mod term;
mod zmap;

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

pub use crate::plgeom::denominator_census;
pub use function::{cube, FunctionJson, LGroupFunction, McNFunction, PieceJson};
pub use term::{parse_term, random_term, MvTerm};
pub use zmap::{compose, range_of_zmap, ZMapFn};

use crate::error::{Error, Result};
use crate::mv::MvAlgebra;
use crate::plgeom::{IntAffine, RationalSimplex, SimplicialComplex};

/// The function on `[0,1]^n` denoted by `t`, built by structural recursion.
pub fn from_term(t: &MvTerm, n: usize) -> Result<McNFunction> {
    if t.arity() > n {
        return Err(Error::VariableOutOfRange { index: t.arity(), arity: n });
    }
    from_term_on(t, &cube(n)?)
}

/// As [`from_term`], over an arbitrary pure full-dimensional domain.
pub fn from_term_on(t: &MvTerm, domain: &Arc<SimplicialComplex>) -> Result<McNFunction> {
    Ok(match t {
        MvTerm::Zero => McNFunction::zero_on(domain.clone()),
        MvTerm::One => McNFunction::one_on(domain.clone()),
        MvTerm::Var(i) => McNFunction::var_on(domain.clone(), *i)?,
        MvTerm::Neg(a) => from_term_on(a, domain)?.mv_neg(),
        MvTerm::Plus(a, b) => from_term_on(a, domain)?.mv_plus(&from_term_on(b, domain)?)?,
    })
}

/// `f⁻¹(0)` as a complex of faces of the domain of `f`.
pub fn zeroset(f: &McNFunction) -> SimplicialComplex {
    let mut faces: Vec<Vec<crate::exactnum::RatPoint>> = f
        .domain()
        .simplices()
        .iter()
        .zip(f.pieces())
        .filter_map(|(s, p)| {
            let zeros: Vec<_> = s.vertices().iter().filter(|v| p.eval(v).is_zero()).cloned().collect();
            (!zeros.is_empty()).then_some(zeros)
        })
        .collect();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut covered: HashSet<Vec<crate::exactnum::RatPoint>> = HashSet::new();
    let mut kept = Vec::new();
    for face in faces {
        if covered.contains(&face) {
            continue;
        }
        let k = face.len();
        for mask in 1u32..(1 << k) {
            let sub: Vec<_> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| face[i].clone()).collect();
            covered.insert(sub);
        }
        kept.push(RationalSimplex::from_unchecked(face));
    }
    SimplicialComplex::from_unchecked(f.arity(), kept)
}

/// A McNaughton function vanishing exactly off the open region
/// `T = {x ∈ [0,1]^n : ℓ_j(x) > 0 for all j}`, namely
/// `0 ∨ (ℓ_1 ∧ … ∧ ℓ_k) ∧ 1`. Fails when `T` is empty.
pub fn hat_function(n: usize, ells: &[IntAffine]) -> Result<McNFunction> {
    let Some(first) = ells.first() else {
        return Err(Error::Invalid("at least one inequality is required".into()));
    };
    if let Some(l) = ells.iter().find(|l| l.dim() != n) {
        return Err(Error::Dimension(format!("functional {l} is not on R^{n}")));
    }
    let mut g = LGroupFunction::affine_on_cube(first.clone())?;
    for l in &ells[1..] {
        g = g.meet(&LGroupFunction::affine_on_cube(l.clone())?)?;
    }
    let f = McNFunction::try_from_lgroup(g.join_constant(0).meet_constant(1))?;
    if f.is_zero() {
        return Err(Error::Invalid("the region is empty".into()));
    }
    Ok(f)
}

/// Witness that the shift endomorphism of the free algebra on countably
/// many generators has a nontrivial kernel: `t` is nonzero but becomes
/// zero after identifying `x2` with `x1`.
#[derive(Clone, Debug)]
pub struct ShiftKernelCertificate {
    pub term: MvTerm,
    pub substituted: MvTerm,
    pub function: McNFunction,
    pub substituted_function: McNFunction,
}

impl ShiftKernelCertificate {
    pub fn holds(&self) -> bool {
        !self.function.is_zero() && self.substituted_function.is_zero()
    }
}

pub fn shift_kernel_demo() -> Result<ShiftKernelCertificate> {
    let term = parse_term("(x1 (-) x2) (+) (x2 (-) x1)", 2)?;
    let substituted = term.substitute(&[MvTerm::var(1), MvTerm::var(1)]);
    let function = from_term(&term, 2)?;
    let substituted_function = from_term(&substituted, 1)?;
    Ok(ShiftKernelCertificate { term, substituted, function, substituted_function })
}

/// `McN([0,1]^n)` as an [`MvAlgebra`]. All elements live on the cube, so
/// carrier mismatches cannot occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McNAlgebra {
    pub n: usize,
}

impl MvAlgebra for McNAlgebra {
    type Elem = McNFunction;

    fn zero(&self) -> McNFunction {
        McNFunction::zero(self.n).expect("supported arity")
    }

    fn neg(&self, x: &McNFunction) -> McNFunction {
        x.mv_neg()
    }

    fn oplus(&self, x: &McNFunction, y: &McNFunction) -> McNFunction {
        x.mv_plus(y).expect("elements share the cube as carrier")
    }

    fn equal(&self, x: &McNFunction, y: &McNFunction) -> bool {
        x.equal(y).expect("elements share the cube as carrier")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, RatPoint, Rational};

    fn p2(a: (i64, i64), b: (i64, i64)) -> RatPoint {
        RatPoint::from_pairs(&[a, b])
    }

    #[test]
    fn term_functions() {
        let f = from_term(&parse_term("x1 (+) x1", 1).unwrap(), 1).unwrap();
        assert_eq!(f.eval_at(&RatPoint::from_pairs(&[(1, 3)])).unwrap(), rat(2, 3));
        let g = from_term(&parse_term("~x1", 1).unwrap(), 1).unwrap();
        assert_eq!(g.eval_at(&RatPoint::from_pairs(&[(1, 3)])).unwrap(), rat(2, 3));
        let d = from_term(&parse_term("(x1 (-) x2) v (x2 (-) x1)", 2).unwrap(), 2).unwrap();
        assert_eq!(d.eval_at(&p2((3, 4), (1, 4))).unwrap(), rat(1, 2));
        assert!(from_term(&MvTerm::var(3), 2).is_err());
    }

    #[test]
    fn zerosets() {
        let zero = McNFunction::zero(2).unwrap();
        assert_eq!(zeroset(&zero).volume(), int(1));
        let f = from_term(&parse_term("x1 (-) ~x1", 1).unwrap(), 1).unwrap();
        let z = zeroset(&f);
        assert_eq!(z.len(), 1);
        assert_eq!(z.simplices()[0].vertices(), &[RatPoint::from_ints(&[0]), RatPoint::from_pairs(&[(1, 2)])]);
        let d = from_term(&parse_term("(x1 (-) x2) v (x2 (-) x1)", 2).unwrap(), 2).unwrap();
        let z = zeroset(&d);
        assert_eq!(z.len(), 1);
        assert_eq!(z.simplices()[0].vertices(), &[RatPoint::from_ints(&[0, 0]), RatPoint::from_ints(&[1, 1])]);
        let one = McNFunction::one(1).unwrap();
        assert!(zeroset(&one).is_empty());
    }

    #[test]
    fn hats() {
        let f = hat_function(1, &[IntAffine::from_ints(&[3], -1), IntAffine::from_ints(&[-3], 2)]).unwrap();
        assert_eq!(f.eval_at(&RatPoint::from_pairs(&[(1, 2)])).unwrap(), rat(1, 2));
        let z = zeroset(&f);
        let verts: Vec<Rational> = z.vertices().iter().map(|v| v.coords()[0].clone()).collect();
        assert_eq!(verts, vec![int(0), rat(1, 3), rat(2, 3), int(1)]);
        let edge = hat_function(1, &[IntAffine::from_ints(&[1], 0), IntAffine::from_ints(&[-1], 1)]).unwrap();
        assert_eq!(zeroset(&edge).vertices(), vec![RatPoint::from_ints(&[0]), RatPoint::from_ints(&[1])]);
        assert!(hat_function(1, &[IntAffine::from_ints(&[1], -2)]).is_err());
    }

    #[test]
    fn shift_kernel() {
        let c = shift_kernel_demo().unwrap();
        assert!(c.holds());
        assert_eq!(c.function.eval_at(&RatPoint::from_ints(&[1, 0])).unwrap(), int(1));
        assert_eq!(c.function.eval_at(&p2((1, 2), (1, 4))).unwrap(), rat(1, 4));
    }

    #[test]
    fn zmap_ranges() {
        let id = ZMapFn::identity(2).unwrap();
        assert_eq!(range_of_zmap(&id).unwrap().volume(), int(1));
        let x1 = McNFunction::var(2, 1).unwrap();
        let g = ZMapFn::new(vec![x1.clone(), McNFunction::zero(2).unwrap()]).unwrap();
        let r = range_of_zmap(&g).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.simplices()[0].vertices(), &[RatPoint::from_ints(&[0, 0]), RatPoint::from_ints(&[1, 0])]);
        let x2 = McNFunction::var(2, 2).unwrap();
        let g = ZMapFn::new(vec![x1.meet(&x2).unwrap(), x1.join(&x2).unwrap()]).unwrap();
        let r = range_of_zmap(&g).unwrap();
        assert_eq!(r.volume(), rat(1, 2));
        assert_eq!(denominator_census(&r, 2), 3);
        assert!(r.contains(&p2((1, 3), (2, 3))));
        assert!(!r.contains(&p2((2, 3), (1, 3))));
    }

    #[test]
    fn composition() {
        let x = McNFunction::var(1, 1).unwrap();
        let double = x.mv_plus(&x).unwrap();
        let g = ZMapFn::new(vec![double.clone()]).unwrap();
        assert!(compose(&x, &g).unwrap().equal(&double).unwrap());
        let d = from_term(&parse_term("(x1 (-) x2) v (x2 (-) x1)", 2).unwrap(), 2).unwrap();
        assert!(compose(&d, &ZMapFn::identity(2).unwrap()).unwrap().equal(&d).unwrap());
        let diag = ZMapFn::new(vec![x.clone(), x.clone()]).unwrap();
        assert!(compose(&d, &diag).unwrap().is_zero());
    }
}
