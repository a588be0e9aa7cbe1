use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, RatPoint, Rational};
use crate::plgeom::{refine_pair, split_cells, triangulate_cube, ComplexJson, IntAffine, SimplicialComplex};

/// A continuous piecewise-linear function on the carrier of a pure
/// full-dimensional rational complex, affine with integer coefficients on
/// each cell. These are the elements of the free unital l-group `(M_n, 1)`
/// when the carrier is the whole cube.
#[derive(Clone, Debug)]
pub struct LGroupFunction {
    domain: Arc<SimplicialComplex>,
    pieces: Vec<IntAffine>,
}

/// Serialized form of a function: its domain plus one affine piece per cell.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctionJson {
    pub n: usize,
    pub simplices: Vec<Vec<Vec<String>>>,
    pub pieces: Vec<PieceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceJson {
    pub cell: usize,
    pub coeffs: Vec<i64>,
    pub offset: i64,
}

impl LGroupFunction {
    /// Validates piece count, dimensions and continuity (adjacent pieces
    /// must agree on every shared vertex).
    pub fn new(domain: Arc<SimplicialComplex>, pieces: Vec<IntAffine>) -> Result<Self> {
        if !domain.is_pure_full() || domain.is_empty() {
            return Err(Error::Unsupported("domain must be a nonempty pure full-dimensional complex".into()));
        }
        if pieces.len() != domain.len() {
            return Err(Error::Invalid(format!("{} pieces for {} cells", pieces.len(), domain.len())));
        }
        let n = domain.ambient_dim();
        if pieces.iter().any(|p| p.dim() != n) {
            return Err(Error::Dimension(format!("pieces must be functionals on R^{n}")));
        }
        for (v, cells) in domain.vertex_star_index() {
            let first = pieces[cells[0]].eval(&v);
            if cells[1..].iter().any(|&c| pieces[c].eval(&v) != first) {
                return Err(Error::Discontinuous(format!("pieces disagree at vertex {v}")));
            }
        }
        Ok(LGroupFunction { domain, pieces })
    }

    pub(crate) fn from_parts(domain: Arc<SimplicialComplex>, pieces: Vec<IntAffine>) -> Self {
        debug_assert_eq!(domain.len(), pieces.len());
        LGroupFunction { domain, pieces }
    }

    pub fn constant_on(domain: Arc<SimplicialComplex>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let n = domain.ambient_dim();
        let pieces = vec![IntAffine::constant(n, c); domain.len()];
        LGroupFunction { domain, pieces }
    }

    /// The projection `x ↦ x_i` (0-based `i`).
    pub fn coordinate_on(domain: Arc<SimplicialComplex>, i: usize) -> Self {
        let n = domain.ambient_dim();
        let pieces = vec![IntAffine::coordinate(n, i); domain.len()];
        LGroupFunction { domain, pieces }
    }

    /// A single affine functional on the whole cube `[0,1]^n`.
    pub fn affine_on_cube(h: IntAffine) -> Result<Self> {
        let domain = cube(h.dim())?;
        let pieces = vec![h; domain.len()];
        Ok(LGroupFunction { domain, pieces })
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn domain_arc(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn pieces(&self) -> &[IntAffine] {
        &self.pieces
    }

    pub fn arity(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn eval_at(&self, p: &RatPoint) -> Result<Rational> {
        if p.dim() != self.arity() {
            return Err(Error::Dimension(format!(
                "point of dimension {} for a function of arity {}",
                p.dim(),
                self.arity()
            )));
        }
        let cell = self.domain.locate(p).ok_or_else(|| Error::OutsideCarrier(p.to_string()))?;
        Ok(self.pieces[cell].eval(p))
    }

    /// Value at every vertex of the domain.
    pub fn vertex_values(&self) -> Vec<(RatPoint, Rational)> {
        self.domain
            .vertex_star_index()
            .into_iter()
            .map(|(v, cells)| {
                let val = self.pieces[cells[0]].eval(&v);
                (v, val)
            })
            .collect()
    }

    pub fn min_max(&self) -> (Rational, Rational) {
        let vals: Vec<Rational> = self.vertex_values().into_iter().map(|(_, v)| v).collect();
        let lo = vals.iter().min().cloned().unwrap_or_else(Rational::zero);
        let hi = vals.iter().max().cloned().unwrap_or_else(Rational::zero);
        (lo, hi)
    }

    fn map_pieces(&self, f: impl Fn(&IntAffine) -> IntAffine) -> Self {
        LGroupFunction { domain: self.domain.clone(), pieces: self.pieces.iter().map(f).collect() }
    }

    /// Puts both functions on a common domain, returning the shared domain
    /// and the pair of pieces on each cell.
    fn aligned(&self, other: &Self) -> Result<(Arc<SimplicialComplex>, Vec<(IntAffine, IntAffine)>)> {
        if Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain {
            let pairs = self.pieces.iter().cloned().zip(other.pieces.iter().cloned()).collect();
            return Ok((self.domain.clone(), pairs));
        }
        let (k, origins) = refine_pair(&self.domain, &other.domain)?;
        let pairs = origins.iter().map(|&(i, j)| (self.pieces[i].clone(), other.pieces[j].clone())).collect();
        Ok((Arc::new(k), pairs))
    }

    fn combine(&self, other: &Self, op: impl Fn(&IntAffine, &IntAffine) -> IntAffine) -> Result<Self> {
        let (domain, pairs) = self.aligned(other)?;
        let pieces = pairs.iter().map(|(a, b)| op(a, b)).collect();
        Ok(LGroupFunction { domain, pieces })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, IntAffine::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, IntAffine::sub)
    }

    pub fn neg(&self) -> Self {
        self.map_pieces(IntAffine::neg)
    }

    pub fn scalar(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        self.map_pieces(|p| p.scale(&k))
    }

    pub fn add_constant(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        self.map_pieces(|p| IntAffine::new(p.coeffs.clone(), &p.offset + &c))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        let (domain, pairs) = self.aligned(other)?;
        Ok(select(&domain, &pairs, true))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        let (domain, pairs) = self.aligned(other)?;
        Ok(select(&domain, &pairs, false))
    }

    /// `self ∨ c` for an integer constant.
    pub fn join_constant(&self, c: impl Into<BigInt>) -> Self {
        self.with_constant(c.into(), true)
    }

    /// `self ∧ c` for an integer constant.
    pub fn meet_constant(&self, c: impl Into<BigInt>) -> Self {
        self.with_constant(c.into(), false)
    }

    fn with_constant(&self, c: BigInt, take_max: bool) -> Self {
        let n = self.arity();
        let pairs: Vec<(IntAffine, IntAffine)> =
            self.pieces.iter().map(|p| (p.clone(), IntAffine::constant(n, c.clone()))).collect();
        select(&self.domain, &pairs, take_max)
    }

    /// `|f| = f ∨ −f`
    pub fn abs(&self) -> Self {
        let pairs: Vec<(IntAffine, IntAffine)> = self.pieces.iter().map(|p| (p.clone(), p.neg())).collect();
        select(&self.domain, &pairs, true)
    }

    /// Exact functional equality; errors when the carriers differ.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        let (_, pairs) = self.aligned(other)?;
        Ok(pairs.iter().all(|(a, b)| a == b))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(IntAffine::is_zero)
    }

    /// Whether `self ≥ 0` everywhere (vertex check suffices cellwise).
    pub fn is_nonnegative(&self) -> bool {
        self.vertex_values().iter().all(|(_, v)| !v.is_negative())
    }

    /// Reinterprets `h` with `0 ≤ h ≤ 1` as an element of `Γ(M_n, 1)`.
    pub fn unit_interval_part(&self) -> Result<McNFunction> {
        McNFunction::try_from_lgroup(self.clone())
    }

    pub fn to_json(&self) -> Result<FunctionJson> {
        let ComplexJson { n, simplices } = self.domain.to_json();
        let to_i64 =
            |b: &BigInt| b.to_i64().ok_or_else(|| Error::Unsupported(format!("coefficient {b} exceeds 64 bits")));
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(cell, p)| {
                Ok(PieceJson {
                    cell,
                    coeffs: p.coeffs.iter().map(to_i64).collect::<Result<_>>()?,
                    offset: to_i64(&p.offset)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FunctionJson { n, simplices, pieces })
    }

    pub fn from_json(json: &FunctionJson) -> Result<Self> {
        let domain = SimplicialComplex::from_json(&ComplexJson { n: json.n, simplices: json.simplices.clone() })?;
        let mut pieces: Vec<Option<IntAffine>> = vec![None; domain.len()];
        for p in &json.pieces {
            let slot =
                pieces.get_mut(p.cell).ok_or_else(|| Error::Invalid(format!("piece for missing cell {}", p.cell)))?;
            *slot = Some(IntAffine::new(p.coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(p.offset)));
        }
        let pieces = pieces
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::Invalid(format!("cell {i} has no piece"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Arc::new(domain), pieces)
    }
}

impl fmt::Display for LGroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, p) in self.domain.simplices().iter().zip(&self.pieces) {
            let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]: {p}", vs.join(" "))?;
        }
        Ok(())
    }
}

/// Splits each cell along `a = b` and keeps the larger (or smaller) piece.
fn select(domain: &Arc<SimplicialComplex>, pairs: &[(IntAffine, IntAffine)], take_max: bool) -> LGroupFunction {
    if pairs.iter().all(|(a, b)| a == b) {
        let pieces = pairs.iter().map(|(a, _)| a.clone()).collect();
        return LGroupFunction { domain: domain.clone(), pieces };
    }
    let (k, origins) = split_cells(domain, |i| {
        let (a, b) = &pairs[i];
        (a != b).then(|| a.sub(b))
    });
    let pieces = k
        .simplices()
        .iter()
        .zip(&origins)
        .map(|(s, &i)| {
            let (a, b) = &pairs[i];
            if a == b {
                return a.clone();
            }
            let c = s.centroid();
            let a_wins = (a.eval(&c) >= b.eval(&c)) == take_max;
            if a_wins {
                a.clone()
            } else {
                b.clone()
            }
        })
        .collect();
    LGroupFunction { domain: Arc::new(k), pieces }
}

thread_local! {
    static CUBES: std::cell::RefCell<Vec<Option<Arc<SimplicialComplex>>>> = const { std::cell::RefCell::new(Vec::new()) };
}

/// The Kuhn triangulation of `[0,1]^n`, shared between callers so that
/// functions built on the cube can skip refinement.
pub fn cube(n: usize) -> Result<Arc<SimplicialComplex>> {
    CUBES.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() <= n {
            c.resize(n + 1, None);
        }
        if let Some(k) = &c[n] {
            return Ok(k.clone());
        }
        let k = Arc::new(triangulate_cube(n)?);
        c[n] = Some(k.clone());
        Ok(k)
    })
}

/// A McNaughton function: an l-group function with values in `[0,1]`.
#[derive(Clone, Debug)]
pub struct McNFunction(LGroupFunction);

impl McNFunction {
    pub fn new(domain: Arc<SimplicialComplex>, pieces: Vec<IntAffine>) -> Result<Self> {
        Self::try_from_lgroup(LGroupFunction::new(domain, pieces)?)
    }

    /// Checks `0 ≤ f ≤ 1` at the vertices of the domain.
    pub fn try_from_lgroup(f: LGroupFunction) -> Result<Self> {
        let (lo, hi) = f.min_max();
        if lo.is_negative() || hi > Rational::one() {
            return Err(Error::OutOfRange(format!("function takes values in [{lo}, {hi}]")));
        }
        Ok(McNFunction(f))
    }

    pub fn zero(n: usize) -> Result<Self> {
        Ok(McNFunction(LGroupFunction::constant_on(cube(n)?, 0)))
    }

    pub fn one(n: usize) -> Result<Self> {
        Ok(McNFunction(LGroupFunction::constant_on(cube(n)?, 1)))
    }

    pub fn zero_on(domain: Arc<SimplicialComplex>) -> Self {
        McNFunction(LGroupFunction::constant_on(domain, 0))
    }

    pub fn one_on(domain: Arc<SimplicialComplex>) -> Self {
        McNFunction(LGroupFunction::constant_on(domain, 1))
    }

    /// The free generator `x_i` (1-based) on `[0,1]^n`.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, arity: n });
        }
        Ok(McNFunction(LGroupFunction::coordinate_on(cube(n)?, i - 1)))
    }

    pub fn var_on(domain: Arc<SimplicialComplex>, i: usize) -> Result<Self> {
        let n = domain.ambient_dim();
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, arity: n });
        }
        Ok(McNFunction(LGroupFunction::coordinate_on(domain, i - 1)))
    }

    pub fn as_lgroup(&self) -> &LGroupFunction {
        &self.0
    }

    pub fn into_lgroup(self) -> LGroupFunction {
        self.0
    }

    pub fn domain(&self) -> &SimplicialComplex {
        self.0.domain()
    }

    pub fn domain_arc(&self) -> &Arc<SimplicialComplex> {
        self.0.domain_arc()
    }

    pub fn pieces(&self) -> &[IntAffine] {
        self.0.pieces()
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    /// Exact value at a rational point of the carrier.
    pub fn eval_at(&self, p: &RatPoint) -> Result<Rational> {
        self.0.eval_at(p)
    }

    /// `¬f = 1 − f`
    pub fn mv_neg(&self) -> Self {
        McNFunction(self.0.neg().add_constant(1))
    }

    /// `f ⊕ g = min(1, f + g)`
    pub fn mv_plus(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.add(&other.0)?.meet_constant(1)))
    }

    /// `f ⊙ g = max(0, f + g − 1)`
    pub fn mv_times(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.add(&other.0)?.add_constant(-1).join_constant(0)))
    }

    /// `f ⊖ g = max(0, f − g)`
    pub fn mv_minus(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.sub(&other.0)?.join_constant(0)))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.join(&other.0)?))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.meet(&other.0)?))
    }

    /// `d(f, g) = |f − g|`
    pub fn distance(&self, other: &Self) -> Result<Self> {
        Ok(McNFunction(self.0.sub(&other.0)?.abs()))
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.0.equal(&other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_json(&self) -> Result<FunctionJson> {
        self.0.to_json()
    }

    pub fn from_json(json: &FunctionJson) -> Result<Self> {
        Self::try_from_lgroup(LGroupFunction::from_json(json)?)
    }
}

impl fmt::Display for McNFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn x() -> McNFunction {
        McNFunction::var(1, 1).unwrap()
    }

    fn pt(p: i64, q: i64) -> RatPoint {
        RatPoint::from_pairs(&[(p, q)])
    }

    #[test]
    fn doubling_truncates() {
        let f = x().mv_plus(&x()).unwrap();
        assert_eq!(f.eval_at(&pt(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(f.eval_at(&pt(3, 4)).unwrap(), int(1));
        assert_eq!(f.domain().len(), 2);
        let two_x = LGroupFunction::affine_on_cube(IntAffine::from_ints(&[2], 0)).unwrap();
        assert!(!f.as_lgroup().equal(&two_x).unwrap());
    }

    #[test]
    fn complement_sums_to_one() {
        let f = x().mv_plus(&x().mv_neg()).unwrap();
        assert!(f.equal(&McNFunction::one(1).unwrap()).unwrap());
        assert!(x().mv_neg().mv_neg().equal(&x()).unwrap());
        assert!(x().mv_plus(&McNFunction::zero(1).unwrap()).unwrap().equal(&x()).unwrap());
    }

    #[test]
    fn absolute_difference() {
        let x1 = McNFunction::var(2, 1).unwrap();
        let x2 = McNFunction::var(2, 2).unwrap();
        let d = x1.mv_minus(&x2).unwrap().join(&x2.mv_minus(&x1).unwrap()).unwrap();
        assert_eq!(d.eval_at(&RatPoint::from_pairs(&[(3, 4), (1, 4)])).unwrap(), rat(1, 2));
        assert!(d.equal(&x1.distance(&x2).unwrap()).unwrap());
    }

    #[test]
    fn range_and_continuity_checks() {
        let k = cube(1).unwrap();
        assert!(McNFunction::new(k.clone(), vec![IntAffine::from_ints(&[2], 0)]).is_err());
        let two = crate::plgeom::subdivide_by_hyperplane(&k, &IntAffine::from_ints(&[2], -1)).unwrap();
        let bad =
            LGroupFunction::new(Arc::new(two), vec![IntAffine::from_ints(&[1], 0), IntAffine::from_ints(&[0], 0)]);
        assert!(matches!(bad, Err(Error::Discontinuous(_))));
    }

    #[test]
    fn lgroup_part() {
        let h = LGroupFunction::affine_on_cube(IntAffine::from_ints(&[2], -1)).unwrap().join_constant(0);
        let f = h.unit_interval_part().unwrap();
        assert_eq!(f.eval_at(&pt(3, 4)).unwrap(), rat(1, 2));
        let sum = LGroupFunction::affine_on_cube(IntAffine::from_ints(&[1], 0))
            .unwrap()
            .add(&LGroupFunction::affine_on_cube(IntAffine::from_ints(&[-1], 1)).unwrap())
            .unwrap();
        assert!(sum.equal(&LGroupFunction::constant_on(cube(1).unwrap(), 1)).unwrap());
        assert!(LGroupFunction::affine_on_cube(IntAffine::from_ints(&[2], 0)).unwrap().unit_interval_part().is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = x().mv_plus(&x()).unwrap();
        let j = f.to_json().unwrap();
        let g = McNFunction::from_json(&j).unwrap();
        assert!(f.equal(&g).unwrap());
        assert_eq!(serde_json::to_value(&j).unwrap()["pieces"][0]["cell"], 0);
    }
}
