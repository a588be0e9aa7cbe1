use num_traits::{One, Signed, Zero};

use super::affine::{AffineMap, RatAffine};
use super::linalg;
use super::polytope::extreme_points;
use crate::error::{Error, Result};
use crate::exactnum::{RatPoint, Rational};

/// A closed rational simplex in `[0,1]^n`; vertices are affinely
/// independent and kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalSimplex {
    vertices: Vec<RatPoint>,
}

impl RationalSimplex {
    pub fn new(mut vertices: Vec<RatPoint>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Invalid("a simplex needs at least one vertex".into()));
        };
        let n = first.dim();
        if vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::Dimension("vertices of different dimensions".into()));
        }
        if let Some(v) = vertices.iter().find(|v| !v.in_unit_cube()) {
            return Err(Error::OutOfRange(format!("vertex {v} is outside [0,1]^{n}")));
        }
        let refs: Vec<&RatPoint> = vertices.iter().collect();
        if vertices.len() > n + 1 || linalg::affine_rank(&refs) + 1 != vertices.len() {
            return Err(Error::Invalid("vertices are not affinely independent".into()));
        }
        vertices.sort();
        Ok(RationalSimplex { vertices })
    }

    /// Caller guarantees affine independence.
    pub(crate) fn from_unchecked(mut vertices: Vec<RatPoint>) -> Self {
        vertices.sort();
        RationalSimplex { vertices }
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn edge_vectors(&self) -> Vec<Vec<Rational>> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.sub(v0)).collect()
    }

    /// Barycentric coordinates of `p` (one per vertex), or `None` if `p` is
    /// off the affine hull.
    pub fn barycentric(&self, p: &RatPoint) -> Option<Vec<Rational>> {
        let rel = p.sub(&self.vertices[0]);
        let tail = linalg::coordinates_in_span(&self.edge_vectors(), &rel)?;
        let head = Rational::one() - tail.iter().sum::<Rational>();
        let mut out = Vec::with_capacity(tail.len() + 1);
        out.push(head);
        out.extend(tail);
        Some(out)
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        self.barycentric(p).is_some_and(|b| b.iter().all(|c| !c.is_negative()))
    }

    /// Relative interior membership.
    pub fn contains_interior(&self, p: &RatPoint) -> bool {
        self.barycentric(p).is_some_and(|b| b.iter().all(|c| c.is_positive()))
    }

    /// Half-spaces `λ_i(x) ≥ 0` cutting out a full-dimensional simplex;
    /// `λ_i` is the barycentric coordinate of vertex `i`.
    pub fn halfspaces(&self) -> Vec<RatAffine> {
        debug_assert!(self.is_full());
        let n = self.ambient_dim();
        // columns are edge vectors
        let edges = self.edge_vectors();
        let b: Vec<Vec<Rational>> = (0..n).map(|i| edges.iter().map(|e| e[i].clone()).collect()).collect();
        let inv = linalg::inverse(&b).expect("full simplex has invertible edge matrix");
        let v0 = &self.vertices[0];
        let mut tails: Vec<RatAffine> = inv
            .into_iter()
            .map(|row| {
                let offset = -linalg::dot(&row, v0.coords());
                RatAffine { coeffs: row, offset }
            })
            .collect();
        let mut head = RatAffine { coeffs: vec![Rational::zero(); n], offset: Rational::one() };
        for t in &tails {
            for (h, c) in head.coeffs.iter_mut().zip(&t.coeffs) {
                *h -= c;
            }
            head.offset -= &t.offset;
        }
        tails.insert(0, head);
        tails
    }

    pub fn centroid(&self) -> RatPoint {
        let k = Rational::from_integer((self.vertices.len() as i64).into());
        let n = self.ambient_dim();
        RatPoint::new((0..n).map(|i| self.vertices.iter().map(|v| &v.coords()[i]).sum::<Rational>() / &k).collect())
    }

    /// Lebesgue measure of a full-dimensional simplex (0 otherwise).
    pub fn volume(&self) -> Rational {
        if !self.is_full() {
            return Rational::zero();
        }
        let n = self.ambient_dim();
        let det = linalg::determinant(&self.edge_vectors()).abs();
        let fact: i64 = (1..=n as i64).product();
        det / Rational::from_integer(fact.into())
    }

    /// Coordinate-wise bounds `(lo, hi)`.
    pub fn bounds(&self) -> (Vec<Rational>, Vec<Rational>) {
        let n = self.ambient_dim();
        let lo = (0..n).map(|i| self.vertices.iter().map(|v| &v.coords()[i]).min().unwrap().clone()).collect();
        let hi = (0..n).map(|i| self.vertices.iter().map(|v| &v.coords()[i]).max().unwrap().clone()).collect();
        (lo, hi)
    }

    pub fn has_vertex(&self, p: &RatPoint) -> bool {
        self.vertices.binary_search(p).is_ok()
    }
}

/// The image of a simplex under an affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexImage {
    /// Image vertices are affinely independent: the image is a simplex of
    /// the same dimension.
    Simplex(RationalSimplex),
    /// The map collapses dimension; the image is the convex hull of
    /// `hull` (its extreme points) and has dimension `dim`.
    Degenerate { hull: Vec<RatPoint>, dim: usize },
}

impl SimplexImage {
    pub fn dim(&self) -> usize {
        match self {
            SimplexImage::Simplex(s) => s.dim(),
            SimplexImage::Degenerate { dim, .. } => *dim,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, SimplexImage::Degenerate { .. })
    }

    pub fn points(&self) -> &[RatPoint] {
        match self {
            SimplexImage::Simplex(s) => s.vertices(),
            SimplexImage::Degenerate { hull, .. } => hull,
        }
    }
}

/// Convex hull of the vertex images of `s` under `f`, flagging dimension
/// collapse. Vertex images of an integer-affine map at rational points
/// are rational.
pub fn image_of_simplex(s: &RationalSimplex, f: &AffineMap) -> Result<SimplexImage> {
    if f.domain_dim() != s.ambient_dim() {
        return Err(Error::Dimension(format!(
            "map expects dimension {}, simplex lives in {}",
            f.domain_dim(),
            s.ambient_dim()
        )));
    }
    let mut images: Vec<RatPoint> = s.vertices().iter().map(|v| f.apply(v)).collect();
    images.sort();
    images.dedup();
    let refs: Vec<&RatPoint> = images.iter().collect();
    let dim = linalg::affine_rank(&refs);
    if dim == s.dim() {
        Ok(SimplexImage::Simplex(RationalSimplex::from_unchecked(images)))
    } else {
        Ok(SimplexImage::Degenerate { hull: extreme_points(&images), dim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn tri(pts: &[(i64, i64)]) -> RationalSimplex {
        RationalSimplex::new(pts.iter().map(|&(x, y)| RatPoint::from_ints(&[x, y])).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(RationalSimplex::new(vec![
            RatPoint::from_ints(&[0, 0]),
            RatPoint::from_ints(&[1, 1]),
            RatPoint::from_pairs(&[(1, 2), (1, 2)])
        ])
        .is_err());
        assert!(RationalSimplex::new(vec![RatPoint::from_ints(&[0, 2])]).is_err());
        assert!(RationalSimplex::new(vec![]).is_err());
    }

    #[test]
    fn membership_and_halfspaces() {
        let s = tri(&[(0, 0), (1, 0), (1, 1)]);
        let inside = RatPoint::from_pairs(&[(2, 3), (1, 3)]);
        let outside = RatPoint::from_pairs(&[(1, 3), (2, 3)]);
        assert!(s.contains(&inside));
        assert!(!s.contains(&outside));
        assert!(s.contains(&RatPoint::from_pairs(&[(1, 2), (1, 2)])));
        assert!(!s.contains_interior(&RatPoint::from_pairs(&[(1, 2), (1, 2)])));
        for h in s.halfspaces() {
            assert!(!h.eval(&inside).is_negative());
        }
        assert!(s.halfspaces().iter().any(|h| h.eval(&outside).is_negative()));
        assert_eq!(s.volume(), rat(1, 2));
    }

    #[test]
    fn lower_dim_membership() {
        let seg = RationalSimplex::new(vec![RatPoint::from_ints(&[0, 0]), RatPoint::from_ints(&[1, 1])]).unwrap();
        assert!(seg.contains(&RatPoint::from_pairs(&[(1, 3), (1, 3)])));
        assert!(!seg.contains(&RatPoint::from_pairs(&[(1, 3), (1, 2)])));
        assert_eq!(seg.volume(), int(0));
    }

    #[test]
    fn image_examples() {
        let s = tri(&[(0, 0), (1, 0), (0, 1)]);
        let id = AffineMap::identity(2);
        assert_eq!(image_of_simplex(&s, &id).unwrap(), SimplexImage::Simplex(s.clone()));
        let shear = AffineMap::from_ints(&[&[1, 0], &[1, 1]], &[0, 0]).unwrap();
        assert_eq!(image_of_simplex(&s, &shear).unwrap(), SimplexImage::Simplex(tri(&[(0, 0), (1, 1), (0, 1)])));
        let collapse = AffineMap::from_ints(&[&[1, 0], &[0, 0]], &[0, 0]).unwrap();
        let img = image_of_simplex(&s, &collapse).unwrap();
        assert_eq!(
            img,
            SimplexImage::Degenerate { hull: vec![RatPoint::from_ints(&[0, 0]), RatPoint::from_ints(&[1, 0])], dim: 1 }
        );
        assert!(image_of_simplex(&s, &AffineMap::identity(3)).is_err());
    }
}
