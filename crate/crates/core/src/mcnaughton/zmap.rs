use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::function::{LGroupFunction, McNFunction};
use crate::error::{Error, Result};
use crate::exactnum::{RatPoint, Rational};
use crate::plgeom::{
    enumerate_vertices, extreme_points, image_of_simplex, refine_pair, split_cells, triangulate_convex,
    triangulate_cube, AffineMap, CellGrid, IntAffine, RatAffine, RationalSimplex, SimplexImage, SimplicialComplex,
};

/// A polyhedral Z-map: a tuple of McNaughton functions on one domain.
#[derive(Clone, Debug)]
pub struct ZMapFn {
    domain: Arc<SimplicialComplex>,
    /// `maps[c]` is the affine map on cell `c`.
    maps: Vec<AffineMap>,
}

impl ZMapFn {
    /// Brings all components onto a common refinement of their domains.
    pub fn new(components: Vec<McNFunction>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Invalid("a Z-map needs at least one component".into()));
        };
        let mut domain = first.domain_arc().clone();
        let mut rows: Vec<Vec<IntAffine>> = first.pieces().iter().map(|p| vec![p.clone()]).collect();
        for c in &components[1..] {
            if Arc::ptr_eq(&domain, c.domain_arc()) || *domain == *c.domain() {
                for (r, p) in rows.iter_mut().zip(c.pieces()) {
                    r.push(p.clone());
                }
                continue;
            }
            let (k, origins) = refine_pair(&domain, c.domain())?;
            rows = origins
                .iter()
                .map(|&(i, j)| {
                    let mut r = rows[i].clone();
                    r.push(c.pieces()[j].clone());
                    r
                })
                .collect();
            domain = Arc::new(k);
        }
        let maps = rows.iter().map(|r| AffineMap::from_rows(r)).collect();
        Ok(ZMapFn { domain, maps })
    }

    /// The identity of `[0,1]^n`.
    pub fn identity(n: usize) -> Result<Self> {
        let comps = (1..=n).map(|i| McNFunction::var(n, i)).collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn source_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.maps[0].codomain_dim()
    }

    pub fn component(&self, j: usize) -> McNFunction {
        let pieces = self.maps.iter().map(|m| m.rows()[j].clone()).collect();
        McNFunction::try_from_lgroup(LGroupFunction::from_parts(self.domain.clone(), pieces))
            .expect("components of a Z-map are McNaughton functions")
    }

    pub fn components(&self) -> Vec<McNFunction> {
        (0..self.target_dim()).map(|j| self.component(j)).collect()
    }

    pub fn apply(&self, p: &RatPoint) -> Result<RatPoint> {
        let c = self.domain.locate(p).ok_or_else(|| Error::OutsideCarrier(p.to_string()))?;
        Ok(self.maps[c].apply(p))
    }

    /// `f ∘ self`, where `f` has one piece per cell of `f_domain`.
    fn pull_back_pieces(
        &self,
        f_domain: &SimplicialComplex,
        f_pieces: &[Vec<IntAffine>],
    ) -> Result<(SimplicialComplex, Vec<Vec<IntAffine>>)> {
        let n = self.source_dim();
        if f_domain.ambient_dim() != self.target_dim() {
            return Err(Error::Dimension(format!(
                "composing a function on R^{} with a map into R^{}",
                f_domain.ambient_dim(),
                self.target_dim()
            )));
        }
        let grid = CellGrid::new(f_domain.ambient_dim(), f_domain.simplices());
        let f_bounds: Vec<_> = f_domain.simplices().iter().map(RationalSimplex::bounds).collect();
        let mut f_halfspaces: Vec<Option<Vec<RatAffine>>> = vec![None; f_domain.len()];
        let mut cells = Vec::new();
        let mut pieces = Vec::new();
        for (c, s) in self.domain.simplices().iter().enumerate() {
            let map = &self.maps[c];
            let image: Vec<RatPoint> = s.vertices().iter().map(|v| map.apply(v)).collect();
            let img_simplex = RationalSimplex::from_unchecked(image.clone());
            let (lo, hi) = img_simplex.bounds();
            let own = s.halfspaces();
            let mut seen: BTreeSet<Vec<RatPoint>> = BTreeSet::new();
            let mut covered = Rational::zero();
            for d in grid.query(&img_simplex) {
                let (dlo, dhi) = &f_bounds[d];
                if (0..lo.len()).any(|i| hi[i] < dlo[i] || dhi[i] < lo[i]) {
                    continue;
                }
                let dh = f_halfspaces[d].get_or_insert_with(|| f_domain.simplices()[d].halfspaces());
                let mut hs = own.clone();
                hs.extend(dh.iter().map(|h| h.pullback(map)).filter(|h| !h.is_trivially_nonneg()));
                let verts = enumerate_vertices(n, &hs);
                if verts.len() < n + 1 {
                    continue;
                }
                let refs: Vec<&RatPoint> = verts.iter().collect();
                if crate::plgeom::linalg::affine_rank(&refs) < n || !seen.insert(verts.clone()) {
                    continue;
                }
                for t in triangulate_convex(&verts) {
                    let t = RationalSimplex::from_unchecked(t);
                    covered += t.volume();
                    cells.push(t);
                    pieces.push(f_pieces[d].iter().map(|p| p.compose(map)).collect());
                }
            }
            if covered != s.volume() {
                return Err(Error::OutOfRange("the map leaves the domain of the outer function".into()));
            }
        }
        Ok((SimplicialComplex::from_unchecked(n, cells), pieces))
    }

    /// `f ∘ self`.
    pub fn compose_function(&self, f: &McNFunction) -> Result<McNFunction> {
        let rows: Vec<Vec<IntAffine>> = f.pieces().iter().map(|p| vec![p.clone()]).collect();
        let (k, pieces) = self.pull_back_pieces(f.domain(), &rows)?;
        let pieces = pieces.into_iter().map(|mut r| r.pop().unwrap()).collect();
        McNFunction::try_from_lgroup(LGroupFunction::from_parts(Arc::new(k), pieces))
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &ZMapFn) -> Result<ZMapFn> {
        let rows: Vec<Vec<IntAffine>> = outer.maps.iter().map(AffineMap::rows).collect();
        let (k, pieces) = self.pull_back_pieces(&outer.domain, &rows)?;
        let maps = pieces.iter().map(|r| AffineMap::from_rows(r)).collect();
        Ok(ZMapFn { domain: Arc::new(k), maps })
    }
}

/// `f ∘ g`.
pub fn compose(f: &McNFunction, g: &ZMapFn) -> Result<McNFunction> {
    g.compose_function(f)
}

fn facet_hyperplane(h: &RatAffine) -> IntAffine {
    let h = IntAffine::from_rational(&h.coeffs, &h.offset).primitive();
    // orient so the first nonzero coefficient is positive
    match h.coeffs.iter().find(|c| !c.is_zero()) {
        Some(c) if c < &Zero::zero() => h.neg(),
        _ => h,
    }
}

/// The image `g(carrier)` as a rational complex. Full-dimensional images
/// are merged into a proper complex; lower-dimensional images not already
/// covered are kept as additional cells.
pub fn range_of_zmap(g: &ZMapFn) -> Result<SimplicialComplex> {
    let m = g.target_dim();
    let mut full: Vec<RationalSimplex> = Vec::new();
    let mut lower: Vec<Vec<RatPoint>> = Vec::new();
    for (s, map) in g.domain.simplices().iter().zip(&g.maps) {
        match image_of_simplex(s, map)? {
            SimplexImage::Simplex(t) if t.dim() == m => full.push(t),
            SimplexImage::Simplex(t) => lower.push(t.vertices().to_vec()),
            SimplexImage::Degenerate { hull, .. } => lower.push(hull),
        }
    }
    full.sort();
    full.dedup();
    let full_complex = if full.is_empty() {
        SimplicialComplex::empty(m)
    } else if let Ok(k) = SimplicialComplex::new(m, full.clone()) {
        k
    } else {
        overlay(m, &full)?
    };
    let mut cells: Vec<RationalSimplex> = full_complex.simplices().to_vec();
    let mut extra: BTreeSet<RationalSimplex> = BTreeSet::new();
    for hull in lower {
        if full.iter().any(|t| hull.iter().all(|p| t.contains(p))) {
            continue;
        }
        for t in triangulate_convex(&extreme_points(&hull)) {
            extra.insert(RationalSimplex::from_unchecked(t));
        }
    }
    let extra: Vec<RationalSimplex> = extra.into_iter().collect();
    for (i, t) in extra.iter().enumerate() {
        let is_face = extra
            .iter()
            .enumerate()
            .any(|(j, u)| j != i && u.dim() > t.dim() && t.vertices().iter().all(|v| u.contains(v)));
        if !is_face {
            cells.push(t.clone());
        }
    }
    Ok(SimplicialComplex::from_unchecked(m, cells))
}

/// A proper complex whose carrier is the union of the given overlapping
/// full-dimensional simplices: the cube is cut along every facet
/// hyperplane and cells inside some simplex are kept.
fn overlay(m: usize, simplices: &[RationalSimplex]) -> Result<SimplicialComplex> {
    let mut planes: BTreeSet<IntAffine> = BTreeSet::new();
    for s in simplices {
        for h in s.halfspaces() {
            planes.insert(facet_hyperplane(&h));
        }
    }
    let mut k = triangulate_cube(m)?;
    for h in &planes {
        if h.is_constant() {
            continue;
        }
        k = split_cells(&k, |_| Some(h.clone())).0;
    }
    let grid = CellGrid::new(m, simplices);
    let cells = k
        .simplices()
        .iter()
        .filter(|c| {
            let p = c.centroid();
            grid.query_point(&p).into_iter().any(|i| simplices[i].contains(&p))
        })
        .cloned()
        .collect();
    Ok(SimplicialComplex::from_unchecked(m, cells))
}
