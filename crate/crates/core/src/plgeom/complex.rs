use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::affine::{IntAffine, RatAffine};
use super::linalg;
use super::polytope::{enumerate_vertices, slice_simplex, triangulate_convex};
use super::simplex::RationalSimplex;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, BigInt, RatPoint, Rational};

/// A finite rational simplicial complex in `[0,1]^n`, stored by its
/// maximal simplices (faces are implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    simplices: Vec<RationalSimplex>,
}

/// JSON form: maximal simplices listed by vertex coordinates in `p/q` form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub n: usize,
    pub simplices: Vec<Vec<Vec<String>>>,
}

impl SimplicialComplex {
    /// Validates ambient dimension, maximality, and (for pairs of
    /// full-dimensional simplices) that any two cells meet in a common face.
    pub fn new(n: usize, simplices: Vec<RationalSimplex>) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::OutOfRange(format!("ambient dimension {n} not in 1..=3")));
        }
        if let Some(s) = simplices.iter().find(|s| s.ambient_dim() != n) {
            return Err(Error::Dimension(format!("simplex in dimension {} inside a complex in {n}", s.ambient_dim())));
        }
        for (i, a) in simplices.iter().enumerate() {
            for (j, b) in simplices.iter().enumerate() {
                if i != j && a.vertices().iter().all(|v| b.has_vertex(v)) {
                    return Err(Error::Invalid("listed simplices must be distinct and maximal".into()));
                }
            }
        }
        let full: Vec<&RationalSimplex> = simplices.iter().filter(|s| s.is_full()).collect();
        for (i, a) in full.iter().enumerate() {
            let ha = a.halfspaces();
            for b in &full[i + 1..] {
                let mut hs = ha.clone();
                hs.extend(b.halfspaces());
                for v in enumerate_vertices(n, &hs) {
                    if !(a.has_vertex(&v) && b.has_vertex(&v)) {
                        return Err(Error::Invalid(format!("simplices meet improperly near {v}")));
                    }
                }
            }
        }
        Ok(SimplicialComplex { n, simplices })
    }

    pub(crate) fn from_unchecked(n: usize, simplices: Vec<RationalSimplex>) -> Self {
        SimplicialComplex { n, simplices }
    }

    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, simplices: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn simplices(&self) -> &[RationalSimplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest dimension among the cells (`None` when empty).
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(RationalSimplex::dim).max()
    }

    pub fn is_pure_full(&self) -> bool {
        self.simplices.iter().all(RationalSimplex::is_full)
    }

    pub fn vertices(&self) -> Vec<RatPoint> {
        let mut vs: Vec<RatPoint> = self.simplices.iter().flat_map(|s| s.vertices().iter().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// n-dimensional measure of the carrier.
    pub fn volume(&self) -> Rational {
        self.simplices.iter().map(RationalSimplex::volume).sum()
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        self.locate(p).is_some()
    }

    /// Index of some cell containing `p`.
    pub fn locate(&self, p: &RatPoint) -> Option<usize> {
        if p.dim() != self.n {
            return None;
        }
        self.simplices.iter().position(|s| in_bounds(s, p) && s.contains(p))
    }

    /// Vertex → cells having it as a vertex.
    pub fn vertex_star_index(&self) -> BTreeMap<RatPoint, Vec<usize>> {
        let mut idx: BTreeMap<RatPoint, Vec<usize>> = BTreeMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            for v in s.vertices() {
                idx.entry(v.clone()).or_default().push(i);
            }
        }
        idx
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.n,
            simplices: self.simplices.iter().map(|s| s.vertices().iter().map(RatPoint::to_strings).collect()).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let simplices = json
            .simplices
            .iter()
            .map(|s| {
                let verts = s
                    .iter()
                    .map(|v| Ok(RatPoint::new(v.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>()?)))
                    .collect::<Result<Vec<_>>>()?;
                RationalSimplex::new(verts)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, simplices)
    }
}

fn in_bounds(s: &RationalSimplex, p: &RatPoint) -> bool {
    (0..p.dim()).all(|i| {
        let c = &p.coords()[i];
        s.vertices().iter().any(|v| &v.coords()[i] <= c) && s.vertices().iter().any(|v| &v.coords()[i] >= c)
    })
}

/// The Kuhn (Freudenthal) triangulation of `[0,1]^n` into `n!` simplices,
/// one per ordering of the coordinates.
pub fn triangulate_cube(n: usize) -> Result<SimplicialComplex> {
    if !(1..=3).contains(&n) {
        return Err(Error::OutOfRange(format!("cube dimension {n} not in 1..=3")));
    }
    let mut perms = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    perms.sort();
    let simplices = perms
        .into_iter()
        .map(|perm| {
            let mut v = vec![0i64; n];
            let mut verts = vec![RatPoint::from_ints(&v)];
            for &axis in &perm {
                v[axis] = 1;
                verts.push(RatPoint::from_ints(&v));
            }
            RationalSimplex::from_unchecked(verts)
        })
        .collect();
    Ok(SimplicialComplex::from_unchecked(n, simplices))
}

/// Bucket grid over `[0,1]^n` for candidate lookup by bounding box.
/// Lookups are conservative; every exact decision is made afterwards.
pub(crate) struct CellGrid {
    n: usize,
    res: usize,
    buckets: Vec<Vec<usize>>,
}

const GRID_EPS: f64 = 1e-9;

fn approx_bounds(s: &RationalSimplex) -> (Vec<f64>, Vec<f64>) {
    let n = s.ambient_dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in s.vertices() {
        for i in 0..n {
            let x = v.coords()[i].to_f64().unwrap_or(0.0);
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    (lo, hi)
}

impl CellGrid {
    pub(crate) fn new(n: usize, cells: &[RationalSimplex]) -> Self {
        let res = match n {
            1 => 64,
            2 => 24,
            _ => 10,
        };
        let mut grid = CellGrid { n, res, buckets: vec![Vec::new(); res.pow(n as u32)] };
        for (i, s) in cells.iter().enumerate() {
            let (lo, hi) = approx_bounds(s);
            for b in grid.bucket_range(&lo, &hi) {
                grid.buckets[b].push(i);
            }
        }
        grid
    }

    fn bucket_range(&self, lo: &[f64], hi: &[f64]) -> Vec<usize> {
        let r = self.res as f64;
        let clamp = |x: f64| (x.max(0.0).min(r - 1.0)) as usize;
        let ranges: Vec<(usize, usize)> =
            (0..self.n).map(|i| (clamp((lo[i] - GRID_EPS) * r), clamp((hi[i] + GRID_EPS) * r))).collect();
        let mut out = vec![0usize];
        for (i, &(a, b)) in ranges.iter().enumerate() {
            let stride = self.res.pow(i as u32);
            out = out.into_iter().flat_map(|base| (a..=b).map(move |k| base + k * stride)).collect();
        }
        out
    }

    pub(crate) fn query(&self, s: &RationalSimplex) -> Vec<usize> {
        let (lo, hi) = approx_bounds(s);
        self.query_box(&lo, &hi)
    }

    pub(crate) fn query_box(&self, lo: &[f64], hi: &[f64]) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.bucket_range(lo, hi).into_iter().flat_map(|b| self.buckets[b].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn query_point(&self, p: &RatPoint) -> Vec<usize> {
        let x: Vec<f64> = p.coords().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
        self.query_box(&x, &x)
    }
}

fn strictly_overlap(a: &(Vec<Rational>, Vec<Rational>), b: &(Vec<Rational>, Vec<Rational>)) -> bool {
    (0..a.0.len()).all(|i| a.0[i].clone().max(b.0[i].clone()) < a.1[i].clone().min(b.1[i].clone()))
}

fn inside(verts: &[RatPoint], hs: &[RatAffine]) -> bool {
    verts.iter().all(|v| hs.iter().all(|h| !h.eval(v).is_negative()))
}

/// Common refinement of two pure full-dimensional complexes with the same
/// carrier. Returns the refined complex and, for each new cell, the
/// indices of the cells of `k1` and `k2` containing it.
pub(crate) fn refine_pair(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
) -> Result<(SimplicialComplex, Vec<(usize, usize)>)> {
    if k1.n != k2.n {
        return Err(Error::Dimension(format!("ambient dimensions {} and {}", k1.n, k2.n)));
    }
    if !k1.is_pure_full() || !k2.is_pure_full() {
        return Err(Error::Unsupported("refinement needs full-dimensional cells".into()));
    }
    if k1.simplices == k2.simplices {
        let origins = (0..k1.len()).map(|i| (i, i)).collect();
        return Ok((k1.clone(), origins));
    }
    let n = k1.n;
    let grid = CellGrid::new(n, &k2.simplices);
    let bounds2: Vec<_> = k2.simplices.iter().map(RationalSimplex::bounds).collect();
    let mut hs2: Vec<Option<Vec<RatAffine>>> = vec![None; k2.len()];
    let mut cells = Vec::new();
    let mut origins = Vec::new();
    for (i, s1) in k1.simplices.iter().enumerate() {
        let b1 = s1.bounds();
        let mut hs1: Option<Vec<RatAffine>> = None;
        for j in grid.query(s1) {
            if !strictly_overlap(&b1, &bounds2[j]) {
                continue;
            }
            let s2 = &k2.simplices[j];
            let h2 = hs2[j].get_or_insert_with(|| s2.halfspaces());
            if inside(s1.vertices(), h2) {
                cells.push(s1.clone());
                origins.push((i, j));
                continue;
            }
            let h1 = hs1.get_or_insert_with(|| s1.halfspaces());
            if inside(s2.vertices(), h1) {
                cells.push(s2.clone());
                origins.push((i, j));
                continue;
            }
            let mut hs = h1.clone();
            hs.extend(h2.iter().cloned());
            let verts = enumerate_vertices(n, &hs);
            if verts.len() < n + 1 {
                continue;
            }
            let refs: Vec<&RatPoint> = verts.iter().collect();
            if linalg::affine_rank(&refs) < n {
                continue;
            }
            for t in triangulate_convex(&verts) {
                cells.push(RationalSimplex::from_unchecked(t));
                origins.push((i, j));
            }
        }
    }
    let out = SimplicialComplex::from_unchecked(n, cells);
    let (v1, v2) = (k1.volume(), k2.volume());
    if v1 != v2 || out.volume() != v1 {
        return Err(Error::CarrierMismatch);
    }
    Ok((out, origins))
}

/// A complex refining both inputs; the carrier is unchanged.
pub fn common_refinement(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<SimplicialComplex> {
    refine_pair(k1, k2).map(|(k, _)| k)
}

/// Splits every cell on which the supplied hyperplane changes sign.
/// Returns the new complex and the originating cell of each new cell.
pub(crate) fn split_cells<F>(k: &SimplicialComplex, mut hyperplane: F) -> (SimplicialComplex, Vec<usize>)
where
    F: FnMut(usize) -> Option<IntAffine>,
{
    let mut cells = Vec::with_capacity(k.len());
    let mut origins = Vec::with_capacity(k.len());
    for (i, s) in k.simplices.iter().enumerate() {
        match hyperplane(i).and_then(|h| slice_simplex(s.vertices(), &h)) {
            Some((pos, neg)) => {
                for part in [pos, neg] {
                    for t in triangulate_convex(&part) {
                        cells.push(RationalSimplex::from_unchecked(t));
                        origins.push(i);
                    }
                }
            }
            None => {
                cells.push(s.clone());
                origins.push(i);
            }
        }
    }
    (SimplicialComplex::from_unchecked(k.n, cells), origins)
}

/// Refines `k` so that `h` has constant sign on every cell.
pub fn subdivide_by_hyperplane(k: &SimplicialComplex, h: &IntAffine) -> Result<SimplicialComplex> {
    if h.dim() != k.n {
        return Err(Error::Dimension(format!("functional on R^{} applied to complex in R^{}", h.dim(), k.n)));
    }
    Ok(split_cells(k, |_| Some(h.clone())).0)
}

/// All points of the carrier of `k` whose least common denominator is
/// exactly `b`, in lexicographic order, found by scanning `(1/b)Z^n`.
pub fn rational_points_with_denominator(k: &SimplicialComplex, b: u64) -> Vec<RatPoint> {
    if b == 0 {
        return Vec::new();
    }
    let n = k.n;
    let grid = CellGrid::new(n, &k.simplices);
    let bb = BigInt::from(b);
    let mut out = Vec::new();
    let mut idx = vec![0u64; n];
    loop {
        let g = idx.iter().fold(b, |acc, &i| acc.gcd(&i));
        if g == 1 {
            let p = RatPoint::new(idx.iter().map(|&i| Rational::new(BigInt::from(i), bb.clone())).collect());
            if grid.query_point(&p).into_iter().any(|c| k.simplices[c].contains(&p)) {
                out.push(p);
            }
        }
        // odometer, last coordinate fastest for lexicographic order
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < b {
                idx[pos] += 1;
                for later in idx.iter_mut().skip(pos + 1) {
                    *later = 0;
                }
                break;
            }
        }
    }
}

/// Number of points of denominator exactly `b` in the carrier of `k`.
pub fn denominator_census(k: &SimplicialComplex, b: u64) -> usize {
    rational_points_with_denominator(k, b).len()
}

impl std::fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<String> = self
            .simplices
            .iter()
            .map(|s| {
                let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
                format!("[{}]", vs.join(" "))
            })
            .collect();
        write!(f, "{}", cells.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn square_other_diagonal() -> SimplicialComplex {
        let p = |x, y| RatPoint::from_ints(&[x, y]);
        SimplicialComplex::new(
            2,
            vec![
                RationalSimplex::new(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap(),
                RationalSimplex::new(vec![p(1, 0), p(0, 1), p(1, 1)]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn kuhn_cubes() {
        for (n, count) in [(1, 1), (2, 2), (3, 6)] {
            let k = triangulate_cube(n).unwrap();
            assert_eq!(k.len(), count);
            assert_eq!(k.volume(), int(1));
            assert!(SimplicialComplex::new(n, k.simplices().to_vec()).is_ok());
        }
        assert!(triangulate_cube(4).is_err());
        assert!(triangulate_cube(0).is_err());
    }

    #[test]
    fn improper_complex_rejected() {
        let p = |x, y| RatPoint::from_ints(&[x, y]);
        let a = RationalSimplex::new(vec![p(0, 0), p(1, 0), p(1, 1)]).unwrap();
        let b = RationalSimplex::new(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert!(SimplicialComplex::new(2, vec![a, b]).is_err());
    }

    #[test]
    fn refinement_of_crossing_diagonals() {
        let k1 = triangulate_cube(2).unwrap();
        let k2 = square_other_diagonal();
        let r = common_refinement(&k1, &k2).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.vertices().contains(&RatPoint::from_pairs(&[(1, 2), (1, 2)])));
        assert!(SimplicialComplex::new(2, r.simplices().to_vec()).is_ok());
        assert_eq!(common_refinement(&k1, &k1).unwrap(), k1);
    }

    #[test]
    fn refinement_in_one_dimension() {
        let unit = triangulate_cube(1).unwrap();
        let a = subdivide_by_hyperplane(&unit, &IntAffine::from_ints(&[2], -1)).unwrap();
        let b = subdivide_by_hyperplane(&unit, &IntAffine::from_ints(&[3], -1)).unwrap();
        let r = common_refinement(&a, &b).unwrap();
        let verts: Vec<Rational> = r.vertices().iter().map(|v| v.coords()[0].clone()).collect();
        assert_eq!(verts, vec![int(0), rat(1, 3), rat(1, 2), int(1)]);
    }

    #[test]
    fn carrier_mismatch() {
        let unit = triangulate_cube(1).unwrap();
        let half = SimplicialComplex::new(
            1,
            vec![RationalSimplex::new(vec![RatPoint::from_ints(&[0]), RatPoint::from_pairs(&[(1, 2)])]).unwrap()],
        )
        .unwrap();
        assert_eq!(common_refinement(&unit, &half), Err(Error::CarrierMismatch));
    }

    #[test]
    fn slicing_by_hyperplanes() {
        let unit = triangulate_cube(1).unwrap();
        let cut = subdivide_by_hyperplane(&unit, &IntAffine::from_ints(&[2], -1)).unwrap();
        assert_eq!(cut.len(), 2);
        let positive = subdivide_by_hyperplane(&unit, &IntAffine::from_ints(&[1], 1)).unwrap();
        assert_eq!(positive, unit);
        let sq = square_other_diagonal();
        let h = IntAffine::from_ints(&[1, -1], 0);
        let cut = subdivide_by_hyperplane(&sq, &h).unwrap();
        assert_eq!(cut.volume(), int(1));
        for s in cut.simplices() {
            let signs: Vec<Rational> = s.vertices().iter().map(|v| h.eval(v)).collect();
            assert!(signs.iter().all(|v| *v >= int(0)) || signs.iter().all(|v| *v <= int(0)));
        }
    }

    #[test]
    fn census_examples() {
        let unit = triangulate_cube(1).unwrap();
        let pts = |k: &SimplicialComplex, b| rational_points_with_denominator(k, b);
        assert_eq!(pts(&unit, 1), vec![RatPoint::from_ints(&[0]), RatPoint::from_ints(&[1])]);
        assert_eq!(pts(&unit, 4), vec![RatPoint::from_pairs(&[(1, 4)]), RatPoint::from_pairs(&[(3, 4)])]);
        assert_eq!(denominator_census(&unit, 5), 4);
        let sq = triangulate_cube(2).unwrap();
        assert_eq!(denominator_census(&sq, 2), 5);
        assert_eq!(denominator_census(&sq, 0), 0);
    }

    #[test]
    fn json_round_trip() {
        let k = triangulate_cube(2).unwrap();
        let j = k.to_json();
        assert_eq!(j.simplices[0][0], vec!["0/1".to_string(), "0/1".to_string()]);
        assert_eq!(SimplicialComplex::from_json(&j).unwrap(), k);
    }
}
