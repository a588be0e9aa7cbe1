//! Convex polytopes given by vertex lists: vertex enumeration from
//! half-spaces, slicing of simplices, and pulling triangulations.
//!
//! Triangulations always pull from the lexicographically smallest vertex of
//! each face. Because the choice depends only on the face itself, two
//! polytopes sharing a face triangulate it identically, so triangulating
//! every cell of a polyhedral complex yields a simplicial complex.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::affine::{IntAffine, RatAffine};
use super::linalg;
use crate::exactnum::{RatPoint, Rational};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Vertices of `{x ∈ R^n : h(x) ≥ 0 for all h}`, assuming the set is
/// bounded. Each vertex is the solution of `n` tight, independent
/// constraints.
pub fn enumerate_vertices(n: usize, constraints: &[RatAffine]) -> Vec<RatPoint> {
    let mut found = BTreeSet::new();
    for combo in combinations(constraints.len(), n) {
        let a: Vec<Vec<Rational>> = combo.iter().map(|&i| constraints[i].coeffs.clone()).collect();
        let b: Vec<Rational> = combo.iter().map(|&i| -&constraints[i].offset).collect();
        let Some(x) = linalg::solve(&a, &b) else { continue };
        let p = RatPoint::new(x);
        if constraints.iter().all(|h| !h.eval(&p).is_negative()) {
            found.insert(p);
        }
    }
    found.into_iter().collect()
}

/// Splits the simplex with vertex list `verts` along `h = 0`. Returns the
/// vertex sets of the parts with `h ≥ 0` and `h ≤ 0`, or `None` if `h`
/// has constant sign on the simplex.
pub fn slice_simplex(verts: &[RatPoint], h: &IntAffine) -> Option<(Vec<RatPoint>, Vec<RatPoint>)> {
    let vals: Vec<Rational> = verts.iter().map(|v| h.eval(v)).collect();
    let has_pos = vals.iter().any(Signed::is_positive);
    let has_neg = vals.iter().any(Signed::is_negative);
    if !(has_pos && has_neg) {
        return None;
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (v, val) in verts.iter().zip(&vals) {
        if !val.is_negative() {
            pos.push(v.clone());
        }
        if !val.is_positive() {
            neg.push(v.clone());
        }
    }
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let (a, b) = (&vals[i], &vals[j]);
            if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                let t = a / (a - b);
                let p = RatPoint::new(
                    verts[i].coords().iter().zip(verts[j].coords()).map(|(u, w)| u + &t * (w - u)).collect(),
                );
                pos.push(p.clone());
                neg.push(p);
            }
        }
    }
    Some((pos, neg))
}

/// The points of `pts` that are not convex combinations of the others.
pub fn extreme_points(pts: &[RatPoint]) -> Vec<RatPoint> {
    let mut uniq: Vec<RatPoint> = pts.to_vec();
    uniq.sort();
    uniq.dedup();
    if uniq.len() <= 2 {
        return uniq;
    }
    let refs: Vec<&RatPoint> = uniq.iter().collect();
    let dim = linalg::affine_rank(&refs);
    let keep: Vec<bool> = (0..uniq.len())
        .map(|i| {
            let others: Vec<usize> = (0..uniq.len()).filter(|&j| j != i).collect();
            // Carathéodory: p is redundant iff it lies in a simplex spanned by
            // at most dim+1 of the others.
            for k in 1..=(dim + 1).min(others.len()) {
                for combo in combinations(others.len(), k) {
                    let verts: Vec<&RatPoint> = combo.iter().map(|&c| &uniq[others[c]]).collect();
                    if linalg::affine_rank(&verts) + 1 != verts.len() {
                        continue;
                    }
                    let base = verts[0];
                    let basis: Vec<Vec<Rational>> = verts[1..].iter().map(|v| v.sub(base)).collect();
                    if let Some(c) = linalg::coordinates_in_span(&basis, &uniq[i].sub(base)) {
                        let s: Rational = c.iter().sum();
                        if c.iter().all(|x| !x.is_negative()) && s <= Rational::from_integer(1.into()) {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect();
    uniq.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

/// Index sets of the facets of a full-dimensional polytope in `R^k`,
/// `k ∈ {2, 3}`, whose vertex list is `pts`.
fn facets(pts: &[RatPoint]) -> Vec<Vec<usize>> {
    let k = pts[0].dim();
    let mut out = BTreeSet::new();
    for combo in combinations(pts.len(), k) {
        let base = &pts[combo[0]];
        let diffs: Vec<Vec<Rational>> = combo[1..].iter().map(|&i| pts[i].sub(base)).collect();
        let normal = match k {
            2 => vec![-diffs[0][1].clone(), diffs[0][0].clone()],
            3 => {
                let (u, v) = (&diffs[0], &diffs[1]);
                vec![&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
            }
            _ => unreachable!("facets are only computed in dimensions 2 and 3"),
        };
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let side: Vec<Rational> = pts.iter().map(|p| linalg::dot(&normal, &p.sub(base))).collect();
        let all_pos = side.iter().all(|s| !s.is_negative());
        let all_neg = side.iter().all(|s| !s.is_positive());
        if all_pos || all_neg {
            let tight: Vec<usize> = (0..pts.len()).filter(|&i| side[i].is_zero()).collect();
            out.insert(tight);
        }
    }
    out.into_iter().collect()
}

fn rank_of(pts: &[RatPoint], idx: &[usize]) -> usize {
    let refs: Vec<&RatPoint> = idx.iter().map(|&i| &pts[i]).collect();
    linalg::affine_rank(&refs)
}

fn pull(
    pts: &[RatPoint],
    facets: &[Vec<usize>],
    face: &[usize],
    dim: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == dim + 1 {
        let mut s = prefix.clone();
        s.extend_from_slice(face);
        out.push(s);
        return;
    }
    let apex = *face.iter().min_by(|&&a, &&b| pts[a].cmp(&pts[b])).unwrap();
    let mut subfaces = BTreeSet::new();
    for f in facets {
        let g: Vec<usize> = face.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
        if g.len() >= dim && !g.contains(&apex) && rank_of(pts, &g) + 1 == dim {
            subfaces.insert(g);
        }
    }
    prefix.push(apex);
    for g in subfaces {
        pull(pts, facets, &g, dim - 1, prefix, out);
    }
    prefix.pop();
}

/// Pulling triangulation of a full-dimensional convex polytope in `R^k`
/// given by its vertices (which must all be extreme points).
fn triangulate_full(pts: &[RatPoint]) -> Vec<Vec<usize>> {
    let k = pts[0].dim();
    if pts.len() == k + 1 {
        return vec![(0..pts.len()).collect()];
    }
    if k == 1 {
        let lo = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap();
        let hi = (0..pts.len()).max_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap();
        return vec![vec![lo, hi]];
    }
    let fs = facets(pts);
    let all: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::new();
    pull(pts, &fs, &all, k, &mut Vec::new(), &mut out);
    out
}

/// Triangulates the convex hull of `pts` (a set in convex position, of
/// any affine dimension). Each simplex is returned as a sorted vertex list.
pub fn triangulate_convex(pts: &[RatPoint]) -> Vec<Vec<RatPoint>> {
    let mut pts: Vec<RatPoint> = pts.to_vec();
    pts.sort();
    pts.dedup();
    let refs: Vec<&RatPoint> = pts.iter().collect();
    let r = linalg::affine_rank(&refs);
    let n = pts[0].dim();
    let index_sets = if r == 0 {
        vec![vec![0]]
    } else if r == n {
        triangulate_full(&pts)
    } else {
        // Project onto r coordinates that keep the affine rank.
        let coords = combinations(n, r)
            .into_iter()
            .find(|c| {
                let proj: Vec<RatPoint> = pts.iter().map(|p| project(p, c)).collect();
                let refs: Vec<&RatPoint> = proj.iter().collect();
                linalg::affine_rank(&refs) == r
            })
            .expect("some coordinate projection preserves affine rank");
        let proj: Vec<RatPoint> = pts.iter().map(|p| project(p, &coords)).collect();
        triangulate_full(&proj)
    };
    index_sets
        .into_iter()
        .map(|s| {
            let mut v: Vec<RatPoint> = s.into_iter().map(|i| pts[i].clone()).collect();
            v.sort();
            v
        })
        .collect()
}

fn project(p: &RatPoint, coords: &[usize]) -> RatPoint {
    RatPoint::new(coords.iter().map(|&i| p.coords()[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::plgeom::simplex::RationalSimplex;

    fn p2(x: (i64, i64), y: (i64, i64)) -> RatPoint {
        RatPoint::new(vec![rat(x.0, x.1), rat(y.0, y.1)])
    }

    fn volume(simplices: &[Vec<RatPoint>]) -> Rational {
        simplices.iter().map(|s| RationalSimplex::new(s.clone()).unwrap().volume()).sum()
    }

    #[test]
    fn square_triangulation() {
        let sq = vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((0, 1), (1, 1)), p2((1, 1), (1, 1))];
        let t = triangulate_convex(&sq);
        assert_eq!(t.len(), 2);
        assert_eq!(volume(&t), rat(1, 1));
        // pulled from the origin: the diagonal (0,0)-(1,1) is used
        assert!(t.iter().all(|s| s.contains(&p2((0, 1), (0, 1))) && s.contains(&p2((1, 1), (1, 1)))));
    }

    #[test]
    fn cube_triangulation_volume() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(RatPoint::from_ints(&[x, y, z]));
                }
            }
        }
        let t = triangulate_convex(&cube);
        assert_eq!(volume(&t), rat(1, 1));
    }

    #[test]
    fn slicing_triangle() {
        let tri = vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((1, 1), (1, 1))];
        let h = IntAffine::from_ints(&[2, 0], -1);
        let (pos, neg) = slice_simplex(&tri, &h).unwrap();
        assert_eq!(volume(&triangulate_convex(&pos)) + volume(&triangulate_convex(&neg)), rat(1, 2));
        assert_eq!(volume(&triangulate_convex(&neg)), rat(1, 8));
        assert!(slice_simplex(&tri, &IntAffine::from_ints(&[1, 1], 1)).is_none());
    }

    #[test]
    fn vertex_enumeration_intersection() {
        let a = RationalSimplex::new(vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((1, 1), (1, 1))]).unwrap();
        let b = RationalSimplex::new(vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((0, 1), (1, 1))]).unwrap();
        let mut hs = a.halfspaces();
        hs.extend(b.halfspaces());
        let v = enumerate_vertices(2, &hs);
        assert_eq!(v, vec![p2((0, 1), (0, 1)), p2((1, 2), (1, 2)), p2((1, 1), (0, 1))]);
    }

    #[test]
    fn extreme_points_drop_interior() {
        let pts = vec![p2((0, 1), (0, 1)), p2((1, 2), (0, 1)), p2((1, 1), (0, 1))];
        assert_eq!(extreme_points(&pts), vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1))]);
        let pts = vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((0, 1), (1, 1)), p2((1, 4), (1, 4))];
        assert_eq!(extreme_points(&pts).len(), 3);
    }

    #[test]
    fn lower_dimensional_polygon_in_space() {
        // a square in the plane z = x
        let pts = vec![
            RatPoint::from_ints(&[0, 0, 0]),
            RatPoint::from_ints(&[1, 0, 1]),
            RatPoint::from_ints(&[0, 1, 0]),
            RatPoint::from_ints(&[1, 1, 1]),
        ];
        let t = triangulate_convex(&pts);
        assert_eq!(t.len(), 2);
        for s in t {
            assert_eq!(s.len(), 3);
        }
    }
}
