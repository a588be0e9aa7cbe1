use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::BigInt;

/// A direction in the plane, stored as a primitive integer vector.
pub type Ray = [BigInt; 2];

/// Which part of the plane a fan covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    /// The closed first quadrant, rays from `(1,0)` to `(0,1)`.
    Quadrant,
    /// The whole plane, rays in counterclockwise order from `(1,0)`.
    Plane,
}

/// A continuous piecewise homogeneous linear function on a sector, given
/// by a fan of rational cones with an integer linear form on each cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPL {
    sector: Sector,
    rays: Vec<Ray>,
    /// `pieces[i] = (ax, ay)` on the cone from `rays[i]` to the next ray.
    pieces: Vec<[BigInt; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomogJson {
    pub rays: Vec<[i64; 2]>,
    pub pieces: Vec<PieceForm>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceForm {
    pub ax: i64,
    pub ay: i64,
}

pub fn ray(x: i64, y: i64) -> Ray {
    [BigInt::from(x), BigInt::from(y)]
}

fn primitive(v: [BigInt; 2]) -> Ray {
    let g = v[0].gcd(&v[1]);
    if g.is_zero() {
        return v;
    }
    [&v[0] / &g, &v[1] / &g]
}

fn cross(a: &Ray, b: &Ray) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn half(v: &Ray) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angle order starting at the positive x-axis.
pub fn angle_cmp(a: &Ray, b: &Ray) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| BigInt::zero().cmp(&cross(a, b)))
}

fn in_cone(lo: &Ray, hi: &Ray, d: &Ray) -> bool {
    !cross(lo, d).is_negative() && !cross(d, hi).is_negative()
}

fn form_at(form: &[BigInt; 2], d: &Ray) -> BigInt {
    &form[0] * &d[0] + &form[1] * &d[1]
}

fn axes(sector: Sector) -> Vec<Ray> {
    match sector {
        Sector::Quadrant => vec![ray(1, 0), ray(0, 1)],
        Sector::Plane => vec![ray(1, 0), ray(0, 1), ray(-1, 0), ray(0, -1)],
    }
}

impl HomogPL {
    /// Validates ray order and continuity across every ray.
    pub fn new(sector: Sector, rays: Vec<Ray>, pieces: Vec<[BigInt; 2]>) -> Result<Self> {
        let rays: Vec<Ray> = rays.into_iter().map(primitive).collect();
        if rays.iter().any(|r| r[0].is_zero() && r[1].is_zero()) {
            return Err(Error::Invalid("zero ray".into()));
        }
        if rays.windows(2).any(|w| angle_cmp(&w[0], &w[1]) != Ordering::Less) {
            return Err(Error::Invalid("rays must be strictly increasing in angle".into()));
        }
        for axis in axes(sector) {
            if !rays.contains(&axis) {
                return Err(Error::Invalid(format!("the axis ray ({}, {}) must be listed", axis[0], axis[1])));
            }
        }
        let expected = match sector {
            Sector::Quadrant => {
                if rays.first() != Some(&ray(1, 0)) || rays.last() != Some(&ray(0, 1)) {
                    return Err(Error::Invalid("quadrant rays run from (1,0) to (0,1)".into()));
                }
                rays.len() - 1
            }
            Sector::Plane => rays.len(),
        };
        if pieces.len() != expected {
            return Err(Error::Invalid(format!("{} pieces for {expected} cones", pieces.len())));
        }
        let h = HomogPL { sector, rays, pieces };
        for i in 0..h.pieces.len() {
            let next = (i + 1) % h.pieces.len();
            if next == 0 && sector == Sector::Quadrant {
                break;
            }
            let r = h.cone(next).0;
            if form_at(&h.pieces[i], r) != form_at(&h.pieces[next], r) {
                return Err(Error::Discontinuous(format!("pieces disagree on the ray ({}, {})", r[0], r[1])));
            }
        }
        Ok(h.canonical())
    }

    /// A single linear form on the whole sector.
    pub fn linear(sector: Sector, ax: i64, ay: i64) -> Self {
        let rays = axes(sector);
        let count = if sector == Sector::Quadrant { 1 } else { 4 };
        HomogPL { sector, rays, pieces: vec![[BigInt::from(ax), BigInt::from(ay)]; count] }
    }

    pub fn zero(sector: Sector) -> Self {
        Self::linear(sector, 0, 0)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn pieces(&self) -> &[[BigInt; 2]] {
        &self.pieces
    }

    fn cone(&self, i: usize) -> (&Ray, &Ray) {
        (&self.rays[i], &self.rays[(i + 1) % self.rays.len()])
    }

    fn piece_for(&self, d: &Ray) -> Option<&[BigInt; 2]> {
        (0..self.pieces.len())
            .find(|&i| {
                let (lo, hi) = self.cone(i);
                in_cone(lo, hi, d)
            })
            .map(|i| &self.pieces[i])
    }

    /// Value at an integer direction inside the sector.
    pub fn eval(&self, d: &Ray) -> Result<BigInt> {
        self.piece_for(d)
            .map(|p| form_at(p, d))
            .ok_or_else(|| Error::OutsideCarrier(format!("direction ({}, {})", d[0], d[1])))
    }

    /// Merges adjacent cones carrying the same form, keeping axis rays.
    fn canonical(mut self) -> Self {
        let keep = axes(self.sector);
        let mut i = 1;
        while i < self.rays.len() {
            let prev = i - 1;
            let removable =
                !keep.contains(&self.rays[i]) && i < self.pieces.len() && self.pieces[prev] == self.pieces[i];
            if removable {
                self.rays.remove(i);
                self.pieces.remove(i);
            } else {
                i += 1;
            }
        }
        self
    }

    fn merged_rays(&self, other: &Self) -> Vec<Ray> {
        let mut rays: Vec<Ray> = self.rays.iter().chain(&other.rays).cloned().collect();
        rays.sort_by(angle_cmp);
        rays.dedup();
        rays
    }

    fn cones_of(sector: Sector, rays: &[Ray]) -> Vec<(Ray, Ray)> {
        let k = if sector == Sector::Quadrant { rays.len() - 1 } else { rays.len() };
        (0..k).map(|i| (rays[i].clone(), rays[(i + 1) % rays.len()].clone())).collect()
    }

    fn check_sector(&self, other: &Self) -> Result<()> {
        if self.sector != other.sector {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    fn combine(&self, other: &Self, op: impl Fn(&[BigInt; 2], &[BigInt; 2]) -> [BigInt; 2]) -> Result<Self> {
        self.check_sector(other)?;
        let rays = self.merged_rays(other);
        let pieces = Self::cones_of(self.sector, &rays)
            .iter()
            .map(|(lo, hi)| {
                let mid = [&lo[0] + &hi[0], &lo[1] + &hi[1]];
                op(self.piece_for(&mid).unwrap(), other.piece_for(&mid).unwrap())
            })
            .collect();
        Ok(HomogPL { sector: self.sector, rays, pieces }.canonical())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| [&a[0] + &b[0], &a[1] + &b[1]])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| [&a[0] - &b[0], &a[1] - &b[1]])
    }

    pub fn neg(&self) -> Self {
        HomogPL {
            sector: self.sector,
            rays: self.rays.clone(),
            pieces: self.pieces.iter().map(|p| [-&p[0], -&p[1]]).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HomogPL {
            sector: self.sector,
            rays: self.rays.clone(),
            pieces: self.pieces.iter().map(|p| [&p[0] * k, &p[1] * k]).collect(),
        }
        .canonical()
    }

    fn select(&self, other: &Self, take_max: bool) -> Result<Self> {
        self.check_sector(other)?;
        let diff = self.sub(other)?;
        // add the rays where the difference changes sign inside a cone
        let mut rays = self.merged_rays(other);
        for (lo, hi) in Self::cones_of(diff.sector, &diff.rays) {
            let mid = [&lo[0] + &hi[0], &lo[1] + &hi[1]];
            let p = diff.piece_for(&mid).unwrap();
            let (a, b) = (form_at(p, &lo), form_at(p, &hi));
            if a.is_positive() && b.is_negative() || a.is_negative() && b.is_positive() {
                let z = primitive([-&p[1], p[0].clone()]);
                let z = if in_cone(&lo, &hi, &z) { z } else { [-&z[0], -&z[1]] };
                rays.push(z);
            }
        }
        rays.sort_by(angle_cmp);
        rays.dedup();
        let pieces = Self::cones_of(self.sector, &rays)
            .iter()
            .map(|(lo, hi)| {
                let mid = [&lo[0] + &hi[0], &lo[1] + &hi[1]];
                let (a, b) = (self.piece_for(&mid).unwrap(), other.piece_for(&mid).unwrap());
                let a_wins = (form_at(a, &mid) >= form_at(b, &mid)) == take_max;
                if a_wins {
                    a.clone()
                } else {
                    b.clone()
                }
            })
            .collect();
        Ok(HomogPL { sector: self.sector, rays, pieces }.canonical())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.select(other, true)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.select(other, false)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p[0].is_zero() && p[1].is_zero())
    }

    /// Nonnegativity, checked on the rays (values are linear per cone).
    pub fn is_nonnegative(&self) -> bool {
        self.rays.iter().all(|r| !self.eval(r).unwrap().is_negative())
    }

    /// `self ∘ M` for an integer matrix `M` mapping the first quadrant into
    /// itself with nonzero determinant (quadrant fans only).
    pub fn compose_linear(&self, m: [[i64; 2]; 2]) -> Result<Self> {
        if self.sector != Sector::Quadrant {
            return Err(Error::Unsupported("linear pullback is implemented for quadrant fans".into()));
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 0 || m.iter().flatten().any(|&v| v < 0) {
            return Err(Error::Invalid("the map must be invertible and send the quadrant into itself".into()));
        }
        let apply = |d: &Ray| -> Ray { [&d[0] * m[0][0] + &d[1] * m[0][1], &d[0] * m[1][0] + &d[1] * m[1][1]] };
        // preimage of a direction under M (up to a positive factor)
        let pre = |r: &Ray| -> Ray {
            let v = [&r[0] * m[1][1] - &r[1] * m[0][1], -&r[0] * m[1][0] + &r[1] * m[0][0]];
            let v = if det < 0 { [-&v[0], -&v[1]] } else { v };
            primitive(v)
        };
        let (img_lo, img_hi) = {
            let a = primitive(apply(&ray(1, 0)));
            let b = primitive(apply(&ray(0, 1)));
            if angle_cmp(&a, &b) == Ordering::Less {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut rays = axes(Sector::Quadrant);
        for r in &self.rays {
            if in_cone(&img_lo, &img_hi, r) {
                rays.push(pre(r));
            }
        }
        rays.sort_by(angle_cmp);
        rays.dedup();
        let pieces = Self::cones_of(Sector::Quadrant, &rays)
            .iter()
            .map(|(lo, hi)| {
                let mid = apply(&[&lo[0] + &hi[0], &lo[1] + &hi[1]]);
                let p = self.piece_for(&mid).unwrap();
                [&p[0] * m[0][0] + &p[1] * m[1][0], &p[0] * m[0][1] + &p[1] * m[1][1]]
            })
            .collect();
        Ok(HomogPL { sector: Sector::Quadrant, rays, pieces }.canonical())
    }

    pub fn to_json(&self) -> Result<HomogJson> {
        let small = |b: &BigInt| b.to_i64().ok_or_else(|| Error::Unsupported(format!("{b} exceeds 64 bits")));
        Ok(HomogJson {
            rays: self.rays.iter().map(|r| Ok([small(&r[0])?, small(&r[1])?])).collect::<Result<_>>()?,
            pieces: self
                .pieces
                .iter()
                .map(|p| Ok(PieceForm { ax: small(&p[0])?, ay: small(&p[1])? }))
                .collect::<Result<_>>()?,
        })
    }

    pub fn from_json(sector: Sector, json: &HomogJson) -> Result<Self> {
        Self::new(
            sector,
            json.rays.iter().map(|r| ray(r[0], r[1])).collect(),
            json.pieces.iter().map(|p| [BigInt::from(p.ax), BigInt::from(p.ay)]).collect(),
        )
    }
}

impl fmt::Display for HomogPL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = |p: &[BigInt; 2]| {
            crate::plgeom::IntAffine::new(vec![p[0].clone(), p[1].clone()], BigInt::zero())
                .to_string()
                .replace("x1", "x")
                .replace("x2", "y")
        };
        if self.pieces.len() == 1 {
            return write!(f, "{}", form(&self.pieces[0]));
        }
        let parts: Vec<String> = (0..self.pieces.len())
            .map(|i| {
                let (lo, hi) = self.cone(i);
                format!("[({},{})..({},{})]: {}", lo[0], lo[1], hi[0], hi[1], form(&self.pieces[i]))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}
