use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::mcnaughton::McNFunction;

/// `t ↦ slope·t + intercept` over `Q(√D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear {
    pub slope: QuadExt,
    pub intercept: QuadExt,
}

impl Linear {
    pub fn constant(c: QuadExt) -> Self {
        let d = c.base();
        Linear { slope: QuadExt::zero_in(d), intercept: c }
    }

    pub fn eval(&self, t: &QuadExt) -> QuadExt {
        &(&self.slope * t) + &self.intercept
    }

    fn add(&self, o: &Linear) -> Linear {
        Linear { slope: &self.slope + &o.slope, intercept: &self.intercept + &o.intercept }
    }

    fn sub(&self, o: &Linear) -> Linear {
        Linear { slope: &self.slope - &o.slope, intercept: &self.intercept - &o.intercept }
    }

    fn neg(&self) -> Linear {
        Linear { slope: -&self.slope, intercept: -&self.intercept }
    }
}

/// The McNaughton function a segment function was obtained from, and how
/// many times the eigen substitution has been applied to it since.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub function: McNFunction,
    pub sigma_power: u32,
}

/// A continuous piecewise-linear function on `t ∈ [0,1]` with values in
/// `[0,1]` and breakpoints and coefficients in `Q(√D)`. Adjacent pieces are
/// always distinct.
#[derive(Clone, Debug)]
pub struct SegmentFunction {
    d: u64,
    breaks: Vec<QuadExt>,
    pieces: Vec<Linear>,
    provenance: Option<Provenance>,
}

impl PartialEq for SegmentFunction {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.breaks == other.breaks && self.pieces == other.pieces
    }
}

impl Eq for SegmentFunction {}

fn qcmp(a: &QuadExt, b: &QuadExt) -> Ordering {
    a.partial_cmp(b).expect("one quadratic field")
}

impl SegmentFunction {
    /// `breaks` runs from 0 to 1 strictly increasing, with one piece per gap.
    pub fn new(d: u64, breaks: Vec<QuadExt>, pieces: Vec<Linear>) -> Result<Self> {
        if breaks.len() < 2 || pieces.len() + 1 != breaks.len() {
            return Err(Error::Invalid("need one piece between consecutive breakpoints".into()));
        }
        let stray = breaks.iter().chain(pieces.iter().flat_map(|p| [&p.slope, &p.intercept])).find(|q| q.base() != d);
        if let Some(q) = stray {
            return Err(Error::FieldMismatch(d, q.base()));
        }
        if !breaks[0].is_zero() || breaks[breaks.len() - 1] != QuadExt::one_in(d) {
            return Err(Error::Invalid("breakpoints must start at 0 and end at 1".into()));
        }
        if breaks.windows(2).any(|w| qcmp(&w[0], &w[1]) != Ordering::Less) {
            return Err(Error::Invalid("breakpoints must increase strictly".into()));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            if w[0].eval(&breaks[i + 1]) != w[1].eval(&breaks[i + 1]) {
                return Err(Error::Discontinuous(format!("at t = {}", breaks[i + 1])));
            }
        }
        let zero = QuadExt::zero_in(d);
        let one = QuadExt::one_in(d);
        for (i, p) in pieces.iter().enumerate() {
            for t in [&breaks[i], &breaks[i + 1]] {
                let v = p.eval(t);
                if v < zero || v > one {
                    return Err(Error::OutOfRange(format!("value {v} at t = {t}")));
                }
            }
        }
        Ok(Self::canonical(d, breaks, pieces, None))
    }

    fn canonical(d: u64, breaks: Vec<QuadExt>, pieces: Vec<Linear>, provenance: Option<Provenance>) -> Self {
        let mut b = vec![breaks[0].clone()];
        let mut p: Vec<Linear> = Vec::with_capacity(pieces.len());
        for (i, piece) in pieces.into_iter().enumerate() {
            if p.last() == Some(&piece) {
                *b.last_mut().unwrap() = breaks[i + 1].clone();
            } else {
                p.push(piece);
                b.push(breaks[i + 1].clone());
            }
        }
        SegmentFunction { d, breaks: b, pieces: p, provenance }
    }

    pub fn constant(d: u64, c: &Rational) -> Result<Self> {
        Self::new(
            d,
            vec![QuadExt::zero_in(d), QuadExt::one_in(d)],
            vec![Linear::constant(QuadExt::rational(c.clone(), d))],
        )
    }

    pub fn base(&self) -> u64 {
        self.d
    }

    pub fn breakpoints(&self) -> &[QuadExt] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Linear] {
        &self.pieces
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn eval(&self, t: &QuadExt) -> Result<QuadExt> {
        if t.base() != self.d {
            return Err(Error::FieldMismatch(self.d, t.base()));
        }
        if t.is_negative() || *t > QuadExt::one_in(self.d) {
            return Err(Error::OutsideCarrier(format!("t = {t}")));
        }
        let i = self.breaks[1..].iter().position(|b| t <= b).unwrap_or(self.pieces.len() - 1);
        Ok(self.pieces[i].eval(t))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].slope.is_zero() && self.pieces[0].intercept.is_zero()
    }

    /// Pieces of both functions over the merged breakpoints.
    fn refine(&self, other: &Self) -> Result<(Vec<QuadExt>, Vec<(Linear, Linear)>)> {
        if self.d != other.d {
            return Err(Error::FieldMismatch(self.d, other.d));
        }
        let mut breaks: Vec<QuadExt> = self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort_by(qcmp);
        breaks.dedup();
        let (mut i, mut j) = (0, 0);
        let mut pairs = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            while self.breaks[i + 1] < w[1] {
                i += 1;
            }
            while other.breaks[j + 1] < w[1] {
                j += 1;
            }
            pairs.push((self.pieces[i].clone(), other.pieces[j].clone()));
        }
        Ok((breaks, pairs))
    }

    /// Pointwise max or min, splitting gaps where the two pieces cross.
    fn envelope(breaks: &[QuadExt], pairs: &[(Linear, Linear)], take_max: bool) -> (Vec<QuadExt>, Vec<Linear>) {
        let mut out_b = vec![breaks[0].clone()];
        let mut out_p = Vec::new();
        let pick = |diff: &QuadExt, a: &Linear, b: &Linear| {
            let a_wins = if take_max { !diff.is_negative() } else { !diff.is_positive() };
            if a_wins {
                a.clone()
            } else {
                b.clone()
            }
        };
        for (k, (a, b)) in pairs.iter().enumerate() {
            let (t0, t1) = (&breaks[k], &breaks[k + 1]);
            let diff = a.sub(b);
            let (d0, d1) = (diff.eval(t0), diff.eval(t1));
            if d0.sign() * d1.sign() < 0 {
                let root = (-&diff.intercept).checked_div(&diff.slope).expect("crossing lines have distinct slopes");
                out_p.push(pick(&d0, a, b));
                out_b.push(root);
                out_p.push(pick(&d1, a, b));
            } else {
                let probe = if d0.is_zero() { d1 } else { d0 };
                out_p.push(pick(&probe, a, b));
            }
            out_b.push(t1.clone());
        }
        (out_b, out_p)
    }

    fn combine_provenance(
        &self,
        other: &Self,
        op: impl FnOnce(&McNFunction, &McNFunction) -> Result<McNFunction>,
    ) -> Option<Provenance> {
        let (p, q) = (self.provenance.as_ref()?, other.provenance.as_ref()?);
        if p.sigma_power != q.sigma_power {
            return None;
        }
        op(&p.function, &q.function).ok().map(|function| Provenance { function, sigma_power: p.sigma_power })
    }

    fn lattice(&self, other: &Self, take_max: bool) -> Result<Self> {
        let (breaks, pairs) = self.refine(other)?;
        let (b, p) = Self::envelope(&breaks, &pairs, take_max);
        let prov = self.combine_provenance(other, |f, g| if take_max { f.join(g) } else { f.meet(g) });
        Ok(Self::canonical(self.d, b, p, prov))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.lattice(other, true)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.lattice(other, false)
    }

    pub fn mv_neg(&self) -> Self {
        let one = Linear::constant(QuadExt::one_in(self.d));
        let pieces = self.pieces.iter().map(|p| one.add(&p.neg())).collect();
        let prov =
            self.provenance.as_ref().map(|p| Provenance { function: p.function.mv_neg(), sigma_power: p.sigma_power });
        SegmentFunction { d: self.d, breaks: self.breaks.clone(), pieces, provenance: prov }
    }

    /// `min(1, s + u)`.
    pub fn mv_plus(&self, other: &Self) -> Result<Self> {
        let (breaks, pairs) = self.refine(other)?;
        let one = Linear::constant(QuadExt::one_in(self.d));
        let sums: Vec<(Linear, Linear)> = pairs.iter().map(|(a, b)| (a.add(b), one.clone())).collect();
        let (b, p) = Self::envelope(&breaks, &sums, false);
        let prov = self.combine_provenance(other, McNFunction::mv_plus);
        Ok(Self::canonical(self.d, b, p, prov))
    }

    pub fn mv_times(&self, other: &Self) -> Result<Self> {
        Ok(self.mv_neg().mv_plus(&other.mv_neg())?.mv_neg())
    }

    /// `t ↦ s(λt)` for `0 < λ < 1`.
    pub fn substitute_scale(&self, lambda: &QuadExt) -> Result<Self> {
        if lambda.base() != self.d {
            return Err(Error::FieldMismatch(self.d, lambda.base()));
        }
        let one = QuadExt::one_in(self.d);
        if !lambda.is_positive() || *lambda >= one {
            return Err(Error::OutOfRange(format!("scale {lambda} is not in (0,1)")));
        }
        let inv = lambda.inverse().expect("nonzero");
        let mut breaks = vec![QuadExt::zero_in(self.d)];
        let mut pieces = Vec::new();
        for (k, p) in self.pieces.iter().enumerate() {
            pieces.push(Linear { slope: &p.slope * lambda, intercept: p.intercept.clone() });
            let end = &self.breaks[k + 1] * &inv;
            if end >= one {
                breaks.push(one);
                break;
            }
            breaks.push(end);
        }
        let prov = self
            .provenance
            .as_ref()
            .map(|p| Provenance { function: p.function.clone(), sigma_power: p.sigma_power + 1 });
        Ok(Self::canonical(self.d, breaks, pieces, prov))
    }
}

/// The restriction `t ↦ f(t·w)` of a McNaughton function to the segment
/// from the origin to `w`. Breakpoints are the parameters where the ray
/// crosses a cell wall of the domain of `f`.
pub fn restrict_to_ray(f: &McNFunction, w: &[QuadExt]) -> Result<SegmentFunction> {
    let n = f.arity();
    if w.len() != n {
        return Err(Error::Dimension(format!("segment in R^{} but function on R^{n}", w.len())));
    }
    let d = w[0].base();
    if let Some(c) = w.iter().find(|c| c.base() != d) {
        return Err(Error::FieldMismatch(d, c.base()));
    }
    let zero = QuadExt::zero_in(d);
    let one = QuadExt::one_in(d);
    let mut spans: Vec<(QuadExt, QuadExt, usize)> = Vec::new();
    for (idx, cell) in f.domain().simplices().iter().enumerate() {
        if !cell.is_full() {
            return Err(Error::Unsupported("restriction needs a full-dimensional domain".into()));
        }
        let (mut lo, mut hi) = (zero.clone(), one.clone());
        let mut empty = false;
        for h in cell.halfspaces() {
            let off = QuadExt::rational(h.offset.clone(), d);
            let slope = &h.eval_quad(w) - &off;
            match slope.sign() {
                0 => empty |= off.is_negative(),
                s => {
                    let root = (-&off).checked_div(&slope).expect("nonzero slope");
                    if s > 0 && root > lo {
                        lo = root;
                    } else if s < 0 && root < hi {
                        hi = root;
                    }
                }
            }
        }
        if !empty && lo < hi {
            spans.push((lo, hi, idx));
        }
    }
    let mut breaks: Vec<QuadExt> = spans.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
    breaks.sort_by(qcmp);
    breaks.dedup();
    if breaks.first() != Some(&zero) || breaks.last() != Some(&one) {
        return Err(Error::OutsideCarrier("an end of the segment".into()));
    }
    let origin = vec![zero.clone(); n];
    let mut pieces = Vec::with_capacity(breaks.len() - 1);
    for gap in breaks.windows(2) {
        let (_, _, idx) = spans
            .iter()
            .find(|(a, b, _)| *a <= gap[0] && gap[1] <= *b)
            .ok_or_else(|| Error::OutsideCarrier(format!("t = {}", gap[0])))?;
        let piece = &f.pieces()[*idx];
        let intercept = piece.eval_quad(&origin);
        let slope = &piece.eval_quad(w) - &intercept;
        pieces.push(Linear { slope, intercept });
    }
    let prov = Provenance { function: f.clone(), sigma_power: 0 };
    Ok(SegmentFunction::canonical(d, breaks, pieces, Some(prov)))
}

impl fmt::Display for SegmentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[{}, {}]: ({})t + ({})", self.breaks[k], self.breaks[k + 1], p.slope, p.intercept)?;
        }
        Ok(())
    }
}
