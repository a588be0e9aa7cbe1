use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{BigInt, Rational};

pub const MAX_DEPTH: usize = 24;

/// A vertex of the diagram: its Farey fraction `p/q` and its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramVertex {
    pub p: u32,
    pub q: u32,
    pub label: u32,
}

/// The Farey–Stern–Brocot Bratteli diagram through a given depth. Row 0 is
/// `0/1, 1/1`; row `d` interleaves row `d-1` with the mediants of adjacent
/// fractions. Each inherited vertex has one edge to its copy one row up,
/// each mediant has edges to its two flanking parents, and a label is the
/// sum of the labels of its parents.
///
/// Row `d-1` sits at the even positions of row `d`, so only the deepest
/// row is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    depth: usize,
    last: Vec<DiagramVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub rows: Vec<Vec<DiagramVertex>>,
    pub edges: Vec<[usize; 2]>,
}

impl BratteliDiagram {
    pub fn build(depth: usize) -> Result<Self> {
        Self::build_with_cap(depth, MAX_DEPTH)
    }

    pub fn build_with_cap(depth: usize, cap: usize) -> Result<Self> {
        if depth > cap {
            return Err(Error::TooLarge { size: depth as u64, bound: cap as u64 });
        }
        let mut row = vec![DiagramVertex { p: 0, q: 1, label: 1 }, DiagramVertex { p: 1, q: 1, label: 1 }];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(2 * row.len() - 1);
            for w in row.windows(2) {
                next.push(w[0]);
                next.push(DiagramVertex { p: w[0].p + w[1].p, q: w[0].q + w[1].q, label: w[0].label + w[1].label });
            }
            next.push(row[row.len() - 1]);
            row = next;
        }
        Ok(BratteliDiagram { depth, last: row })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn row_len(&self, d: usize) -> usize {
        (1usize << d) + 1
    }

    pub fn row(&self, d: usize) -> Vec<DiagramVertex> {
        assert!(d <= self.depth, "row {d} beyond depth {}", self.depth);
        self.last.iter().step_by(1 << (self.depth - d)).copied().collect()
    }

    pub fn labels(&self, d: usize) -> Vec<u32> {
        self.row(d).iter().map(|v| v.label).collect()
    }

    /// Parents in row `d-1` of vertex `i` of row `d`.
    pub fn parents(&self, d: usize, i: usize) -> Vec<usize> {
        if d == 0 {
            vec![]
        } else if i.is_multiple_of(2) {
            vec![i / 2]
        } else {
            vec![i / 2, i / 2 + 1]
        }
    }

    /// Global vertex id: rows are numbered consecutively from the top.
    pub fn vertex_id(&self, d: usize, i: usize) -> usize {
        let before: usize = (0..d).map(|k| self.row_len(k)).sum();
        before + i
    }

    /// Edges `[parent, child]` as global vertex ids, ordered by child.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for d in 1..=self.depth {
            for i in 0..self.row_len(d) {
                for p in self.parents(d, i) {
                    out.push([self.vertex_id(d - 1, p), self.vertex_id(d, i)]);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson { rows: (0..=self.depth).map(|d| self.row(d)).collect(), edges: self.edges() }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fsb {\n  rankdir=TB;\n  node [shape=plaintext];\n");
        for d in 0..=self.depth {
            let ids: Vec<String> = (0..self.row_len(d)).map(|i| format!("v{}", self.vertex_id(d, i))).collect();
            for (i, v) in self.row(d).iter().enumerate() {
                let _ = writeln!(s, "  v{} [label=\"{}/{} ({})\"];", self.vertex_id(d, i), v.p, v.q, v.label);
            }
            let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        for [a, b] in self.edges() {
            let _ = writeln!(s, "  v{a} -> v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Where a fraction first appears in the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyVertex {
    pub depth: u64,
    pub index: BigInt,
    pub fraction: Rational,
    pub label: BigInt,
}

/// Locates `ρ ∈ [0,1]` by Stern–Brocot descent, tracking the row positions
/// of the two flanking fractions.
pub fn vertex_for_fraction(rho: &Rational) -> Result<FareyVertex> {
    if rho.is_negative() || *rho > Rational::one() {
        return Err(Error::OutOfRange(format!("{rho} is outside [0,1]")));
    }
    let label = rho.denom().clone();
    if rho.is_zero() || rho.is_one() {
        let index = if rho.is_zero() { BigInt::zero() } else { BigInt::one() };
        return Ok(FareyVertex { depth: 0, index, fraction: rho.clone(), label });
    }
    let (mut lo, mut hi) = ((BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::one()));
    let (mut lo_i, mut hi_i) = (BigInt::zero(), BigInt::one());
    let mut depth = 0u64;
    loop {
        depth += 1;
        let m = (&lo.0 + &hi.0, &lo.1 + &hi.1);
        let m_i = &lo_i * 2 + 1;
        lo_i *= 2;
        hi_i *= 2;
        let mr = Rational::new(m.0.clone(), m.1.clone());
        match rho.cmp(&mr) {
            std::cmp::Ordering::Equal => {
                return Ok(FareyVertex { depth, index: m_i, fraction: rho.clone(), label });
            }
            std::cmp::Ordering::Less => {
                hi = m;
                hi_i = m_i;
            }
            std::cmp::Ordering::Greater => {
                lo = m;
                lo_i = m_i;
            }
        }
    }
}

/// Row positions at depth `d` of the vertices lying in the kernel ideal of
/// evaluation at `ρ`: those whose Schauder hat vanishes at `ρ`, i.e. `ρ` is
/// neither the vertex's own fraction nor strictly between its neighbours.
/// The set is closed under passing to children and contains any vertex all
/// of whose children it contains.
pub fn ideal_of_diagram_at(diagram: &BratteliDiagram, rho: &Rational, depth: usize) -> Result<Vec<usize>> {
    let v = vertex_for_fraction(rho)?;
    if (depth as u64) < v.depth {
        return Err(Error::Invalid(format!("{rho} first appears at depth {}, after depth {depth}", v.depth)));
    }
    if depth > diagram.depth() {
        return Err(Error::OutOfRange(format!("depth {depth} beyond the diagram's {}", diagram.depth())));
    }
    let row = diagram.row(depth);
    let frac = |v: &DiagramVertex| Rational::new(v.p.into(), v.q.into());
    let mut out = Vec::new();
    for (i, vert) in row.iter().enumerate() {
        let here = frac(vert);
        let above_left = i == 0 || frac(&row[i - 1]) < *rho;
        let below_right = i + 1 == row.len() || *rho < frac(&row[i + 1]);
        let in_support = here == *rho || (above_left && below_right);
        if !in_support {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn first_rows() {
        let d = BratteliDiagram::build(3).unwrap();
        assert_eq!(d.labels(0), vec![1, 1]);
        assert_eq!(d.labels(1), vec![1, 2, 1]);
        assert_eq!(d.labels(2), vec![1, 3, 2, 3, 1]);
        assert_eq!(d.labels(3), vec![1, 4, 3, 5, 2, 5, 3, 4, 1]);
        assert_eq!(d.edges().len(), 4 + 7 + 13);
        assert!(BratteliDiagram::build(25).is_err());
        let dot = d.to_dot();
        assert!(dot.contains("[label=\"1/2 (2)\"]"));
    }

    #[test]
    fn fraction_positions() {
        let v = vertex_for_fraction(&rat(1, 2)).unwrap();
        assert_eq!((v.depth, v.index.clone(), v.label.clone()), (1, BigInt::from(1), BigInt::from(2)));
        let v = vertex_for_fraction(&rat(0, 1)).unwrap();
        assert_eq!((v.depth, v.index.clone()), (0, BigInt::zero()));
        let v = vertex_for_fraction(&rat(2, 5)).unwrap();
        assert_eq!((v.depth, v.label.clone()), (3, BigInt::from(5)));
        let d = BratteliDiagram::build(3).unwrap();
        let row = d.row(3);
        let i: usize = v.index.try_into().unwrap();
        assert_eq!((row[i].p, row[i].q), (2, 5));
    }

    #[test]
    fn ideals() {
        let d = BratteliDiagram::build(4).unwrap();
        assert_eq!(ideal_of_diagram_at(&d, &rat(1, 2), 2).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(ideal_of_diagram_at(&d, &rat(0, 1), 1).unwrap(), vec![1, 2]);
        assert!(ideal_of_diagram_at(&d, &rat(2, 5), 2).is_err());
        // directed: children of ideal vertices stay in the ideal
        let here = ideal_of_diagram_at(&d, &rat(2, 5), 3).unwrap();
        let next = ideal_of_diagram_at(&d, &rat(2, 5), 4).unwrap();
        for i in 0..d.row_len(4) {
            if d.parents(4, i).iter().any(|p| here.contains(p)) {
                assert!(next.contains(&i));
            }
        }
    }
}
