use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::BigInt;

/// Diagonal of the Smith normal form of an integer matrix (square or not),
/// each entry nonnegative and dividing the next.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| a[r][c].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                    a.swap(t, r);
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !a[r][c].is_multiple_of(&a[t][t]));
            match bad {
                Some((r, _)) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    while diag.len() < rows.min(cols) {
        diag.push(BigInt::zero());
    }
    diag
}

/// Bareiss fraction-free determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Outcome of checking that a surjective endomorphism of `Z^k` is injective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZnkReport {
    pub k: usize,
    #[serde(serialize_with = "ser_bigs")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "ser_big")]
    pub determinant: BigInt,
    pub surjective: bool,
    pub injective: bool,
    /// surjective ⇒ |det| = 1 ⇒ injective
    pub implication_holds: bool,
}

fn ser_big<S: serde::Serializer>(b: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub const MAX_ZNK_RANK: usize = 8;

pub fn znk_surjective_implies_injective(m: &[Vec<BigInt>]) -> Result<ZnkReport> {
    let k = m.len();
    if k == 0 || m.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension("a nonempty square matrix is required".into()));
    }
    if k > MAX_ZNK_RANK {
        return Err(Error::OutOfRange(format!("rank {k} exceeds {MAX_ZNK_RANK}")));
    }
    let invariant_factors = smith_invariants(m);
    let determinant = determinant(m);
    let surjective = invariant_factors.iter().all(One::is_one);
    let injective = !determinant.is_zero();
    let unimodular = determinant.abs().is_one();
    let implication_holds = (!surjective || unimodular) && (!unimodular || injective);
    Ok(ZnkReport { k, invariant_factors, determinant, surjective, injective, implication_holds })
}
