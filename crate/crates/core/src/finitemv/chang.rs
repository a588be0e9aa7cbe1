use std::fmt;

use crate::error::{Error, Result};
use crate::mv::MvAlgebra;

/// An element `(m, k)` of the Chang algebra `C = Γ(Z ×_lex Z, (1,0))`:
/// `(0, k)` is `kε` with `k ≥ 0` and `(1, k)` is `1 − |k|ε` with `k ≤ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChangElement {
    m: u8,
    k: i64,
}

impl ChangElement {
    pub fn new(m: u8, k: i64) -> Result<Self> {
        match m {
            0 if k >= 0 => Ok(ChangElement { m, k }),
            1 if k <= 0 => Ok(ChangElement { m, k }),
            _ => Err(Error::OutOfRange(format!("({m}, {k}) is not in the Chang algebra"))),
        }
    }

    /// `kε`
    pub fn infinitesimal(k: u32) -> Self {
        ChangElement { m: 0, k: i64::from(k) }
    }

    /// `1 − kε`
    pub fn co_infinitesimal(k: u32) -> Self {
        ChangElement { m: 1, k: -i64::from(k) }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

impl fmt::Display for ChangElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.k) {
            (0, 0) => write!(f, "0"),
            (1, 0) => write!(f, "1"),
            (0, k) => write!(f, "{k}ε"),
            (_, k) => write!(f, "1-{}ε", -k),
        }
    }
}

/// The Chang algebra with its lexicographically truncated sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Chang;

impl MvAlgebra for Chang {
    type Elem = ChangElement;

    fn zero(&self) -> ChangElement {
        ChangElement { m: 0, k: 0 }
    }

    fn neg(&self, x: &ChangElement) -> ChangElement {
        ChangElement { m: 1 - x.m, k: -x.k }
    }

    fn oplus(&self, x: &ChangElement, y: &ChangElement) -> ChangElement {
        let sum = (i64::from(x.m) + i64::from(y.m), x.k + y.k);
        if sum >= (1, 0) {
            ChangElement { m: 1, k: 0 }
        } else {
            ChangElement { m: sum.0 as u8, k: sum.1 }
        }
    }

    fn equal(&self, x: &ChangElement, y: &ChangElement) -> bool {
        x == y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = Chang;
        let e = ChangElement::infinitesimal;
        let ce = ChangElement::co_infinitesimal;
        assert_eq!(c.oplus(&e(2), &e(3)), e(5));
        assert_eq!(c.oplus(&e(1), &ce(1)), c.one());
        assert_eq!(c.oplus(&ce(1), &ce(1)), c.one());
        assert_eq!(c.oplus(&e(3), &ce(1)), c.one());
        assert_eq!(c.oplus(&e(1), &ce(3)), ce(2));
        assert_eq!(c.neg(&e(4)), ce(4));
        assert!(ChangElement::new(0, -1).is_err());
        assert!(ChangElement::new(1, 1).is_err());
        assert!(ChangElement::new(2, 0).is_err());
        assert_eq!(ce(2).to_string(), "1-2ε");
        assert_eq!(e(5).to_string(), "5ε");
    }
}
