//! The MV-algebra signature shared by every concrete algebra in the crate.

use std::fmt::Debug;

/// An MV-algebra given by `0`, `¬` and `⊕`; the remaining connectives
/// are derived in the standard way.
pub trait MvAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn oplus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Semantic equality; defaults to structural equality where available.
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn one(&self) -> Self::Elem {
        self.neg(&self.zero())
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`
    fn otimes(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.oplus(&self.neg(x), &self.neg(y)))
    }

    /// `x ⊖ y = x ⊙ ¬y`
    fn ominus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.otimes(x, &self.neg(y))
    }

    /// `x ∨ y = ¬(¬x ⊕ y) ⊕ y`
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.oplus(&self.neg(&self.oplus(&self.neg(x), y)), y)
    }

    /// `x ∧ y = ¬(¬x ∨ ¬y)`
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.join(&self.neg(x), &self.neg(y)))
    }

    /// The natural order: `x ≤ y` iff `¬x ⊕ y = 1`.
    fn le(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.equal(&self.oplus(&self.neg(x), y), &self.one())
    }
}
