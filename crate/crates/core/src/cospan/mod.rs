//! Open systems as cospans, and the double-category operations on them.
//!
//! Two representations share the [`Cospan`] interface:
//!
//! * [`DecoratedCospan`]: a cospan of finite sets `a -> m <- b` with a
//!   decoration over the apex `m`;
//! * [`StructuredCospan`]: a cospan of systems `L(a) -> x <- L(b)`.
//!
//! Horizontal composition is by pushout, tensor by coproduct. Laws hold up to
//! isomorphism only; [`iso_cospan`] decides that isomorphism.

mod companion;
mod convert;
mod decorated;
mod iso;
mod structured;
mod two_cell;

use std::fmt::Debug;

use crate::decoration::Decoration;
use crate::error::Result;
use crate::finset::{FinFunction, FinSetOb, Pushout};

pub use companion::{check_companion, check_conjoint, companion, conjoint, Companion, CompanionReport};
pub use convert::{to_decorated, to_structured};
pub use decorated::DecoratedCospan;
pub use iso::{iso_cospan, CospanIso};
pub use structured::StructuredCospan;
pub use two_cell::{compose_h, left_unitor, right_unitor, TwoMorphism};

/// The horizontal 1-cells of a cospan double category.
pub trait Cospan: Clone + Debug + PartialEq + Sized {
    type Deco: Decoration;

    fn left_foot(&self) -> FinSetOb;

    fn right_foot(&self) -> FinSetOb;

    /// Underlying map of finite sets `a -> m`.
    fn left_leg(&self) -> &FinFunction;

    /// Underlying map of finite sets `b -> m`.
    fn right_leg(&self) -> &FinFunction;

    /// The apex viewed as a decoration of its underlying finite set.
    fn decoration(&self) -> &Self::Deco;

    fn apex(&self) -> FinSetOb {
        self.decoration().carrier()
    }

    /// The horizontal identity `a -> a <- a` with the trivial decoration.
    fn identity(a: FinSetOb) -> Self {
        Self::trivial(FinFunction::identity(a), FinFunction::identity(a)).expect("identity legs share a codomain")
    }

    /// `a -> m <- b` with the trivial decoration `I_m`.
    fn trivial(left: FinFunction, right: FinFunction) -> Result<Self>;

    /// `self ⊙ next`, together with the pushout of apex sets it was built from.
    fn compose_with_pushout(&self, next: &Self) -> Result<(Self, Pushout)>;

    /// `self ⊙ next`: first `self`, then `next`.
    fn compose(&self, next: &Self) -> Result<Self> {
        self.compose_with_pushout(next).map(|(c, _)| c)
    }

    fn tensor(&self, other: &Self) -> Result<Self>;

    /// The same cospan read right to left.
    fn reverse(&self) -> Self;
}
