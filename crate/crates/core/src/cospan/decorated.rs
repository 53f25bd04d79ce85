use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSetOb, Pushout};

use super::Cospan;

/// A cospan of finite sets `a -> m <- b` with a decoration in `F(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoratedCospan<D> {
    left_leg: FinFunction,
    right_leg: FinFunction,
    decoration: D,
}

impl<D: Decoration> DecoratedCospan<D> {
    pub fn new(left_leg: FinFunction, right_leg: FinFunction, decoration: D) -> Result<Self> {
        let apex = decoration.carrier();
        for (name, leg) in [("left", &left_leg), ("right", &right_leg)] {
            if leg.cod() != apex {
                return Err(Error::InvalidCospan(format!(
                    "{name} leg lands in {} but the decoration lives over {apex}",
                    leg.cod()
                )));
            }
        }
        Ok(DecoratedCospan { left_leg, right_leg, decoration })
    }

    pub fn into_parts(self) -> (FinFunction, FinFunction, D) {
        (self.left_leg, self.right_leg, self.decoration)
    }

    /// Replaces the decoration with another over the same apex.
    pub fn map_decoration<E: Decoration>(&self, f: impl FnOnce(&D) -> E) -> Result<DecoratedCospan<E>> {
        DecoratedCospan::new(self.left_leg.clone(), self.right_leg.clone(), f(&self.decoration))
    }
}

impl<D: Decoration> Cospan for DecoratedCospan<D> {
    type Deco = D;

    fn left_foot(&self) -> FinSetOb {
        self.left_leg.dom()
    }

    fn right_foot(&self) -> FinSetOb {
        self.right_leg.dom()
    }

    fn left_leg(&self) -> &FinFunction {
        &self.left_leg
    }

    fn right_leg(&self) -> &FinFunction {
        &self.right_leg
    }

    fn decoration(&self) -> &D {
        &self.decoration
    }

    fn trivial(left: FinFunction, right: FinFunction) -> Result<Self> {
        let apex = left.cod();
        DecoratedCospan::new(left, right, D::trivial(apex))
    }

    /// Glue apexes along the shared foot, then decorate with `F(ψ)(φ(s, t))`
    /// where `ψ: m + n -> m +_b n` is the pushout quotient.
    fn compose_with_pushout(&self, next: &Self) -> Result<(Self, Pushout)> {
        if self.right_foot() != next.left_foot() {
            return Err(Error::Composability {
                right: self.right_foot().size,
                left: next.left_foot().size,
            });
        }
        let p = finset::pushout(&self.right_leg, &next.left_leg)?;
        let decoration = self.decoration.laxator(&next.decoration).reindex(&p.quotient)?;
        let composite = DecoratedCospan {
            left_leg: p.left.after(&self.left_leg)?,
            right_leg: p.right.after(&next.right_leg)?,
            decoration,
        };
        Ok((composite, p))
    }

    fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(DecoratedCospan {
            left_leg: self.left_leg.sum(&other.left_leg),
            right_leg: self.right_leg.sum(&other.right_leg),
            decoration: self.decoration.laxator(&other.decoration),
        })
    }

    fn reverse(&self) -> Self {
        DecoratedCospan {
            left_leg: self.right_leg.clone(),
            right_leg: self.left_leg.clone(),
            decoration: self.decoration.clone(),
        }
    }
}
