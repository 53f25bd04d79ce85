use crate::decoration::Decoration;
use crate::error::Result;
use crate::finset::FinFunction;

use super::{Cospan, TwoMorphism};

/// A globular isomorphism between two cospans with the same feet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CospanIso<M> {
    pub apex: FinFunction,
    pub fiber: M,
}

impl<M: Clone + PartialEq> CospanIso<M> {
    pub fn to_two_morphism<C: Cospan>(&self, src: &C) -> TwoMorphism<M> {
        TwoMorphism {
            left: FinFunction::identity(src.left_foot()),
            right: FinFunction::identity(src.right_foot()),
            apex: self.apex.clone(),
            fiber: self.fiber.clone(),
        }
    }
}

/// Decides whether `m ≅ n` as cospans: an apex bijection commuting with both
/// legs, plus a fiber isomorphism of the relabeled decoration.
///
/// Returns `None` when the feet differ. Leg commutation pins the image of
/// every foot element, so only interior vertices are searched.
pub fn iso_cospan<C: Cospan>(
    m: &C,
    n: &C,
    budget: u64,
) -> Result<Option<CospanIso<<C::Deco as Decoration>::FiberMorphism>>> {
    if m.left_foot() != n.left_foot() || m.right_foot() != n.right_foot() || m.apex() != n.apex() {
        return Ok(None);
    }
    let pins: Vec<(usize, usize)> = m
        .left_leg()
        .table()
        .iter()
        .zip(n.left_leg().table())
        .chain(m.right_leg().table().iter().zip(n.right_leg().table()))
        .map(|(&x, &y)| (x, y))
        .collect();
    let found = m.decoration().find_iso_pinned(n.decoration(), &pins, budget)?;
    Ok(found.map(|(apex, fiber)| CospanIso { apex, fiber }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::DecoratedCospan;
    use crate::finset::DEFAULT_ISO_BUDGET;
    use crate::system::Graph;

    fn fun(table: &[usize], cod: usize) -> FinFunction {
        FinFunction::new(table.to_vec(), cod).unwrap()
    }

    #[test]
    fn permuted_apex_is_isomorphic() {
        let g = Graph::from_arrows(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = DecoratedCospan::new(fun(&[0], 3), fun(&[2], 3), g.clone()).unwrap();
        let perm = fun(&[2, 0, 1], 3);
        let n = DecoratedCospan::new(fun(&[2], 3), fun(&[1], 3), g.reindex(&perm).unwrap()).unwrap();
        let w = iso_cospan(&m, &n, DEFAULT_ISO_BUDGET).unwrap().unwrap();
        assert_eq!(w.apex, perm);
        assert!(w.to_two_morphism(&m).validate(&m, &n).unwrap().is_empty());
    }

    #[test]
    fn different_edge_counts_are_not_isomorphic() {
        let m = DecoratedCospan::new(fun(&[0], 2), fun(&[1], 2), Graph::from_arrows(2, &[(0, 1)]).unwrap()).unwrap();
        let n = DecoratedCospan::new(fun(&[0], 2), fun(&[1], 2), Graph::from_arrows(2, &[(0, 1), (0, 1)]).unwrap()).unwrap();
        assert!(iso_cospan(&m, &n, DEFAULT_ISO_BUDGET).unwrap().is_none());
    }

    #[test]
    fn legs_must_be_respected() {
        let g = Graph::from_arrows(2, &[(0, 1)]).unwrap();
        let m = DecoratedCospan::new(fun(&[0], 2), fun(&[1], 2), g.clone()).unwrap();
        let flipped = DecoratedCospan::new(fun(&[1], 2), fun(&[0], 2), g).unwrap();
        assert!(iso_cospan(&m, &flipped, DEFAULT_ISO_BUDGET).unwrap().is_none());
    }
}
